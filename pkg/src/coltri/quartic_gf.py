"""Quartic model at d=4: dominant maps, the series f_k(t, lam), its singularities.

Maps here have edges standing for quartic bubbles.  A monocolored edge has a
one-color set; a bicolored edge of type ``c`` has the set ``{1, c}`` with
``c`` in ``2..k+1``.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Sequence

import mpmath

from .colored_graph import BLACK, WHITE, ColoredGraph, GraphError
from .series import PowerSeries
from .stuffed_maps import CombinatorialMap, alpha

DEFAULT_MAP_CAP = 5
DEFAULT_DIGITS = 50
MONO_COLOR = 1
REGIME_EXPONENTS = {"planar": Fraction(3, 2), "tree": Fraction(1, 2), "baby-universe": Fraction(2, 3)}
EXPONENT_TOLERANCE = 0.05


def precision_digits(digits: int | None = None) -> int:
    if digits is None:
        digits = int(os.environ.get("TENSOR_PRECISION_DIGITS", DEFAULT_DIGITS))
    if digits < 30:
        raise ValueError("critical solving needs at least 30 digits")
    return digits


# -- series ----------------------------------------------------------------


def u_series(order: int) -> PowerSeries:
    """``u(x)`` with ``x = u (1-u)^2`` and ``u(0) = 0``."""
    x = PowerSeries.variable(max(order, 1))
    return (x * (1 - x) ** 2).reversion().truncate(order)


def nonseparable_series(order: int) -> PowerSeries:
    """Rooted non-separable planar maps by edges: ``P = (1-u)(1+3u)``."""
    u = u_series(order)
    return (1 - u) * (1 + 3 * u)


def quartic_series(k, lam, order: int) -> PowerSeries:
    """``f_k(t, lam)`` solving ``f = 1 - k + t lam f^2 + k P(t f^2)``.

    Fixed-point iteration; pass ``i`` fixes the coefficient of ``t^i`` so
    the working order grows with the pass.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    k, lam = Fraction(k), Fraction(lam)
    P = nonseparable_series(order)
    f = PowerSeries.constant(1, 0, "t")
    for i in range(1, order + 1):
        f = PowerSeries(f.coeffs, i, "t")
        x = (f * f).shift(1)
        f = (1 - k) + lam * x + k * P.truncate(i).compose(x)
    return PowerSeries(f.coeffs, order, "t")


def planar_maps_closed_form(n: int) -> int:
    """Rooted planar maps with ``n`` edges: ``2 3^n C(2n, n) / ((n+1)(n+2))``."""
    return 2 * 3**n * comb(2 * n, n) // ((n + 1) * (n + 2))


def quartic_polynomial(t, f, k, lam):
    """Left-hand side of the degree-6 polynomial equation satisfied by f_k.

    Works on numbers or power series.
    """
    k, lam = Fraction(k), Fraction(lam)
    inner = (
        2 * k**3 + k**2 * (lam - 18) + 3 * lam - 4 * lam * k
        + (18 * k**2 - 6 * lam + 4 * lam * k) * f
        + (3 * lam * (1 + t * lam) - 27 * k**3 * t - 18 * k**2 * t * lam - 2 * k * t * lam**2) * f * f
        - 3 * lam**2 * t * f * f * f
        + lam**3 * t * t * f * f * f * f
    )
    return t * f * f * inner - (f - 1) * (f + (k - 1)) * (f + (k - 1))


def series_residual(k, lam, order: int) -> PowerSeries:
    f = quartic_series(k, lam, order)
    t = PowerSeries.variable(order, "t")
    return quartic_polynomial(t, f, k, lam)


def _interpolate(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Monomial coefficients of the polynomial through ``(xs, ys)``."""
    n = len(xs)
    dd = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j])
    coeffs = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        # coeffs <- coeffs * (x - xs[i]) + dd[i]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[i] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += dd[i]
    return coeffs


def quartic_bivariate(k, order: int) -> dict[tuple[int, int], Fraction]:
    """Coefficients of ``t^E lam^m`` in ``f_k``, for ``E <= order``.

    The coefficient of ``t^E`` is a polynomial of degree at most ``E`` in
    ``lam``; it is recovered by interpolation over ``lam = 0..order``.
    """
    lams = [Fraction(j) for j in range(order + 1)]
    values = [quartic_series(k, lam, order) for lam in lams]
    out = {}
    for E in range(order + 1):
        poly = _interpolate(lams, [v[E] for v in values])
        for m, c in enumerate(poly):
            if c:
                if m > E:
                    raise AssertionError(f"lam^{m} appears at t^{E}")
                out[(E, m)] = c
    return out


# -- dominant maps ---------------------------------------------------------


def _bridges(m: CombinatorialMap) -> set[int]:
    """Edges whose removal disconnects their component."""
    base = len(m.components())
    out = set()
    for e in range(m.n_edges):
        if m.dart_vertex[2 * e] == m.dart_vertex[2 * e + 1]:
            continue
        rest = m.submap(x for x in range(m.n_edges) if x != e)
        if len(rest.components()) > base:
            out.add(e)
    return out


def _blocks(m: CombinatorialMap) -> list[list[int]]:
    """Edge sets of the blocks (maximal 2-connected pieces) of the underlying graph.

    Loops form blocks of their own.
    """
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(m.n_vertices)}
    blocks = []
    for e in range(m.n_edges):
        u, v = m.dart_vertex[2 * e], m.dart_vertex[2 * e + 1]
        if u == v:
            blocks.append([e])
        else:
            adj[u].append((v, e))
            adj[v].append((u, e))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    stack: list[int] = []
    counter = itertools.count()

    def dfs(v, parent_edge):
        disc[v] = low[v] = next(counter)
        for u, e in adj[v]:
            if e == parent_edge:
                continue
            if u not in disc:
                stack.append(e)
                dfs(u, e)
                low[v] = min(low[v], low[u])
                if low[u] >= disc[v]:
                    block = []
                    while True:
                        x = stack.pop()
                        block.append(x)
                        if x == e:
                            break
                    blocks.append(block)
            elif disc[u] < disc[v]:
                stack.append(e)
                low[v] = min(low[v], disc[u])

    for v in range(m.n_vertices):
        if v not in disc:
            dfs(v, None)
    return blocks


def _check_quartic_colors(m: CombinatorialMap) -> None:
    for e, cs in enumerate(m.colors):
        ok = len(cs) == 1 and next(iter(cs)) in range(1, 5)
        ok = ok or (len(cs) == 2 and 1 in cs and max(cs) in (2, 3, 4))
        if not ok:
            raise GraphError(f"edge {e} has color set {sorted(cs)}; expected {{c}} or {{1, c}}")


def _is_mono(cs: frozenset) -> bool:
    return len(cs) == 1


def _submap_stats(m: CombinatorialMap) -> tuple[list[int], list[int]]:
    ls, gs = [], []
    for c in range(1, 5):
        sub = m.color_submap(c)
        ls.append(sub.cyclomatic_number())
        gs.append(sub.genus())
    return ls, gs


@dataclass
class DominantMapCheck:
    mono_are_bridges: bool
    submaps_planar: bool
    cycles_single_type: bool
    cyclomatic: int
    submap_cyclomatic: tuple[int, ...]
    submap_genus: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return self.mono_are_bridges and self.submaps_planar and self.cycles_single_type

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "mono_are_bridges": self.mono_are_bridges,
            "submaps_planar": self.submaps_planar,
            "cycles_single_type": self.cycles_single_type,
            "l": self.cyclomatic,
            "l_sub": list(self.submap_cyclomatic),
            "g_sub": list(self.submap_genus),
        }


def is_dominant(m: CombinatorialMap) -> DominantMapCheck:
    """Check the conditions for a quartic map to maximize the face count."""
    _check_quartic_colors(m)
    bridges = _bridges(m)
    mono_ok = all(e in bridges for e in range(m.n_edges) if _is_mono(m.colors[e]))
    ls, gs = _submap_stats(m)
    typed_ok = True
    for block in _blocks(m):
        if len(block) == 1 and block[0] in bridges:
            continue
        types = {m.colors[e] for e in block}
        if len(types) > 1:
            typed_ok = False
    return DominantMapCheck(mono_ok, all(g == 0 for g in gs), typed_ok, m.cyclomatic_number(), tuple(ls), tuple(gs))


def contract_edge(m: CombinatorialMap, e: int) -> CombinatorialMap:
    """Contract a non-loop edge, splicing the rotations of its endpoints."""
    h0, h1 = 2 * e, 2 * e + 1
    u, v = m.dart_vertex[h0], m.dart_vertex[h1]
    if u == v:
        raise GraphError("cannot contract a loop")
    rot_u, rot_v = m.rotation(u), m.rotation(v)
    iu, iv = rot_u.index(h0), rot_v.index(h1)
    merged = rot_u[iu + 1 :] + rot_u[:iu] + rot_v[iv + 1 :] + rot_v[:iv]
    keep_vertices = [x for x in range(m.n_vertices) if x != v]
    vnew = {x: i for i, x in enumerate(keep_vertices)}
    renum = {}
    for x in range(m.n_edges):
        if x != e:
            renum[2 * x] = 2 * len(renum) // 2
            renum[2 * x + 1] = renum[2 * x] + 1
    rotations = []
    for x in keep_vertices:
        rot = merged if x == u else m.rotation(x)
        rotations.append([renum[h] for h in rot])
    colors = [m.colors[x] for x in range(m.n_edges) if x != e]
    root = renum.get(m.root) if m.root is not None else None
    return CombinatorialMap.from_rotations(rotations, [m.kinds[x] for x in keep_vertices], colors, root)


def face_difference(m: CombinatorialMap) -> int:
    """``-4 l(M) + 2 sum_i l(M^(i)) - 2 sum_i g(M^(i))``.

    Monocolored edges must be bridges; they are contracted first.  Asserts
    that the submaps of colors 2, 3, 4 use at most ``l(M)`` independent
    cycles and that the result is nonpositive.
    """
    _check_quartic_colors(m)
    if not m.is_connected():
        raise GraphError("face difference needs a connected map")
    while True:
        mono = [e for e in range(m.n_edges) if _is_mono(m.colors[e])]
        if not mono:
            break
        if mono[0] not in _bridges(m):
            raise GraphError(f"monocolored edge {mono[0]} is not a bridge")
        m = contract_edge(m, mono[0])
    ls, gs = _submap_stats(m)
    l_total = m.cyclomatic_number()
    if sum(ls[1:]) > l_total:
        raise AssertionError("colored submaps use more cycles than the map has")
    value = -4 * l_total + 2 * sum(ls) - 2 * sum(gs)
    if value > 0:
        raise AssertionError(f"face difference {value} is positive")
    return value


def map_face_count(m: CombinatorialMap) -> int:
    """Faces of the colored graph of a quartic map: ``sum_c F(M^(c))``."""
    return sum(m.color_submap(c).n_faces for c in range(1, 5))


def tree_face_total(m: CombinatorialMap) -> int:
    """Faces of a tree with the same edges: 3 per monocolored, 2 per bicolored, plus 4."""
    mono = sum(1 for cs in m.colors if _is_mono(cs))
    return 3 * mono + 2 * (m.n_edges - mono) + 4


def quartic_map_to_graph(m: CombinatorialMap, d: int = 4) -> ColoredGraph:
    """The closed colored graph of a quartic map.

    Edge ``e`` becomes a four-vertex bubble with pair ``2e`` (white ``4e``,
    black ``4e+1``) at dart ``2e`` and pair ``2e+1`` at dart ``2e+1``.  The
    edge's colors cross between the pairs, the others stay inside a pair.
    Color-0 edges follow the vertex rotations.
    """
    if m.n_edges == 0:
        raise GraphError("the single-vertex map has no colored graph")
    edges = []
    for e, cs in enumerate(m.colors):
        wa, ba, wb, bb = 4 * e, 4 * e + 1, 4 * e + 2, 4 * e + 3
        for c in range(1, d + 1):
            if c in cs:
                edges += [(c, wa, bb), (c, wb, ba)]
            else:
                edges += [(c, wa, ba), (c, wb, bb)]
    for v in range(m.n_vertices):
        rot = m.rotation(v)
        for i, h in enumerate(rot):
            nxt = rot[(i + 1) % len(rot)]
            edges.append((0, 2 * nxt, 2 * h + 1))
    return ColoredGraph.from_edges(d, [WHITE, BLACK] * (2 * m.n_edges), edges, has_color_zero=True)


# -- rooted-map oracle ------------------------------------------------------


def _rooted_code(sigma: Sequence[int]) -> tuple | None:
    """Canonical code of a rooted map (root dart 0); None if disconnected."""
    n = len(sigma)
    label = {0: 0}
    order = [0]
    i = 0
    while i < len(order):
        x = order[i]
        for y in (sigma[x], alpha(x)):
            if y not in label:
                label[y] = len(order)
                order.append(y)
        i += 1
    if len(order) != n:
        return None
    return tuple(label[sigma[x]] for x in order) + tuple(label[alpha(x)] for x in order)


def rooted_maps(n_edges: int) -> list[CombinatorialMap]:
    """One representative per rooted map with ``n_edges`` edges (any genus)."""
    if n_edges == 0:
        return [CombinatorialMap((), (), ("plain",))]
    n = 2 * n_edges
    seen = {}
    for perm in itertools.permutations(range(n)):
        code = _rooted_code(perm)
        if code is not None and code not in seen:
            seen[code] = perm
    out = []
    for perm in seen.values():
        vertex = [None] * n
        v = 0
        for h in range(n):
            if vertex[h] is None:
                x = h
                while vertex[x] is None:
                    vertex[x] = v
                    x = perm[x]
                v += 1
        out.append(CombinatorialMap(tuple(perm), tuple(vertex), ("plain",) * v, root=0))
    return out


def colorings(m: CombinatorialMap, k: int):
    """Every quartic coloring: monocolored, or type ``{1, c}`` with ``c = 2..k+1``."""
    choices = [frozenset({MONO_COLOR})] + [frozenset({1, c}) for c in range(2, k + 2)]
    for combo in itertools.product(choices, repeat=m.n_edges):
        yield CombinatorialMap(m.sigma, m.dart_vertex, m.kinds, combo, m.root)


def enumerate_dominant_rooted_maps(k: int, e_max: int, cap: int = DEFAULT_MAP_CAP) -> dict[tuple[int, int], int]:
    """Counts of dominant rooted maps by (edges, monocolored edges)."""
    if e_max > cap:
        raise GraphError(f"E_max={e_max} exceeds the oracle cap {cap}")
    if k not in (1, 2, 3):
        raise GraphError("the map oracle needs k in {1, 2, 3}")
    counts: dict[tuple[int, int], int] = {}
    for E in range(e_max + 1):
        for m in rooted_maps(E):
            for cm in colorings(m, k):
                if is_dominant(cm).ok:
                    key = (E, sum(1 for cs in cm.colors if _is_mono(cs)))
                    counts[key] = counts.get(key, 0) + 1
    return counts


# -- critical points --------------------------------------------------------


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_add(*ps):
    n = max(len(p) for p in ps)
    out = [Fraction(0)] * n
    for p in ps:
        for i, x in enumerate(p):
            out[i] += x
    return out


def _f_poly(k: Fraction, lam: Fraction) -> list[Fraction]:
    """``f(u) = k(1-u)(1+3u) - k + 1 + lam u (1-u)^2`` (coefficients in u)."""
    one_minus = [Fraction(1), Fraction(-1)]
    a = [x * k for x in _poly_mul(one_minus, [Fraction(1), Fraction(3)])]
    b = [x * lam for x in _poly_mul([Fraction(0), Fraction(1)], _poly_mul(one_minus, one_minus))]
    return _poly_add(a, [1 - k], b)


def branch_polynomial(k, lam) -> list[Fraction]:
    """``f(u) - 2u(1-u)(2k + lam(1-u))``: its roots are the second critical branch."""
    k, lam = Fraction(k), Fraction(lam)
    q = _poly_mul(
        [Fraction(0), Fraction(2), Fraction(-2)], [2 * k + lam, -lam]
    )
    return _poly_add(_f_poly(k, lam), [-x for x in q])


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        factor = a[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            a[i + shift] -= factor * c
        a.pop()
    return q, a


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _squarefree(p):
    """``p / gcd(p, p')``: same roots, all simple."""
    p = _trim(p)
    if len(p) <= 2:
        return p
    a, b = p, _trim([i * c for i, c in enumerate(p)][1:])
    while any(b):
        _, r = _poly_divmod(a, b)
        a, b = b, _trim(r) if r else [Fraction(0)]
    q, _ = _poly_divmod(p, a)
    return _trim(q)


def _peval(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def coalescence(k, lam) -> bool:
    """True when both critical branches meet at ``u = 1/3``."""
    return _peval(branch_polynomial(k, lam), Fraction(1, 3)) == 0


@dataclass
class CriticalPoint:
    k: Fraction
    lam: Fraction
    t: mpmath.mpf
    f: mpmath.mpf
    u: mpmath.mpf
    branch: str
    residual: mpmath.mpf
    regime: str = ""

    def to_dict(self, digits: int = 20) -> dict:
        return {
            "k": str(self.k),
            "lambda": str(self.lam),
            "t": float(self.t),
            "f": float(self.f),
            "u": float(self.u),
            "t_exact_digits": mpmath.nstr(self.t, digits),
            "f_exact_digits": mpmath.nstr(self.f, digits),
            "u_exact_digits": mpmath.nstr(self.u, digits),
            "branch": self.branch,
            "residual": float(self.residual),
            "regime": self.regime,
        }


def _system(k, lam, t, f, u):
    return (
        t * f**2 - u * (1 - u) ** 2,
        f - (k * (1 - u) * (1 + 3 * u) - k + 1 + lam * u * (1 - u) ** 2),
        (1 - 3 * u) * (1 - u - (2 * k + lam * (1 - u)) * 2 * t * f),
    )


def critical_points(k, lam, digits: int | None = None) -> list[CriticalPoint]:
    """Solutions with ``t, f > 0`` and ``0 < u < 1``, sorted by ``u``.

    The first one is where the power series solution (``u`` growing from 0)
    meets its singularity; it carries the regime label.
    """
    k, lam = Fraction(k), Fraction(lam)
    if k <= 0 or lam < 0:
        raise ValueError("need k > 0 and lam >= 0")
    dps = precision_digits(digits)
    with mpmath.workdps(dps + 10):
        K, L = mpmath.mpf(k.numerator) / k.denominator, mpmath.mpf(lam.numerator) / lam.denominator
        fpoly = _f_poly(k, lam)
        candidates = [(mpmath.mpf(1) / 3, "u=1/3")]
        bp = _squarefree(branch_polynomial(k, lam))
        if len(bp) > 1:
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in reversed(bp)]
            for r in mpmath.polyroots(coeffs, maxsteps=200, extraprec=2 * dps):
                if abs(mpmath.im(r)) < mpmath.mpf(10) ** (-dps // 2):
                    candidates.append((mpmath.re(r), "cubic"))
        points = []
        for u0, branch in candidates:
            if not 0 < u0 < 1:
                continue
            if branch == "cubic":
                g = lambda x: _peval(bp, x)
                u0 = mpmath.findroot(g, u0)
            f0 = _peval([mpmath.mpf(c.numerator) / c.denominator for c in fpoly], u0)
            if f0 <= 0:
                continue
            t0 = u0 * (1 - u0) ** 2 / f0**2
            if t0 <= 0:
                continue
            if any(abs(p.u - u0) < mpmath.mpf(10) ** (-dps // 2) for p in points):
                continue
            res = max(abs(x) for x in _system(K, L, t0, f0, u0))
            points.append(CriticalPoint(k, lam, +t0, +f0, +u0, branch, +res))
        points.sort(key=lambda p: p.u)
    if not points:
        raise GraphError(f"no positive critical point for k={k}, lam={lam}")
    points[0].regime = _regime(k, lam, points[0])
    return points


def _regime(k, lam, dominant: CriticalPoint) -> str:
    if coalescence(k, lam):
        return "baby-universe"
    return "planar" if dominant.branch == "u=1/3" else "tree"


def dominant_critical_point(k, lam, digits: int | None = None) -> CriticalPoint:
    return critical_points(k, lam, digits)[0]


def t1_closed_form(lam) -> Fraction:
    return Fraction(27, 4) / (Fraction(lam) + 9) ** 2


def t2_closed_form(lam) -> Fraction:
    lam = Fraction(lam)
    return lam / (4 * (1 + lam) ** 2)


# -- singular exponent ------------------------------------------------------


@dataclass
class ExponentEstimate:
    k: Fraction
    lam: Fraction
    raw: float
    extrapolated: float
    regime: str
    classified: str
    slopes: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "k": str(self.k),
            "lambda": str(self.lam),
            "raw": self.raw,
            "extrapolated": self.extrapolated,
            "regime": self.regime,
            "classified": self.classified,
            "slopes": self.slopes,
        }


def _f_below(cp: CriticalPoint, eps, K, L):
    """``f`` on the physical branch at ``t = t_c - eps``."""
    target = cp.t - eps
    tu = lambda u: u * (1 - u) ** 2 / (K * (1 - u) * (1 + 3 * u) - K + 1 + L * u * (1 - u) ** 2) ** 2 - target
    # t(u) increases on [0, u_c]; bisection copes with the flat tangent at u_c.
    lo, hi = mpmath.mpf(0), cp.u
    tol = mpmath.mpf(2) ** (-mpmath.mp.prec)
    while hi - lo > tol * 4:
        mid = (lo + hi) / 2
        if tu(mid) < 0:
            lo = mid
        else:
            hi = mid
    u = (lo + hi) / 2
    return K * (1 - u) * (1 + 3 * u) - K + 1 + L * u * (1 - u) ** 2


def singular_exponent(
    k, lam, eps_max: float = 1e-3, eps_min: float = 1e-8, steps: int = 11, digits: int | None = None
) -> ExponentEstimate:
    """Estimate the exponent of ``f_c - f(t)`` as ``t -> t_c``.

    ``D(eps) = h(2 eps) - 2 h(eps)`` with ``h(eps) = f_c - f(t_c - eps)``
    removes the analytic linear term.  Log-slopes of ``|D|`` along a
    geometric ladder are extrapolated with Aitken's delta-squared.
    """
    k, lam = Fraction(k), Fraction(lam)
    dps = precision_digits(digits)
    cp = dominant_critical_point(k, lam, dps)
    with mpmath.workdps(dps + 10):
        K, L = mpmath.mpf(k.numerator) / k.denominator, mpmath.mpf(lam.numerator) / lam.denominator
        ladder = [mpmath.mpf(eps_max) * (mpmath.mpf(eps_min) / eps_max) ** (mpmath.mpf(j) / (steps - 1)) for j in range(steps)]
        cache = {}

        def h(e):
            key = mpmath.nstr(e, 30)
            if key not in cache:
                cache[key] = cp.f - _f_below(cp, e, K, L)
            return cache[key]

        D = [abs(h(2 * e) - 2 * h(e)) for e in ladder]
        slopes = [
            float(mpmath.log(D[j] / D[j + 1]) / mpmath.log(ladder[j] / ladder[j + 1])) for j in range(steps - 1)
        ]
    raw = slopes[-1]
    extrapolated = raw
    a, b, c = slopes[-3:]
    denom = (c - b) - (b - a)
    if denom != 0:
        aitken = c - (c - b) ** 2 / denom
        if abs(aitken - c) < abs(c - b) * 10 + 1e-12:
            extrapolated = aitken
    classified = "unclassified"
    for name, value in REGIME_EXPONENTS.items():
        if abs(extrapolated - float(value)) <= EXPONENT_TOLERANCE:
            classified = name
    return ExponentEstimate(k, lam, raw, extrapolated, cp.regime, classified, slopes)


# -- phase diagram -----------------------------------------------------------


def phase_diagram(ks: Sequence, lams: Sequence, digits: int | None = None) -> list[dict]:
    """Regime of the dominant singularity on a (k, lam) grid.

    Points off the lines ``k = 1`` and ``lam = 0`` are labeled conjectural.
    """
    rows = []
    for k in ks:
        for lam in lams:
            k, lam = Fraction(k), Fraction(lam)
            cp = dominant_critical_point(k, lam, digits)
            rows.append(
                {
                    "k": str(k),
                    "lambda": str(lam),
                    "t_c": float(cp.t),
                    "f_c": float(cp.f),
                    "u_c": float(cp.u),
                    "regime": cp.regime,
                    "status": "solved" if k == 1 or lam == 0 else "conjectural",
                }
            )
    return rows
