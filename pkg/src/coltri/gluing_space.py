"""Exhaustive enumeration of closed gluings of bubbles.

A gluing of ``b`` labeled bubble copies is a bijection from black to white
vertices (the color-0 edges).  Only connected results are kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .bubble_catalog import BubbleSpec
from .colored_graph import (
    ColoredGraph,
    GraphError,
    _encode_from,
    disjoint_union,
    faces,
    gurau_degree,
    key_digest,
    require_valid,
)
from .series import PowerSeries

DEFAULT_EDGE_CAP = 10
MODES = ("labeled", "rooted", "unlabeled")


@dataclass
class GluingRecord:
    per_color: tuple[int, ...]
    E: int
    b: int
    omega: int
    delta: Fraction
    multiplicity: Fraction = Fraction(1)
    key: str | None = None
    graph: ColoredGraph | None = None

    @property
    def F(self) -> int:
        return sum(self.per_color)

    def row(self) -> dict:
        out = {"graph_key": self.key or ""}
        out.update({f"F_0{c}": n for c, n in enumerate(self.per_color, start=1)})
        out.update(
            F=self.F, E=self.E, omega=self.omega, delta=str(self.delta), count=str(self.multiplicity)
        )
        return out


@dataclass
class GluingEnumeration:
    d: int
    b: int
    mode: str
    records: list[GluingRecord] = field(default_factory=list)
    labeled_total: int = 0

    @property
    def F_max(self) -> int:
        return max(r.F for r in self.records)

    @property
    def total(self) -> Fraction:
        return sum((r.multiplicity for r in self.records), Fraction(0))

    def maximizers(self) -> list[GluingRecord]:
        top = self.F_max
        return [r for r in self.records if r.F == top]


def _as_graph(b) -> ColoredGraph:
    return b.graph if isinstance(b, BubbleSpec) else b


def iter_matchings(copies: Sequence[ColoredGraph]) -> Iterator[tuple[ColoredGraph, dict[int, int]]]:
    """Yield ``(union, black -> white)`` for every connected gluing.

    Matchings come in lexicographic order.  A union-find over copies rejects
    a partial matching as soon as a proper subset of copies is closed off.
    """
    union, offsets = disjoint_union(list(copies))
    ncopies = len(copies)
    copy_of = [0] * union.n
    for i, off in enumerate(offsets):
        for v in range(copies[i].n):
            copy_of[v + off] = i
    blacks, whites = union.blacks(), union.whites()
    if len(blacks) != len(whites):
        raise GraphError("unbalanced bubbles cannot be glued")

    match: dict[int, int] = {}
    used = set()

    def rec(i, label, open_, size):
        if i == len(blacks):
            yield union, dict(match)
            return
        x = blacks[i]
        for y in whites:
            if y in used:
                continue
            la, lb = label[copy_of[x]], label[copy_of[y]]
            if la == lb:
                new_label, new_open, new_size = label, dict(open_), dict(size)
                new_open[la] -= 2
                root = la
            else:
                new_label = [la if l == lb else l for l in label]
                new_open = {k: v for k, v in open_.items() if k != lb}
                new_size = {k: v for k, v in size.items() if k != lb}
                new_open[la] = open_[la] + open_[lb] - 2
                new_size[la] = size[la] + size[lb]
                root = la
            if new_open[root] == 0 and new_size[root] < ncopies:
                continue
            match[x] = y
            used.add(y)
            yield from rec(i + 1, new_label, new_open, new_size)
            used.discard(y)
            del match[x]

    label = list(range(ncopies))
    open_ = {i: copies[i].n for i in range(ncopies)}
    size = {i: 1 for i in range(ncopies)}
    yield from rec(0, label, open_, size)


def _census(union: ColoredGraph, match: dict[int, int]) -> tuple[int, ...]:
    adj = union.adjacency
    whites = union.whites()
    out = []
    for c in range(1, union.d + 1):
        seen = set()
        count = 0
        for w in whites:
            if w in seen:
                continue
            count += 1
            x = w
            while x not in seen:
                seen.add(x)
                x = match[adj[x][c]]
        out.append(count)
    return tuple(out)


def glue(union: ColoredGraph, match: dict[int, int]) -> ColoredGraph:
    return union.with_edges((0, w, b) for b, w in match.items())


def _rooted_weight(g: ColoredGraph) -> tuple[tuple, Fraction]:
    """Canonical code and number of rootings (orbits of marked color-0 edges)."""
    codes = [_encode_from(g, v)[0] for v in range(g.n)]
    best = min(codes)
    aut = sum(1 for c in codes if c == best)
    # Same tuple as canonical_key() gives for a connected graph.
    return (g.d, g.has_color_zero, (best,)), Fraction(len(g.color_zero_edges), aut)


def enumerate_gluings(
    bubbles,
    count: int | None = None,
    mode: str = "labeled",
    cap: int = DEFAULT_EDGE_CAP,
    s=None,
    keep_graphs: bool = False,
) -> GluingEnumeration:
    """Enumerate connected closed gluings.

    ``bubbles`` is one bubble glued ``count`` times, or a sequence listing
    every copy.  ``mode`` is ``labeled`` (every matching), ``unlabeled``
    (one record per isomorphism class, multiplicity = labeled count) or
    ``rooted`` (one record per class, multiplicity = number of rootings on a
    color-0 edge).  ``delta`` uses enhancement ``s`` (default ``d - 1``).
    """
    if mode not in MODES:
        raise GraphError(f"unknown mode {mode!r}; expected one of {MODES}")
    if isinstance(bubbles, (ColoredGraph, BubbleSpec)):
        if count is None or count < 1:
            raise GraphError("count must be a positive integer")
        copies = [_as_graph(bubbles)] * count
    else:
        copies = [_as_graph(x) for x in bubbles]
    if not copies:
        raise GraphError("nothing to glue")
    for g in copies:
        require_valid(g)
        if g.has_color_zero:
            raise GraphError("gluing expects bubbles without color-0 edges")
    d = copies[0].d
    n_edges = sum(g.n for g in copies) // 2
    if n_edges > cap:
        raise GraphError(f"{n_edges} color-0 edges exceed the enumeration cap {cap}")
    b = len(copies)
    s = Fraction(d - 1) if s is None else Fraction(s)

    result = GluingEnumeration(d, b, mode)
    classes: dict[tuple, GluingRecord] = {}
    for union, match in iter_matchings(copies):
        result.labeled_total += 1
        per_color = _census(union, match)
        F = sum(per_color)
        omega = d - F + (d - 1) * (n_edges - b)
        delta = F - (d - 1) * n_edges + s * b
        if mode == "labeled":
            g = glue(union, match) if keep_graphs else None
            result.records.append(GluingRecord(per_color, n_edges, b, omega, delta, graph=g))
            continue
        g = glue(union, match)
        code, rootings = _rooted_weight(g)
        rec = classes.get(code)
        if rec is None:
            weight = rootings if mode == "rooted" else Fraction(1)
            rec = GluingRecord(
                per_color, n_edges, b, omega, delta, weight, key_digest(code), g if keep_graphs else None
            )
            classes[code] = rec
            result.records.append(rec)
        elif mode == "unlabeled":
            rec.multiplicity += 1
    return result


# -- enhancement from enumeration -----------------------------------------


@dataclass
class EnhancementFit:
    slope: Fraction
    intercept: Fraction
    exact_fit: bool
    s: Fraction
    delta_max: Fraction
    f_max: dict[int, int]

    def to_dict(self) -> dict:
        return {
            "slope": str(self.slope),
            "intercept": str(self.intercept),
            "exact_fit": self.exact_fit,
            "s": str(self.s),
            "delta_max": str(self.delta_max),
            "F_max": {str(k): v for k, v in self.f_max.items()},
        }


def f_max_series(bubble, b_max: int, cap: int = DEFAULT_EDGE_CAP) -> dict[int, int]:
    return {b: enumerate_gluings(bubble, b, "labeled", cap).F_max for b in range(1, b_max + 1)}


def empirical_enhancement(bubble, b_max: int, cap: int = DEFAULT_EDGE_CAP) -> EnhancementFit:
    """Fit ``F_max(b) = slope * b + intercept`` exactly over ``b = 1..b_max``.

    The enhancement is ``(d-1) p(B) - slope``; the fit is flagged as not
    exact when any sampled ``b`` leaves the line.
    """
    g = _as_graph(bubble)
    if b_max < 1:
        raise GraphError("b_max must be at least 1")
    fm = f_max_series(g, b_max, cap)
    if b_max == 1:
        slope = Fraction(0)
    else:
        slope = Fraction(fm[2] - fm[1])
    intercept = Fraction(fm[1]) - slope
    exact = all(fm[b] == slope * b + intercept for b in fm)
    p = g.n // 2
    return EnhancementFit(slope, intercept, exact, (g.d - 1) * p - slope, intercept, fm)


# -- melonic 2-point function ---------------------------------------------


@dataclass
class MelonicSeries:
    exponents: tuple[int, ...]
    couplings: tuple[Fraction, ...]
    order: int
    series: PowerSeries

    @property
    def coefficients(self) -> list[Fraction]:
        return list(self.series.coeffs)


def melonic_g2_series(exponents: Sequence[int], couplings: Sequence, order: int) -> MelonicSeries:
    """Series ``G2(lam)`` solving ``1 - G2 - lam sum_i p_i t_i G2^p_i = 0``.

    Fixed-point iteration in exact arithmetic; each pass fixes one more
    coefficient.
    """
    if len(exponents) != len(couplings):
        raise ValueError("exponents and couplings must have the same length")
    if order < 0:
        raise ValueError("order must be non-negative")
    ts = tuple(Fraction(t) for t in couplings)
    G = PowerSeries.constant(1, order, "lam")
    for _ in range(order + 1):
        acc = PowerSeries.constant(0, order, "lam")
        for p, t in zip(exponents, ts):
            if t:
                acc = acc + (G ** p) * (p * t)
        G = 1 - acc.shift(1)
    return MelonicSeries(tuple(exponents), ts, order, G)


def rooted_melonic_counts(bubble, b_max: int, cap: int = DEFAULT_EDGE_CAP) -> list[Fraction]:
    """Rooted melonic gluings (degree 0) of ``b`` copies, for ``b = 0..b_max``.

    ``b = 0`` is the bare color-0 edge, counted once.
    """
    counts = [Fraction(1)]
    for b in range(1, b_max + 1):
        enum = enumerate_gluings(bubble, b, "rooted", cap)
        counts.append(sum((r.multiplicity for r in enum.records if r.omega == 0), Fraction(0)))
    return counts


# -- necklace graphs at d = 4 ---------------------------------------------


def _is_doubled_necklace(g: ColoredGraph, bubble: Sequence[int]) -> bool:
    adj = g.adjacency
    return all(adj[v][1] == adj[v][3] and adj[v][2] == adj[v][4] for v in bubble)


def necklace_degree_split(g: ColoredGraph) -> tuple[int, int]:
    """Split the degree of a d=4 necklace graph into genus and bubble terms.

    Every bubble must be a necklace with colors 3 doubling 1 and 4
    doubling 2.  Dropping colors 3 and 4 leaves a 3-colored graph whose
    genus ``g`` satisfies ``2 - 2g = F_01 + F_02 - sum_p (p-1) b_p``.
    Returns ``(g, sum_p (p-1) b_p)``; the degree equals ``4 g + sum``.
    """
    if g.d != 4:
        raise GraphError("necklace split is defined at d=4")
    require_valid(g)
    if not g.is_closed:
        raise GraphError("necklace split needs a closed graph")
    bubbles = g.bubbles()
    for bub in bubbles:
        if not _is_doubled_necklace(g, bub):
            raise GraphError("non-necklace bubble present (colors 3/4 must double 1/2)")
    census = faces(g)
    bubble_term = sum(len(bub) // 2 - 1 for bub in bubbles)
    chi = census[1] + census[2] - bubble_term
    if chi % 2:
        raise GraphError("odd Euler characteristic; graph is not a doubled 3-colored graph")
    genus = (2 - chi) // 2
    omega = gurau_degree(g)
    if omega != 4 * genus + bubble_term:
        raise AssertionError(f"degree {omega} != 4*{genus} + {bubble_term}")
    return genus, bubble_term
