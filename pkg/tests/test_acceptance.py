"""The nine acceptance criteria, each at its stated tolerance and time budget."""

import math
import random
import time
from fractions import Fraction

import mpmath
import sympy as sp

from coltri.bubble_catalog import best_pairing, is_melonic, necklace_bubble
from coltri.colored_graph import canonical_key, gurau_degree
from coltri.enhancement import (
    crossed_quartic_bubble,
    inherited_enhancement,
    melonic_tree_gluing,
    necklace_chain,
    slice_enhancement,
)
from coltri.gluing_space import empirical_enhancement, enumerate_gluings, melonic_g2_series, rooted_melonic_counts
from coltri.quartic_gf import (
    critical_points,
    dominant_critical_point,
    enumerate_dominant_rooted_maps,
    quartic_bivariate,
    quartic_series,
    series_residual,
    singular_exponent,
    t1_closed_form,
    t2_closed_form,
)
from coltri.stuffed_maps import from_stuffed_map, projected_map, to_stuffed_map, tree_face_count, tree_gluing

from helpers import B1, NECKLACE


def mp(x):
    x = Fraction(x)
    return mpmath.mpf(x.numerator) / x.denominator


def test_criterion_1_degree_bound(acceptance):
    start = time.perf_counter()
    checked, bad = 0, []
    for b in (1, 2, 3):
        for r in enumerate_gluings(B1, b, keep_graphs=True).records:
            checked += 1
            omega = gurau_degree(r.graph)
            if omega != r.omega or omega < 0 or (omega == 0) != is_melonic(r.graph):
                bad.append((b, r.per_color))
    elapsed = time.perf_counter() - start
    acceptance(1, not bad and elapsed < 10, f"{checked} gluings, {len(bad)} violations, {elapsed:.1f}s")


def test_criterion_2_enhancement_slopes(acceptance):
    mel = empirical_enhancement(B1, 3)
    neck = empirical_enhancement(NECKLACE, 3)
    ok = (
        mel.s == 2 and mel.exact_fit and mel.f_max == {1: 5, 2: 7, 3: 9}
        and neck.s == 4 and neck.exact_fit and neck.f_max == {1: 6, 2: 8, 3: 10}
    )
    acceptance(2, ok, f"melonic s={mel.s} F_max={mel.f_max}; necklace s={neck.s} F_max={neck.f_max}")


def test_criterion_3_inherited_and_slice(acceptance):
    tree = [inherited_enhancement(melonic_tree_gluing(d, n), d - 1).s == d - 1 for d in (3, 4, 5) for n in (1, 2, 3)]
    chain = {p: inherited_enhancement(necklace_chain(p), 4).s for p in (1, 2, 3, 4)}
    shown = {p: str(s) for p, s in chain.items()}
    chain_ok = all(s == Fraction(p + 2) for p, s in chain.items())
    slice_s = slice_enhancement(crossed_quartic_bubble(5, [1, 5]), [[1, 2, 3], [4, 5]]).s
    ok = all(tree) and chain_ok and slice_s == Fraction(5)
    acceptance(3, ok, f"melonic tree ok={all(tree)}; necklace chain {shown}; slice s={slice_s}")


def test_criterion_4_bijection(acceptance):
    start = time.perf_counter()
    checked, bad = 0, 0
    for bubble in (B1, NECKLACE):
        pairing, _ = best_pairing(bubble)
        for b in (1, 2):
            for r in enumerate_gluings(bubble, b, keep_graphs=True).records:
                checked += 1
                w = to_stuffed_map(r.graph, bubble, pairing)
                back = from_stuffed_map(w, bubble, pairing)
                if w.census() != tuple(r.per_color) or canonical_key(back) != canonical_key(r.graph):
                    bad += 1
    elapsed = time.perf_counter() - start
    acceptance(4, bad == 0 and elapsed < 30, f"{checked} gluings, {bad} mismatches, {elapsed:.1f}s")


def test_criterion_5_tree_face_formula(acceptance):
    results = []
    for bubble in (B1, NECKLACE):
        pairing, F = best_pairing(bubble)
        for copies in (1, 2, 3, 4):
            shapes = [None] if copies < 3 else [None, [0] * (copies - 1)]
            for parents in shapes:
                w = to_stuffed_map(tree_gluing(bubble, pairing, copies, parents), bubble, pairing)
                results.append(projected_map(w).is_tree() and w.total_faces == tree_face_count(F, bubble.d, copies))
    acceptance(5, all(results), f"{sum(results)}/{len(results)} tree gluings match")


def test_criterion_6_melonic_series(acceptance):
    coeffs = melonic_g2_series([2], [1], 4).coefficients
    rooted = rooted_melonic_counts(B1, 3)
    # the bridge between the two: coefficient n is (-2)^n times the rooted count
    ok = coeffs == [1, -2, 8, -40, 224] and all(coeffs[n] == (-2) ** n * rooted[n] for n in range(4))
    acceptance(6, ok, f"coefficients {[int(c) for c in coeffs]}; rooted counts {[int(c) for c in rooted]}")


def test_criterion_7_quartic_series(acceptance):
    start = time.perf_counter()
    planar = [2 * 3**n * math.comb(2 * n, n) // ((n + 1) * (n + 2)) for n in range(5)]
    series_ok = quartic_series(1, 0, 4).coeffs == planar == [1, 2, 9, 54, 378]
    rnd = random.Random(2024)
    pairs = [(Fraction(rnd.randint(1, 40), rnd.randint(1, 9)), Fraction(rnd.randint(0, 40), rnd.randint(1, 9))) for _ in range(10)]
    residual_ok = all(series_residual(k, lam, 20).is_zero() for k, lam in pairs)
    oracle_ok = True
    for k in (1, 2, 3):
        counts = enumerate_dominant_rooted_maps(k, 4)
        oracle_ok &= {key: Fraction(v) for key, v in counts.items()} == quartic_bivariate(k, 4)
    elapsed = time.perf_counter() - start
    ok = series_ok and residual_ok and oracle_ok and elapsed < 300
    acceptance(7, ok, f"series={series_ok} residual={residual_ok} oracle(E<=4,k<=3)={oracle_ok} {elapsed:.1f}s")


def test_criterion_8_critical_points(acceptance):
    targets = [
        (1, 0, Fraction(1, 12), Fraction(4, 3)),
        (1, 3, Fraction(3, 64), Fraction(16, 9)),
        (Fraction(9, 5), 0, Fraction(25, 432), Fraction(8, 5)),
    ]
    errors = []
    with mpmath.workdps(60):
        for k, lam, t, f in targets:
            cp = dominant_critical_point(k, lam)
            errors.append(max(abs(cp.t - mp(t)), abs(cp.f - mp(f))))
        points_ok = all(e < 1e-12 for e in errors)

        # closed forms on a grid: t1 on the u = 1/3 branch, t2 on the other for lam > 1
        grid_ok = True
        for lam in [Fraction(j, 4) for j in range(1, 41)]:
            pts = critical_points(1, lam)
            grid_ok &= any(p.branch == "u=1/3" and abs(p.t - mp(t1_closed_form(lam))) < 1e-12 for p in pts)
            if lam > 1:
                grid_ok &= any(abs(p.t - mp(t2_closed_form(lam))) < 1e-12 for p in pts)

    # symbolic: both closed forms solve the parametrization at their branch points
    lam, u = sp.symbols("lam u", positive=True)
    f_of_u = (1 - u) * (1 + 3 * u) + lam * u * (1 - u) ** 2
    t_of_u = u * (1 - u) ** 2 / f_of_u**2
    sym_ok = sp.simplify(t_of_u.subs(u, sp.Rational(1, 3)) - sp.Rational(27, 4) / (lam + 9) ** 2) == 0
    sym_ok &= sp.simplify(t_of_u.subs(u, 1 / lam) - lam / (4 * (1 + lam) ** 2)) == 0
    sym_ok &= sp.simplify(sp.diff(t_of_u, u).subs(u, 1 / lam)) == 0
    ok = points_ok and grid_ok and sym_ok
    acceptance(8, ok, f"max error {float(max(errors)):.1e}; grid={grid_ok}; symbolic={sym_ok}")


def test_criterion_9_singular_exponents(acceptance):
    cases = [(1, 0, 1.5), (1, 5, 0.5), (1, 3, 2 / 3), (3, 0, 0.5)]
    details, ok = [], True
    for k, lam, expected in cases:
        start = time.perf_counter()
        est = singular_exponent(k, lam)
        elapsed = time.perf_counter() - start
        ok &= abs(est.extrapolated - expected) < 0.05 and elapsed < 10
        details.append(f"({k},{lam})->{est.extrapolated:.4f}")
    acceptance(9, ok, "; ".join(details))
