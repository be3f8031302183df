from fractions import Fraction

import pytest
from hypothesis import given, settings

from coltri.bubble_catalog import (
    Pairing,
    all_pairings,
    best_pairing,
    closure,
    is_melonic,
    melonic_bubble,
    necklace_bubble,
    two_vertex_bubble,
)
from coltri.colored_graph import GraphError, boundary_bubble, canonical_key, faces, validate
from coltri.enhancement import (
    crossed_quartic_bubble,
    empirical_record,
    inherited_enhancement,
    melonic_enhancement,
    melonic_tree_gluing,
    necklace_chain,
    pairing_enhancement,
    slice_enhancement,
)
from coltri.gluing_space import empirical_enhancement

from helpers import B1, NECKLACE, melonic_bubbles

D5_BUBBLE = crossed_quartic_bubble(5, [1, 5])


def test_melonic_degree_bound():
    assert melonic_enhancement(B1).s == 2
    assert melonic_enhancement(melonic_bubble(5, [(0, 2)])).s == 4
    with pytest.raises(GraphError):
        melonic_enhancement(NECKLACE)


@pytest.mark.parametrize("d", [3, 4, 5])
@pytest.mark.parametrize("copies", [1, 2, 3, 4])
def test_inherited_melonic_tree(d, copies):
    h = melonic_tree_gluing(d, copies)
    rec = inherited_enhancement(h, d - 1)
    assert rec.s == d - 1
    assert rec.bubble.n == 2 * (copies + 1)
    assert validate(rec.bubble).ok


@pytest.mark.parametrize("p", [1, 2, 3, 4, 5])
def test_inherited_necklace_chain(p):
    h = necklace_chain(p)
    rec = inherited_enhancement(h, 4)
    assert rec.s == p + 2
    assert canonical_key(rec.bubble) == canonical_key(necklace_bubble(4, p, ((1, 3), (2, 4))).graph)


def test_inherited_agrees_with_enumeration():
    # the boundary of a two-necklace chain is the 4-necklace whose fitted enhancement is 4
    rec = inherited_enhancement(necklace_chain(2), 4)
    assert rec.s == empirical_enhancement(rec.bubble, 2).s


def test_inherited_rational_input():
    rec = inherited_enhancement(melonic_tree_gluing(3, 2), Fraction(5, 2))
    # s = 2 (p_dH - 2 b) + s_B b + F(H); one link closes no face
    assert rec.data["F_H"] == faces(melonic_tree_gluing(3, 2)).total == 0
    assert rec.data["p_boundary"] == 3
    assert rec.s == 2 * (3 - 4) + 5


def test_inherited_errors():
    with pytest.raises(GraphError):
        inherited_enhancement(closure(B1, Pairing(B1, ((0, 1), (2, 3)))), 2)


def test_slice_examples():
    rec = slice_enhancement(D5_BUBBLE, [[1, 2, 3], [4, 5]])
    assert rec.s == 5 and rec.status == "exact"
    d6 = crossed_quartic_bubble(6, [1, 4])
    assert slice_enhancement(d6, [[1, 2, 3], [4, 5, 6]]).s == 6
    # one slice is the degree bound
    assert slice_enhancement(B1, [[1, 2, 3]]).s == 2
    assert slice_enhancement(D5_BUBBLE, [[1, 2, 3], [4, 5]], [Fraction(3, 2), 1]).s == Fraction(9, 2)


def test_slice_errors():
    with pytest.raises(GraphError):
        slice_enhancement(D5_BUBBLE, [[1, 2], [3, 4]])
    with pytest.raises(GraphError):
        slice_enhancement(D5_BUBBLE, [[1, 2, 3, 4], [5]])
    with pytest.raises(GraphError):
        slice_enhancement(D5_BUBBLE, [[2, 3], [1, 4, 5]])  # colors 2,3 alone form two cycles
    with pytest.raises(GraphError):
        slice_enhancement(D5_BUBBLE, [[1, 2, 3], [4, 5]], [1])


def test_pairing_formula():
    rec = pairing_enhancement(D5_BUBBLE, b_max=3)
    assert rec.s == 5 and rec.status == "verified"
    assert pairing_enhancement(B1).s == 2
    assert pairing_enhancement(NECKLACE, b_max=3).status == "verified"
    assert pairing_enhancement(NECKLACE).s == 4


def test_best_pairing_gives_smallest_candidate():
    for bubble in (B1, NECKLACE, D5_BUBBLE, necklace_bubble(4, 3).graph):
        best, _ = best_pairing(bubble)
        values = [pairing_enhancement(bubble, p).s for p in all_pairings(bubble)]
        assert min(values) == pairing_enhancement(bubble, best).s


@settings(max_examples=15, deadline=None)
@given(melonic_bubbles(d=3, max_insertions=2))
def test_empirical_never_exceeds_pairing_candidate(bubble):
    fit = empirical_enhancement(bubble, 2)
    assert fit.s <= pairing_enhancement(bubble).s
    # melonic bubbles sit exactly on the degree bound
    assert fit.s == 2


def test_empirical_record():
    rec = empirical_record(two_vertex_bubble(3), 3)
    assert rec.s == 2 and rec.status == "exact-fit" and rec.provenance == "empirical"
    assert rec.to_dict()["s"] == "2"


def test_boundary_of_tree_is_melonic():
    assert is_melonic(boundary_bubble(melonic_tree_gluing(4, 3)))
