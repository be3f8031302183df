"""Closed-form enhancements: inherited from a boundary, color slices, pairings."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bubble_catalog import (
    BubbleSpec,
    Pairing,
    best_pairing,
    closure,
    is_melonic,
    quartic_melonic,
    quartic_necklace,
)
from .colored_graph import (
    WHITE,
    BLACK,
    ColoredGraph,
    GraphError,
    boundary_bubble,
    canonical_key,
    disjoint_union,
    faces,
    key_digest,
    require_valid,
)
from .gluing_space import DEFAULT_EDGE_CAP, empirical_enhancement

PROVENANCES = ("degree-bound", "inherited", "slice", "empirical", "pairing-formula")


@dataclass
class EnhancementRecord:
    bubble_key: str
    s: Fraction
    provenance: str
    status: str = "exact"
    data: dict = field(default_factory=dict)
    bubble: ColoredGraph | None = None

    def to_dict(self) -> dict:
        out = {
            "bubble_key": self.bubble_key,
            "s": str(self.s),
            "provenance": self.provenance,
            "status": self.status,
            "data": self.data,
        }
        if self.bubble is not None:
            out["bubble"] = self.bubble.to_dict()
        return out


def _graph(b) -> ColoredGraph:
    return b.graph if isinstance(b, BubbleSpec) else b


def _digest(g: ColoredGraph) -> str:
    return key_digest(canonical_key(g))


def melonic_enhancement(bubble) -> EnhancementRecord:
    """``s = d - 1``, valid for melonic bubbles (and only claimed for them)."""
    g = _graph(bubble)
    if not is_melonic(g):
        raise GraphError("the degree-bound enhancement d-1 is only claimed for melonic bubbles")
    return EnhancementRecord(_digest(g), Fraction(g.d - 1), "degree-bound")


# -- inherited from a boundary bubble --------------------------------------


def inherited_enhancement(
    h: ColoredGraph,
    s_bubble,
    bubble_p: int | None = None,
    face_count: int | None = None,
    bubble_count: int | None = None,
) -> EnhancementRecord:
    """Enhancement of the boundary bubble of an open gluing ``h`` of copies of B.

    ``s = (d-1)(p(dH) - p(B) b(H)) + s_B b(H) + F(H)``.  ``F(H)`` counts closed
    faces only and ``b(H)`` the bubbles of ``h``; both are computed when not
    given.  ``p(B)`` defaults to the common black count of the bubbles.
    """
    require_valid(h)
    if not h.is_connected():
        raise GraphError("inherited enhancement needs a connected gluing")
    if h.is_closed:
        raise GraphError("inherited enhancement needs free vertices; gluing is closed")
    bubbles = h.bubbles()
    if bubble_p is None:
        sizes = {len(bub) // 2 for bub in bubbles}
        if len(sizes) != 1:
            raise GraphError("bubbles differ in size; pass bubble_p explicitly")
        bubble_p = sizes.pop()
    F = faces(h).total if face_count is None else face_count
    b = len(bubbles) if bubble_count is None else bubble_count
    boundary = boundary_bubble(h)
    p_boundary = boundary.n // 2
    s_b = Fraction(s_bubble)
    s = (h.d - 1) * (p_boundary - bubble_p * b) + s_b * b + F
    data = {"F_H": F, "b_H": b, "p_B": bubble_p, "p_boundary": p_boundary, "s_B": str(s_b)}
    return EnhancementRecord(_digest(boundary), Fraction(s), "inherited", data=data, bubble=boundary)


def _glue_copies(copies: Sequence[ColoredGraph], links: Sequence[tuple[int, int, int, int]]) -> ColoredGraph:
    """Disjoint union plus color-0 edges ``(copy_w, white, copy_b, black)``."""
    union, offsets = disjoint_union(list(copies))
    extra = [(0, offsets[cw] + w, offsets[cb] + b) for cw, w, cb, b in links]
    g = ColoredGraph.from_edges(union.d, union.shades, list(union.edges) + extra, has_color_zero=True)
    require_valid(g)
    return g


def melonic_tree_gluing(d: int, copies: int, color: int = 1) -> ColoredGraph:
    """Path of quartic melonic bubbles, consecutive copies joined by one color-0 edge.

    Copy ``i`` has whites 0, 2 and blacks 1, 3; its black 3 meets white 0
    of copy ``i+1``.  The boundary is a melonic bubble with
    ``2 (copies + 1)`` vertices.
    """
    if copies < 1:
        raise GraphError("need at least one bubble")
    b = quartic_melonic(d, color).graph
    links = [(i + 1, 0, i, 3) for i in range(copies - 1)]
    return _glue_copies([b] * copies, links)


def necklace_chain(p: int, split=((1, 3), (2, 4))) -> ColoredGraph:
    """Cyclic chain of ``p`` quartic necklaces whose boundary is a 2p-necklace.

    Copy ``i`` has ``w=0, b=1, w'=2, b'=3``; its ``b'`` is joined by color 0
    to ``w`` of copy ``i+1`` (cyclically).  The free vertices ``b, w'`` of
    every copy form the boundary.  For ``p = 1`` the single link closes the
    necklace on itself.
    """
    if p < 1:
        raise GraphError("chain length must be at least 1")
    neck = quartic_necklace(4, split).graph
    links = [((i + 1) % p, 0, i, 3) for i in range(p)]
    return _glue_copies([neck] * p, links)


# -- color slices ----------------------------------------------------------


def _check_partition(d: int, partition) -> list[tuple[int, ...]]:
    parts = [tuple(sorted(set(part))) for part in partition]
    seen = [c for part in parts for c in part]
    if sorted(seen) != list(range(1, d + 1)):
        raise GraphError(f"slices must partition the colors 1..{d}")
    for part in parts:
        if len(part) < 2:
            raise GraphError(f"slice {list(part)} has fewer than two colors")
    return parts


def slice_enhancement(bubble, partition, slice_s: Sequence | None = None) -> EnhancementRecord:
    """``s_B = (L-1) p(B) + sum_k s_k`` for a bubble cut into color slices.

    Every slice (the bubble restricted to its colors) must be connected;
    the disconnected case is not handled.  ``s_k`` defaults to
    ``|slice| - 1``, the melonic value of a slice.
    """
    g = _graph(bubble)
    require_valid(g)
    if g.has_color_zero:
        raise GraphError("slice enhancement expects a bubble")
    parts = _check_partition(g.d, partition)
    if slice_s is None:
        per = [Fraction(len(part) - 1) for part in parts]
    else:
        if len(slice_s) != len(parts):
            raise GraphError("one enhancement per slice is required")
        per = [Fraction(x) for x in slice_s]
    melonic = []
    for part in parts:
        if len(g.components(part)) != 1:
            raise GraphError(
                f"slice {list(part)} is disconnected; the relaxed (disconnected) case is out of scope"
            )
        sub = g.induced(range(g.n), part)
        melonic.append(_slice_is_melonic(sub, part))
    L = len(parts)
    p = g.n // 2
    s = (L - 1) * p + sum(per, Fraction(0))
    data = {
        "slices": [list(part) for part in parts],
        "slice_s": [str(x) for x in per],
        "slice_melonic": melonic,
        "p_B": p,
    }
    status = "exact" if slice_s is not None or all(melonic) else "default-slices-not-melonic"
    return EnhancementRecord(_digest(g), s, "slice", status, data)


def _slice_is_melonic(sub: ColoredGraph, colors: Sequence[int]) -> bool:
    if len(colors) == 2:
        return True  # a two-colored bubble is a cycle, the d=2 case
    relabel = {c: i + 1 for i, c in enumerate(colors)}
    edges = [(relabel[c], w, b) for c, w, b in sub.edges]
    return is_melonic(ColoredGraph.from_edges(len(colors), sub.shades, edges))


def crossed_quartic_bubble(d: int, crossing: Sequence[int]) -> ColoredGraph:
    """Four-vertex bubble: colors in ``crossing`` join ``w0-b1`` and ``w1-b0``,
    the rest join ``w0-b0`` and ``w1-b1``.  Vertices are w0, b0, w1, b1."""
    cross = set(crossing)
    if not cross or not cross < set(range(1, d + 1)):
        raise GraphError("crossing colors must be a proper nonempty subset of 1..d")
    edges = []
    for c in range(1, d + 1):
        if c in cross:
            edges += [(c, 0, 3), (c, 2, 1)]
        else:
            edges += [(c, 0, 1), (c, 2, 3)]
    return ColoredGraph.from_edges(d, [WHITE, BLACK, WHITE, BLACK], edges)


# -- from a pairing --------------------------------------------------------


def pairing_enhancement(
    bubble, pairing: Pairing | None = None, b_max: int | None = None, cap: int = DEFAULT_EDGE_CAP
) -> EnhancementRecord:
    """``s = d + (d-1) p(B) - F(B^pi)`` for a pairing (default: the best one).

    The value is a candidate.  With ``b_max`` the gluings are enumerated and
    the status becomes ``verified`` when the fitted enhancement agrees.
    """
    g = _graph(bubble)
    if pairing is None:
        pairing, _ = best_pairing(g)
    elif pairing.bubble != g:
        raise GraphError("pairing belongs to a different bubble")
    F = faces(closure(g, pairing)).total
    p = g.n // 2
    s = Fraction(g.d + (g.d - 1) * p - F)
    data = {"F_closure": F, "p_B": p, "pairs": [list(x) for x in pairing.pairs]}
    status = "candidate"
    if b_max is not None:
        fit = empirical_enhancement(g, b_max, cap)
        data["empirical"] = fit.to_dict()
        if fit.exact_fit and fit.s == s:
            status = "verified"
    return EnhancementRecord(_digest(g), s, "pairing-formula", status, data)


def empirical_record(bubble, b_max: int, cap: int = DEFAULT_EDGE_CAP) -> EnhancementRecord:
    g = _graph(bubble)
    fit = empirical_enhancement(g, b_max, cap)
    status = "exact-fit" if fit.exact_fit else "non-linear"
    return EnhancementRecord(_digest(g), fit.s, "empirical", status, fit.to_dict())
