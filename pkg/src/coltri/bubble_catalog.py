"""Bubble families (melonic, necklaces), melonicity, and pairings."""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .colored_graph import (
    BLACK,
    WHITE,
    ColoredGraph,
    GraphError,
    canonical_key,
    faces,
    require_valid,
)

DEFAULT_PAIRING_CAP = 8


@dataclass(frozen=True)
class BubbleSpec:
    family: str
    params: dict
    graph: ColoredGraph

    @property
    def d(self) -> int:
        return self.graph.d

    @property
    def p(self) -> int:
        return self.graph.n // 2


@dataclass(frozen=True)
class Pairing:
    """Perfect matching of the white and black vertices of a bubble."""

    bubble: ColoredGraph
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        whites = sorted(w for w, _ in self.pairs)
        blacks = sorted(b for _, b in self.pairs)
        if whites != self.bubble.whites() or blacks != self.bubble.blacks():
            raise GraphError("pairing must cover every vertex exactly once")
        for w, b in self.pairs:
            if self.bubble.shades[w] != WHITE or self.bubble.shades[b] != BLACK:
                raise GraphError(f"pair ({w}, {b}) does not join a white to a black vertex")
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    def black_of(self, white: int) -> int:
        return dict(self.pairs)[white]

    def internal_colors(self, index: int) -> frozenset[int]:
        """Colors joining the two vertices of the ``index``-th pair."""
        w, b = self.pairs[index]
        adj = self.bubble.adjacency
        return frozenset(c for c in range(1, self.bubble.d + 1) if adj[w][c] == b)

    def to_dict(self) -> dict:
        return {"pairs": [list(p) for p in self.pairs]}


def closure(bubble: ColoredGraph, pairing: Pairing) -> ColoredGraph:
    """The closed graph obtained by joining each pair with a color-0 edge."""
    return ColoredGraph.from_edges(
        bubble.d,
        bubble.shades,
        list(bubble.edges) + [(0, w, b) for w, b in pairing.pairs],
        has_color_zero=True,
    )


# -- constructors ----------------------------------------------------------


def two_vertex_bubble(d: int) -> ColoredGraph:
    return ColoredGraph.from_edges(d, [WHITE, BLACK], [(c, 0, 1) for c in range(1, d + 1)])


def insert_dipole(g: ColoredGraph, white: int, color: int) -> ColoredGraph:
    """Cut the ``color`` edge at ``white`` and splice in a (d-1)-dipole.

    The new white and black vertices get ids ``n`` and ``n+1``.
    """
    if not 0 <= white < g.n or g.shades[white] != WHITE:
        raise GraphError(f"vertex {white} is not a white vertex of the bubble")
    if not 1 <= color <= g.d:
        raise GraphError(f"color {color} outside 1..{g.d}")
    black = g.adjacency[white][color]
    if black is None:
        raise GraphError(f"no edge of color {color} at white vertex {white}")
    nw, nb = g.n, g.n + 1
    edges = [e for e in g.edges if e != (color, white, black)]
    edges += [(color, white, nb), (color, nw, black)]
    edges += [(c, nw, nb) for c in range(1, g.d + 1) if c != color]
    return ColoredGraph.from_edges(g.d, list(g.shades) + [WHITE, BLACK], edges, g.has_color_zero)


_INSERTION = re.compile(r"^e(\d+):(\d+)$")


def parse_insertion(text: str) -> tuple[int, int]:
    """Parse ``"e<white>:<color>"`` naming the color edge at a white vertex."""
    m = _INSERTION.match(text.strip())
    if not m:
        raise GraphError(f"bad insertion {text!r}; expected e<white>:<color>")
    return int(m.group(1)), int(m.group(2))


def melonic_bubble(d: int, insertions: Iterable[tuple[int, int] | str] = ()) -> BubbleSpec:
    """Melonic bubble grown from the 2-vertex bubble by dipole insertions.

    Each insertion names an edge by ``(white vertex, color)``; the inserted
    dipole has that same color.
    """
    steps = [parse_insertion(s) if isinstance(s, str) else tuple(s) for s in insertions]
    g = two_vertex_bubble(d)
    for white, color in steps:
        g = insert_dipole(g, white, color)
    return BubbleSpec("melonic", {"d": d, "insertions": [list(s) for s in steps]}, g)


def quartic_melonic(d: int, color: int) -> BubbleSpec:
    spec = melonic_bubble(d, [(0, color)])
    return BubbleSpec("quartic-melonic", {"d": d, "color": color}, spec.graph)


def necklace_bubble(d: int, p: int, color_split: Sequence[Iterable[int]] | None = None) -> BubbleSpec:
    """Cycle of 2p vertices; neighbours share d/2 parallel edges.

    ``color_split[0]`` joins ``w_i`` to ``b_i``; ``color_split[1]`` joins
    ``b_i`` to ``w_{i+1}``.  Vertex ``2i`` is ``w_i`` and ``2i+1`` is ``b_i``.
    """
    if d % 2:
        raise GraphError("necklaces need an even d")
    if p < 1:
        raise GraphError("necklace length p must be at least 1")
    if color_split is None:
        color_split = (range(1, d + 1, 2), range(2, d + 1, 2))
    first, second = (sorted(set(part)) for part in color_split)
    if len(first) != d // 2 or len(second) != d // 2 or set(first) | set(second) != set(range(1, d + 1)):
        raise GraphError("color split must be a balanced bipartition of 1..d")
    shades = [WHITE, BLACK] * p
    edges = []
    for i in range(p):
        w, b, w_next = 2 * i, 2 * i + 1, (2 * i + 2) % (2 * p)
        edges += [(c, w, b) for c in first]
        edges += [(c, w_next, b) for c in second]
    g = ColoredGraph.from_edges(d, shades, edges)
    return BubbleSpec("necklace" if p != 2 else "quartic-necklace", {"d": d, "p": p, "split": [first, second]}, g)


def quartic_necklace(d: int = 4, color_split=((1, 3), (2, 4))) -> BubbleSpec:
    return necklace_bubble(d, 2, color_split)


# -- melonicity ------------------------------------------------------------


def _palette(g: ColoredGraph) -> list[int]:
    return list(g.palette)


def _dipoles(adj, alive: set[int], palette: list[int]) -> list[tuple[int, int, int]]:
    """(white, black, missing color) for every (D-1)-dipole."""
    found = []
    for v in alive:
        row = adj[v]
        counts: dict[int, list[int]] = {}
        for c in palette:
            counts.setdefault(row[c], []).append(c)
        for u, cols in counts.items():
            if len(cols) == len(palette) - 1 and v < u:
                missing = next(c for c in palette if c not in cols)
                found.append((v, u, missing))
    return found


def _remove_dipole(adj, alive, v, u, c):
    adj = [list(row) if row is not None else None for row in adj]
    x, y = adj[v][c], adj[u][c]
    adj[x][c], adj[y][c] = y, x
    adj[v] = adj[u] = None
    return adj, alive - {v, u}


def is_melonic(b) -> bool:
    """True iff repeated (D-1)-dipole removal reaches the 2-vertex graph.

    ``D`` is the number of colors in the graph's palette, so closed graphs
    (colors 0..d) are handled as well as bubbles.
    """
    g = b.graph if isinstance(b, BubbleSpec) else b
    require_valid(g)
    if not g.is_connected():
        raise GraphError("melonicity is defined for connected graphs")
    palette = _palette(g)
    adj = [list(row) for row in g.adjacency]
    alive = set(range(g.n))

    # Greedy removal first, then full backtracking if it gets stuck.
    a, al = adj, alive
    while len(al) > 2:
        dips = _dipoles(a, al, palette)
        if not dips:
            break
        a, al = _remove_dipole(a, al, *dips[0])
    if len(al) == 2:
        return True
    return _melonic_backtrack(adj, frozenset(alive), palette, set())


def _melonic_backtrack(adj, alive, palette, dead) -> bool:
    if len(alive) == 2:
        return True
    if alive in dead:
        return False
    for v, u, c in _dipoles(adj, alive, palette):
        a2, al2 = _remove_dipole(adj, set(alive), v, u, c)
        if _melonic_backtrack(a2, frozenset(al2), palette, dead):
            return True
    dead.add(alive)
    return False


# -- pairings --------------------------------------------------------------


def all_pairings(bubble: ColoredGraph):
    whites, blacks = bubble.whites(), bubble.blacks()
    for perm in itertools.permutations(blacks):
        yield Pairing(bubble, tuple(zip(whites, perm)))


def best_pairing(b, cap: int = DEFAULT_PAIRING_CAP) -> tuple[Pairing, int]:
    """Pairing maximizing the faces of the closure, searched exhaustively.

    Ties go to the closure with the smallest canonical key.
    """
    g = b.graph if isinstance(b, BubbleSpec) else b
    require_valid(g)
    p = g.n // 2
    if p > cap:
        raise GraphError(
            f"bubble has p={p} black vertices, above the exhaustive cap {cap}; "
            "use a heuristic pairing instead"
        )
    best = None
    for pairing in all_pairings(g):
        closed = closure(g, pairing)
        F = faces(closed).total
        rank = (-F, canonical_key(closed), pairing.pairs)
        if best is None or rank < best[0]:
            best = (rank, pairing, F)
    return best[1], best[2]
