"""Oracles and strategies shared by the test modules.

The oracles here deliberately avoid the package's own algorithms: faces
come from networkx components, isomorphism from networkx's matcher.
"""

from __future__ import annotations

import networkx as nx
from hypothesis import assume
from hypothesis import strategies as st
from networkx.algorithms.isomorphism import GraphMatcher

from coltri.bubble_catalog import melonic_bubble, necklace_bubble, quartic_melonic, quartic_necklace, two_vertex_bubble
from coltri.colored_graph import ColoredGraph, disjoint_union


def glue_by_permutation(bubble: ColoredGraph, count: int, perm) -> ColoredGraph:
    """Copies of ``bubble`` with color 0 joining the i-th white to the perm[i]-th black."""
    union, _ = disjoint_union([bubble] * count)
    whites, blacks = union.whites(), union.blacks()
    extra = [(0, whites[i], blacks[j]) for i, j in enumerate(perm)]
    return ColoredGraph.from_edges(union.d, union.shades, list(union.edges) + extra, has_color_zero=True)


def relabel(g: ColoredGraph, perm) -> ColoredGraph:
    """Vertex ``v`` becomes ``perm[v]``."""
    shades = [None] * g.n
    for v, s in enumerate(g.shades):
        shades[perm[v]] = s
    edges = [(c, perm[w], perm[b]) for c, w, b in g.edges]
    return ColoredGraph.from_edges(g.d, shades, edges, g.has_color_zero)


def nx_graph(g: ColoredGraph) -> nx.Graph:
    h = nx.Graph()
    for v, s in enumerate(g.shades):
        h.add_node(v, shade=s)
    for c, w, b in g.edges:
        if h.has_edge(w, b):
            h[w][b]["colors"] = h[w][b]["colors"] | {c}
        else:
            h.add_edge(w, b, colors=frozenset({c}))
    return h


def _matcher(a: ColoredGraph, b: ColoredGraph) -> GraphMatcher:
    return GraphMatcher(
        nx_graph(a),
        nx_graph(b),
        node_match=lambda x, y: x["shade"] == y["shade"],
        edge_match=lambda x, y: x["colors"] == y["colors"],
    )


def nx_isomorphic(a: ColoredGraph, b: ColoredGraph) -> bool:
    return a.d == b.d and a.n == b.n and _matcher(a, b).is_isomorphic()


def nx_automorphisms(g: ColoredGraph) -> int:
    return sum(1 for _ in _matcher(g, g).isomorphisms_iter())


def oracle_faces(g: ColoredGraph) -> list[int]:
    """Closed (0c)-faces as cycle components of the two-colored multigraph."""
    out = []
    for c in range(1, g.d + 1):
        h = nx.MultiGraph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from((w, b) for col, w, b in g.edges if col in (0, c))
        out.append(
            sum(1 for comp in nx.connected_components(h) if all(h.degree(v) == 2 for v in comp))
        )
    return out


def oracle_connected(g: ColoredGraph) -> bool:
    h = nx.MultiGraph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from((w, b) for _, w, b in g.edges)
    return nx.is_connected(h)


B1 = quartic_melonic(3, 1).graph
NECKLACE = quartic_necklace().graph
SMALL_BUBBLES = [two_vertex_bubble(3), B1, NECKLACE, two_vertex_bubble(4), quartic_melonic(4, 2).graph]


@st.composite
def melonic_bubbles(draw, d=None, max_insertions=3):
    d = draw(st.sampled_from([3, 4])) if d is None else d
    n_ins = draw(st.integers(0, max_insertions))
    steps = []
    whites = 1
    for _ in range(n_ins):
        steps.append((2 * draw(st.integers(0, whites - 1)), draw(st.integers(1, d))))
        whites += 1
    return melonic_bubble(d, steps).graph


@st.composite
def small_bubbles(draw):
    choice = draw(st.integers(0, 2))
    if choice == 0:
        return draw(melonic_bubbles())
    if choice == 1:
        return necklace_bubble(4, draw(st.integers(1, 3))).graph
    return draw(st.sampled_from(SMALL_BUBBLES))


@st.composite
def gluings(draw, bubble=None, max_vertices=12, connected=True):
    """A random closed gluing of copies of one bubble."""
    b = draw(small_bubbles()) if bubble is None else bubble
    count = draw(st.integers(1, max(1, max_vertices // b.n)))
    half = count * b.n // 2
    perm = draw(st.permutations(range(half)))
    g = glue_by_permutation(b, count, perm)
    if connected:
        assume(oracle_connected(g))
    return b, count, g
