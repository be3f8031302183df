"""Combinatorial maps and the bijection between gluings and stuffed Walsh maps.

Darts are ``0..2E-1``; edge ``e`` owns darts ``2e`` and ``2e+1`` and the
edge involution swaps them.  ``sigma`` is the counter-clockwise rotation at
each vertex, faces are the orbits of ``sigma o alpha``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bubble_catalog import BubbleSpec, Pairing, closure
from .colored_graph import (
    BLACK,
    WHITE,
    ColoredGraph,
    GraphError,
    canonical_key,
    isomorphisms,
    require_valid,
)


def alpha(h: int) -> int:
    return h ^ 1


@dataclass(frozen=True)
class CombinatorialMap:
    """Map with possibly isolated vertices and colored, kinded cells.

    ``dart_vertex[h]`` names the vertex of dart ``h``; vertices without darts
    are isolated.  ``colors[e]`` is the color set of edge ``e``.
    """

    sigma: tuple[int, ...]
    dart_vertex: tuple[int, ...]
    kinds: tuple[str, ...]
    colors: tuple[frozenset, ...] = ()
    root: int | None = None

    def __post_init__(self):
        n = len(self.sigma)
        if n % 2:
            raise GraphError("odd number of darts")
        if sorted(self.sigma) != list(range(n)):
            raise GraphError("sigma is not a permutation of the darts")
        if len(self.dart_vertex) != n:
            raise GraphError("dart_vertex must list one vertex per dart")
        if not self.colors:
            object.__setattr__(self, "colors", tuple(frozenset() for _ in range(n // 2)))
        elif len(self.colors) != n // 2:
            raise GraphError("one color set per edge is required")
        object.__setattr__(self, "colors", tuple(frozenset(c) for c in self.colors))
        seen_vertex = set()
        for cyc in self._sigma_cycles():
            vs = {self.dart_vertex[h] for h in cyc}
            if len(vs) != 1:
                raise GraphError("a rotation cycle spans several vertices")
            v = vs.pop()
            if v in seen_vertex:
                raise GraphError(f"vertex {v} carries two rotation cycles")
            if not 0 <= v < len(self.kinds):
                raise GraphError(f"vertex {v} has no kind")
            seen_vertex.add(v)
        if self.root is not None and not 0 <= self.root < n:
            raise GraphError("root dart out of range")

    # -- construction ------------------------------------------------------

    @classmethod
    def from_rotations(
        cls,
        rotations: Sequence[Sequence[int]],
        kinds: Sequence[str] | None = None,
        colors: Sequence[Iterable[int]] = (),
        root: int | None = None,
    ) -> "CombinatorialMap":
        """``rotations[v]`` lists the darts around ``v`` counter-clockwise."""
        n = sum(len(r) for r in rotations)
        sigma = [None] * n
        vertex = [None] * n
        for v, rot in enumerate(rotations):
            for i, h in enumerate(rot):
                if not 0 <= h < n or sigma[h] is not None:
                    raise GraphError(f"dart {h} repeated or out of range")
                sigma[h] = rot[(i + 1) % len(rot)]
                vertex[h] = v
        if kinds is None:
            kinds = ["plain"] * len(rotations)
        return cls(tuple(sigma), tuple(vertex), tuple(kinds), tuple(frozenset(c) for c in colors), root)

    # -- basic counts ------------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.sigma)

    @property
    def n_edges(self) -> int:
        return len(self.sigma) // 2

    @property
    def n_vertices(self) -> int:
        return len(self.kinds)

    def edge_of(self, h: int) -> int:
        return h >> 1

    def _sigma_cycles(self) -> list[list[int]]:
        seen = [False] * len(self.sigma)
        out = []
        for h in range(len(self.sigma)):
            if seen[h]:
                continue
            cyc = []
            x = h
            while not seen[x]:
                seen[x] = True
                cyc.append(x)
                x = self.sigma[x]
            out.append(cyc)
        return out

    def rotation(self, v: int) -> list[int]:
        darts = [h for h in range(self.n_darts) if self.dart_vertex[h] == v]
        if not darts:
            return []
        out = [darts[0]]
        while self.sigma[out[-1]] != out[0]:
            out.append(self.sigma[out[-1]])
        return out

    def degree(self, v: int) -> int:
        return sum(1 for x in self.dart_vertex if x == v)

    def isolated_vertices(self) -> list[int]:
        used = set(self.dart_vertex)
        return [v for v in range(self.n_vertices) if v not in used]

    def face_orbits(self) -> list[list[int]]:
        """Orbits of ``sigma o alpha`` (isolated vertices not included)."""
        seen = [False] * self.n_darts
        out = []
        for h in range(self.n_darts):
            if seen[h]:
                continue
            orbit = []
            x = h
            while not seen[x]:
                seen[x] = True
                orbit.append(x)
                x = self.sigma[alpha(x)]
            out.append(orbit)
        return out

    @property
    def n_faces(self) -> int:
        """Face count; an isolated vertex is a sphere with one face."""
        return len(self.face_orbits()) + len(self.isolated_vertices())

    def components(self) -> list[list[int]]:
        parent = list(range(self.n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in range(self.n_edges):
            a, b = find(self.dart_vertex[2 * e]), find(self.dart_vertex[2 * e + 1])
            if a != b:
                parent[a] = b
        groups: dict[int, list[int]] = {}
        for v in range(self.n_vertices):
            groups.setdefault(find(v), []).append(v)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def genus(self) -> int:
        """Total genus, summed over components."""
        twice = 2 * len(self.components()) - self.euler_characteristic()
        if twice % 2 or twice < 0:
            raise GraphError(f"inconsistent Euler characteristic {self.euler_characteristic()}")
        return twice // 2

    def cyclomatic_number(self) -> int:
        return self.n_edges - self.n_vertices + len(self.components())

    def is_tree(self) -> bool:
        return self.is_connected() and self.n_edges == self.n_vertices - 1

    # -- submaps -----------------------------------------------------------

    def submap(self, keep_edges: Iterable[int]) -> "CombinatorialMap":
        """Keep the given edges and every vertex; edges are renumbered in order."""
        keep = sorted(set(keep_edges))
        new_of = {}
        for i, e in enumerate(keep):
            new_of[2 * e] = 2 * i
            new_of[2 * e + 1] = 2 * i + 1
        sigma = [0] * (2 * len(keep))
        vertex = [0] * (2 * len(keep))
        for h, nh in new_of.items():
            x = self.sigma[h]
            while x not in new_of:
                x = self.sigma[x]
            sigma[nh] = new_of[x]
            vertex[nh] = self.dart_vertex[h]
        root = new_of.get(self.root) if self.root is not None else None
        return CombinatorialMap(
            tuple(sigma), tuple(vertex), self.kinds, tuple(self.colors[e] for e in keep), root
        )

    def color_submap(self, color: int) -> "CombinatorialMap":
        return self.submap(e for e in range(self.n_edges) if color in self.colors[e])

    # -- serialization -----------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "darts": self.n_darts,
            "sigma": list(self.sigma),
            "alpha": [alpha(h) for h in range(self.n_darts)],
            "vertex_of": list(self.dart_vertex),
            "colors": {str(h): sorted(self.colors[h >> 1]) for h in range(self.n_darts)},
            "kinds": {str(v): k for v, k in enumerate(self.kinds)},
            "root": self.root,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CombinatorialMap":
        n = data["darts"]
        if data.get("alpha", [alpha(h) for h in range(n)]) != [alpha(h) for h in range(n)]:
            raise GraphError("alpha must pair darts 2e and 2e+1")
        colors = data.get("colors", {})
        edge_colors = []
        for e in range(n // 2):
            a = sorted(colors.get(str(2 * e), []))
            b = sorted(colors.get(str(2 * e + 1), a))
            if a != b:
                raise GraphError(f"darts of edge {e} disagree on colors")
            edge_colors.append(frozenset(a))
        kinds = data["kinds"]
        return cls(
            tuple(data["sigma"]),
            tuple(data["vertex_of"]),
            tuple(kinds[str(v)] for v in range(len(kinds))),
            tuple(edge_colors),
            data.get("root"),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "CombinatorialMap":
        return cls.from_dict(json.loads(text))


# -- the map of a bubble with a pairing ------------------------------------


def _graph(b) -> ColoredGraph:
    return b.graph if isinstance(b, BubbleSpec) else b


def _color_cycles(g: ColoredGraph, pairs: Sequence[tuple[int, int]], color: int) -> list[list[int]]:
    """Cycles of the pairs along ``color``: pair r -> pair of the black neighbour of w_r.

    Pairs joined to themselves by ``color`` are skipped (internal color).
    """
    pair_of = {}
    for r, (w, b) in enumerate(pairs):
        pair_of[w] = pair_of[b] = r
    adj = g.adjacency
    seen = set()
    out = []
    for r, (w, _) in enumerate(pairs):
        if r in seen or pair_of[adj[w][color]] == r:
            continue
        cyc = []
        x = r
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = pair_of[adj[pairs[x][0]][color]]
        out.append(cyc)
    return out


@dataclass(frozen=True)
class StuffedWalshMap:
    """A stuffed Walsh map plus the bookkeeping tying it to its colored graph.

    Vertex kinds are ``blue``, ``box:<color>`` and ``black``.
    ``pairs[r]`` is the (white, black) pair of the source graph drawn as
    blue vertex ``blue[r]``; ``black_cycles[i]`` lists the pairs met by
    black vertex ``black[i]`` in rotation order.
    """

    d: int
    map: CombinatorialMap
    pairs: tuple[tuple[int, int], ...]
    pair_copy: tuple[int, ...]
    blue: tuple[int, ...]
    black: tuple[int, ...]
    black_cycles: tuple[tuple[int, ...], ...]
    ambiguous_copies: tuple[int, ...] = ()

    @property
    def copies(self) -> int:
        return len(set(self.pair_copy))

    def face_count(self, color: int) -> int:
        """Faces of the submap keeping edges whose color set contains ``color``.

        Isolated black vertices count as one face each (a color-0 cycle whose
        pairs all hold ``color`` internally).  Isolated blue vertices carry
        no face.
        """
        sub = self.map.color_submap(color)
        isolated_black = sum(1 for v in sub.isolated_vertices() if sub.kinds[v] == "black")
        return len(sub.face_orbits()) + isolated_black

    def census(self) -> tuple[int, ...]:
        return tuple(self.face_count(c) for c in range(1, self.d + 1))

    @property
    def total_faces(self) -> int:
        return sum(self.census())

    def to_dict(self) -> dict:
        out = self.map.to_dict()
        out["pairs"] = [list(p) for p in self.pairs]
        out["ambiguous_copies"] = list(self.ambiguous_copies)
        return out


class _MapBuilder:
    def __init__(self):
        self.kinds: list[str] = []
        self.rot: list[list[int]] = []
        self.colors: list[frozenset] = []

    def vertex(self, kind: str) -> int:
        self.kinds.append(kind)
        self.rot.append([])
        return len(self.kinds) - 1

    def edge(self, u: int, v: int, colors) -> tuple[int, int]:
        e = len(self.colors)
        self.colors.append(frozenset(colors))
        return 2 * e, 2 * e + 1

    def build(self, root=None) -> CombinatorialMap:
        return CombinatorialMap.from_rotations(self.rot, self.kinds, self.colors, root)


def _add_bubble_part(mb: _MapBuilder, g: ColoredGraph, pairs, pair_ids, blue_ids):
    """Box vertices of one copy; returns per-blue lists of (color, dart)."""
    local = [(w, b) for w, b in (pairs[r] for r in pair_ids)]
    at_blue: dict[int, list[tuple[int, int]]] = {blue_ids[r]: [] for r in pair_ids}
    for c in range(1, g.d + 1):
        for cyc in _color_cycles(g, local, c):
            box = mb.vertex(f"box:{c}")
            for i in cyc:
                blue = blue_ids[pair_ids[i]]
                h_blue, h_box = mb.edge(blue, box, {c})
                mb.rot[box].append(h_box)
                at_blue[blue].append((c, h_blue))
    return at_blue


def bubble_map(bubble, pairing: Pairing) -> CombinatorialMap:
    """The map of a bubble under a pairing: blue vertices and box stars only."""
    g = _graph(bubble)
    require_valid(g)
    mb = _MapBuilder()
    pairs = list(pairing.pairs)
    blue_ids = [mb.vertex("blue") for _ in pairs]
    at_blue = _add_bubble_part(mb, g, pairs, list(range(len(pairs))), blue_ids)
    for blue, darts in at_blue.items():
        mb.rot[blue] = [h for _, h in sorted(darts)]
    return mb.build()


def transport_pairing(bubble: ColoredGraph, pairing: Pairing, copy: ColoredGraph):
    """Pairs of ``copy`` matching ``pairing`` under the first isomorphism.

    Returns ``(pairs, ambiguous)``; ``ambiguous`` is true when another
    isomorphism would transport the pairing differently.
    """
    isos = isomorphisms(bubble, copy)
    if not isos:
        raise GraphError("bubble copy is not isomorphic to the reference bubble")
    images = []
    for phi in isos:
        img = tuple(sorted((phi[w], phi[b]) for w, b in pairing.pairs))
        if img not in images:
            images.append(img)
    return images[0], len(images) > 1


def to_stuffed_map(g: ColoredGraph, bubble, pairing: Pairing) -> StuffedWalshMap:
    """Stuffed Walsh map of a closed gluing of copies of ``bubble``."""
    require_valid(g)
    if not g.is_closed:
        raise GraphError("the bijection needs a closed graph")
    ref = _graph(bubble)
    if pairing.bubble != ref:
        raise GraphError("pairing belongs to a different bubble")
    pairs: list[tuple[int, int]] = []
    pair_copy: list[int] = []
    copy_pairs: list[list[int]] = []
    ambiguous = []
    for ci, comp in enumerate(g.bubbles()):
        sub = g.induced(comp, range(1, g.d + 1))
        local, amb = transport_pairing(ref, pairing, sub)
        if amb:
            ambiguous.append(ci)
        ids = []
        for w, b in local:
            ids.append(len(pairs))
            pairs.append((comp[w], comp[b]))
            pair_copy.append(ci)
        copy_pairs.append(ids)

    mb = _MapBuilder()
    blue_ids = [mb.vertex("blue") for _ in pairs]
    at_blue: dict[int, list[tuple[int, int]]] = {}
    for ids in copy_pairs:
        at_blue.update(_add_bubble_part(mb, g, pairs, ids, blue_ids))

    # Black vertices: cycles of pi_G o tau_0, read on pairs.
    pair_of = {}
    for r, (w, b) in enumerate(pairs):
        pair_of[w] = pair_of[b] = r
    adj = g.adjacency
    seen = set()
    black_ids, black_cycles = [], []
    black_dart = {}
    for r in range(len(pairs)):
        if r in seen:
            continue
        cyc = []
        x = r
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = pair_of[adj[pairs[x][1]][0]]
        v = mb.vertex("black")
        black_ids.append(v)
        black_cycles.append(tuple(cyc))
        for x in cyc:
            box_colors = {c for c, _ in at_blue[blue_ids[x]]}
            h_blue, h_black = mb.edge(blue_ids[x], v, box_colors)
            mb.rot[v].append(h_black)
            black_dart[x] = h_blue
    for r, blue in enumerate(blue_ids):
        mb.rot[blue] = [black_dart[r]] + [h for _, h in sorted(at_blue[blue])]
    return StuffedWalshMap(
        g.d,
        mb.build(),
        tuple(pairs),
        tuple(pair_copy),
        tuple(blue_ids),
        tuple(black_ids),
        tuple(black_cycles),
        tuple(ambiguous),
    )


def from_stuffed_map(w, bubble, pairing: Pairing) -> ColoredGraph:
    """Rebuild the colored graph from the map structure alone.

    Each blue vertex becomes a white/black pair (white ``2r``, black
    ``2r+1``); box rotations give the colored edges between pairs, missing
    colors are internal to a pair, black rotations give the color-0 edges.
    """
    m = w.map if isinstance(w, StuffedWalshMap) else w
    ref = _graph(bubble)
    d = ref.d
    blues = [v for v, k in enumerate(m.kinds) if k == "blue"]
    index = {v: r for r, v in enumerate(blues)}
    other = {}
    for e in range(m.n_edges):
        other[2 * e] = m.dart_vertex[2 * e + 1]
        other[2 * e + 1] = m.dart_vertex[2 * e]

    edges = []
    box_colors: dict[int, set[int]] = {v: set() for v in blues}
    for v, kind in enumerate(m.kinds):
        if not kind.startswith("box:"):
            continue
        c = int(kind[4:])
        ring = [other[h] for h in m.rotation(v)]
        if len(ring) < 2 or any(m.kinds[u] != "blue" for u in ring):
            raise GraphError(f"box vertex {v} must join at least two blue vertices")
        for h in m.rotation(v):
            if m.colors[h >> 1] != {c}:
                raise GraphError(f"box vertex {v} has an edge not colored {{{c}}}")
        for i, u in enumerate(ring):
            nxt = ring[(i + 1) % len(ring)]
            if c in box_colors[u]:
                raise GraphError(f"blue vertex {u} meets two boxes of color {c}")
            box_colors[u].add(c)
            edges.append((c, 2 * index[u], 2 * index[nxt] + 1))
    black_edge = {}
    for v, kind in enumerate(m.kinds):
        if kind != "black":
            continue
        ring = [other[h] for h in m.rotation(v)]
        for h in m.rotation(v):
            u = other[h]
            if m.kinds[u] != "blue" or u in black_edge:
                raise GraphError(f"black vertex {v} must meet distinct blue vertices once each")
            black_edge[u] = m.colors[h >> 1]
        for i, u in enumerate(ring):
            nxt = ring[(i + 1) % len(ring)]
            edges.append((0, 2 * index[nxt], 2 * index[u] + 1))
    for u in blues:
        if u not in black_edge:
            raise GraphError(f"blue vertex {u} has no black vertex")
        if black_edge[u] != box_colors[u]:
            raise GraphError(f"blue vertex {u}: black edge colors differ from its box colors")
        for c in range(1, d + 1):
            if c not in box_colors[u]:
                edges.append((c, 2 * index[u], 2 * index[u] + 1))
    g = ColoredGraph.from_edges(d, [WHITE, BLACK] * len(blues), edges, has_color_zero=True)
    require_valid(g)

    # Every copy must be the reference bubble with the pairing carried over.
    ref_pairs = sorted(pairing.pairs)
    for comp in g.bubbles():
        sub = g.induced(comp, range(1, d + 1))
        local_pairs = sorted(
            (comp.index(2 * r), comp.index(2 * r + 1)) for r in range(len(blues)) if 2 * r in comp
        )
        ok = any(
            sorted((phi[a], phi[b]) for a, b in ref_pairs) == local_pairs
            for phi in isomorphisms(ref, sub)
        )
        if not ok:
            raise GraphError("a copy does not match the reference bubble and pairing")
    return g


def pairing_closure_map(bubble, pairing: Pairing) -> StuffedWalshMap:
    """The map of the closure: one copy, every blue vertex on its own black vertex."""
    g = _graph(bubble)
    return to_stuffed_map(closure(g, pairing), g, pairing)


# -- projected maps and tree gluings ---------------------------------------


def projected_map(w: StuffedWalshMap) -> CombinatorialMap:
    """Collapse each copy of the bubble map to one plain vertex.

    Only blue-black edges survive.  Around a collapsed vertex they are
    ordered by pair index; black rotations are kept.
    """
    m = w.map
    copy_of_blue = {w.blue[r]: w.pair_copy[r] for r in range(len(w.pairs))}
    copies = sorted(set(w.pair_copy))
    plain = {c: i for i, c in enumerate(copies)}
    black_index = {v: len(copies) + i for i, v in enumerate(w.black)}
    kept = [e for e in range(m.n_edges) if {m.kinds[m.dart_vertex[2 * e]], m.kinds[m.dart_vertex[2 * e + 1]]} == {"blue", "black"}]
    new_e = {e: i for i, e in enumerate(kept)}
    rotations: list[list[int]] = [[] for _ in range(len(copies) + len(w.black))]
    for r, blue in enumerate(w.blue):
        for h in m.rotation(blue):
            if (h >> 1) in new_e:
                rotations[plain[copy_of_blue[blue]]].append(2 * new_e[h >> 1] + (h & 1))
    for v in w.black:
        rotations[black_index[v]] = [2 * new_e[h >> 1] + (h & 1) for h in m.rotation(v)]
    kinds = ["plain"] * len(copies) + ["black"] * len(w.black)
    return CombinatorialMap.from_rotations(rotations, kinds, [m.colors[e] for e in kept])


def tree_face_count(bubble_faces: int, d: int, copies: int) -> int:
    """Faces of a stuffed map whose projected map is a tree.

    ``bubble_faces`` is the face count of the pairing closure of the bubble.
    """
    return (bubble_faces - d) * copies + d


def join_gluing(bubble, pairing: Pairing, copies: int, joins: Sequence[tuple[tuple[int, int], tuple[int, int]]]) -> ColoredGraph:
    """Closed gluing built from ``copies`` pairing closures by black-vertex surgery.

    Each join ``((i, r), (j, s))`` swaps the color-0 partners of the black
    vertices of pair ``r`` in copy ``i`` and pair ``s`` in copy ``j``.  When
    the two pairs sit on different black vertices of the stuffed map this
    merges those black vertices.
    """
    g = _graph(bubble)
    pairs = list(pairing.pairs)
    n = g.n
    zero = {}
    for ci in range(copies):
        for w, b in pairs:
            zero[ci * n + b] = ci * n + w
    for (i, r), (j, s) in joins:
        bi, bj = i * n + pairs[r][1], j * n + pairs[s][1]
        zero[bi], zero[bj] = zero[bj], zero[bi]
    edges = []
    for ci in range(copies):
        edges += [(c, ci * n + a, ci * n + b) for c, a, b in g.edges]
    edges += [(0, wv, bv) for bv, wv in zero.items()]
    out = ColoredGraph.from_edges(g.d, list(g.shades) * copies, edges, has_color_zero=True)
    require_valid(out)
    return out


def tree_gluing(bubble, pairing: Pairing, copies: int, parents: Sequence[int] | None = None) -> ColoredGraph:
    """Gluing whose projected map is a tree.

    Copy ``i >= 1`` hangs from copy ``parents[i-1]`` (default: a path) by
    merging its pair 0 into the black vertex of pair ``i mod p`` of the
    parent.
    """
    g = _graph(bubble)
    p = g.n // 2
    if parents is None:
        parents = list(range(copies - 1))
    if len(parents) != copies - 1 or any(not 0 <= q < i + 1 for i, q in enumerate(parents)):
        raise GraphError("parents[i-1] must name an earlier copy for every i >= 1")
    joins = [((parents[i - 1], i % p), (i, 0)) for i in range(1, copies)]
    return join_gluing(g, pairing, copies, joins)


# -- d = 2: contracting bubbles to vertices --------------------------------


def contracted_map(g: ColoredGraph) -> CombinatorialMap:
    """For d=2: bubbles become vertices, color-0 edges become edges.

    The rotation at a bubble follows its cycle (white -> color 2 -> black ->
    color 1 -> white); faces then match the (0,1) and (0,2) faces.
    """
    if g.d != 2:
        raise GraphError("bubble contraction to a map is defined for d=2")
    require_valid(g)
    if not g.is_closed:
        raise GraphError("need a closed graph")
    adj = g.adjacency
    edge_of = {}
    for e, (w, b) in enumerate(sorted(g.color_zero_edges)):
        edge_of[w] = 2 * e
        edge_of[b] = 2 * e + 1
    rotations = []
    for bub in g.bubbles():
        start = min(bub)
        rot = []
        v = start
        while True:
            rot.append(edge_of[v])
            v = adj[v][2] if g.shades[v] == WHITE else adj[v][1]
            if v == start:
                break
        rotations.append(rot)
    return CombinatorialMap.from_rotations(rotations)
