"""Edge-colored bipartite regular graphs.

A :class:`ColoredGraph` carries colors ``1..d`` (a bubble) and optionally the
gluing color ``0``.  A vertex without an incident color-0 edge in a graph that
uses color 0 is a *free* vertex; a graph with free vertices is *open*, one
without is *closed*.

Vertex ids are dense integers ``0..n-1``.  Adjacency is stored per vertex as
a fixed tuple indexed by color, so following an edge of a given color is a
single lookup.
"""

from __future__ import annotations

import hashlib
import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

WHITE = "white"
BLACK = "black"
SHADES = (WHITE, BLACK)


class GraphError(ValueError):
    """Raised when an operation receives a graph it cannot handle."""


@dataclass(frozen=True)
class ColoredGraph:
    d: int
    shades: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    has_color_zero: bool = False

    @classmethod
    def from_edges(
        cls,
        d: int,
        shades: Sequence[str],
        edges: Iterable[Sequence[int]],
        has_color_zero: bool | None = None,
    ) -> "ColoredGraph":
        """Build a graph from ``(color, white, black)`` triples."""
        edges = tuple(sorted((int(c), int(w), int(b)) for c, w, b in edges))
        if has_color_zero is None:
            has_color_zero = any(c == 0 for c, _, _ in edges)
        return cls(int(d), tuple(shades), edges, bool(has_color_zero))

    @property
    def n(self) -> int:
        return len(self.shades)

    @property
    def palette(self) -> range:
        return range(0 if self.has_color_zero else 1, self.d + 1)

    @cached_property
    def adjacency(self) -> tuple[tuple[int | None, ...], ...]:
        # On an invalid graph the first edge of a repeated color wins;
        # validate() reports the conflict.
        adj = [[None] * (self.d + 1) for _ in range(self.n)]
        for c, w, b in self.edges:
            if not (0 <= c <= self.d and 0 <= w < self.n and 0 <= b < self.n):
                continue
            if adj[w][c] is None:
                adj[w][c] = b
            if adj[b][c] is None:
                adj[b][c] = w
        return tuple(tuple(row) for row in adj)

    def neighbor(self, v: int, color: int) -> int | None:
        return self.adjacency[v][color]

    def whites(self) -> list[int]:
        return [v for v, s in enumerate(self.shades) if s == WHITE]

    def blacks(self) -> list[int]:
        return [v for v, s in enumerate(self.shades) if s == BLACK]

    def free_vertices(self) -> list[int]:
        if not self.has_color_zero:
            return list(range(self.n))
        return [v for v in range(self.n) if self.adjacency[v][0] is None]

    @property
    def is_closed(self) -> bool:
        return self.has_color_zero and not self.free_vertices()

    @property
    def color_zero_edges(self) -> list[tuple[int, int]]:
        return [(w, b) for c, w, b in self.edges if c == 0]

    def components(self, colors: Iterable[int] | None = None) -> list[list[int]]:
        """Connected components using only edges with the given colors."""
        colors = list(self.palette if colors is None else colors)
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            seen[start] = True
            comp = [start]
            stack = [start]
            while stack:
                v = stack.pop()
                for c in colors:
                    u = self.adjacency[v][c]
                    if u is not None and not seen[u]:
                        seen[u] = True
                        comp.append(u)
                        stack.append(u)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.components()) == 1

    def bubbles(self) -> list[list[int]]:
        """Maximal connected subgraphs with colors ``1..d``."""
        return self.components(range(1, self.d + 1))

    def induced(self, vertices: Sequence[int], colors: Iterable[int] | None = None) -> "ColoredGraph":
        """Subgraph on ``vertices`` (relabelled in the given order)."""
        colors = set(self.palette if colors is None else colors)
        index = {v: i for i, v in enumerate(vertices)}
        edges = [
            (c, index[w], index[b])
            for c, w, b in self.edges
            if c in colors and w in index and b in index
        ]
        return ColoredGraph.from_edges(
            self.d,
            [self.shades[v] for v in vertices],
            edges,
            has_color_zero=self.has_color_zero and 0 in colors,
        )

    def without_color_zero(self) -> "ColoredGraph":
        return ColoredGraph.from_edges(
            self.d, self.shades, [e for e in self.edges if e[0] != 0], has_color_zero=False
        )

    def with_edges(self, extra: Iterable[Sequence[int]]) -> "ColoredGraph":
        extra = list(extra)
        return ColoredGraph.from_edges(
            self.d,
            self.shades,
            list(self.edges) + extra,
            has_color_zero=self.has_color_zero or any(e[0] == 0 for e in extra),
        )

    # -- serialization -------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "vertices": [{"id": v, "shade": s} for v, s in enumerate(self.shades)],
            "edges": [{"color": c, "white": w, "black": b} for c, w, b in self.edges],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ColoredGraph":
        try:
            vertices = sorted(data["vertices"], key=lambda v: int(v["id"]))
            ids = [int(v["id"]) for v in vertices]
            if ids != list(range(len(ids))):
                raise GraphError("vertex ids must be dense 0..n-1")
            shades = [v["shade"] for v in vertices]
            edges = [(e["color"], e["white"], e["black"]) for e in data["edges"]]
            return cls.from_edges(data["d"], shades, edges)
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "ColoredGraph":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise GraphError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)


def disjoint_union(graphs: Sequence[ColoredGraph]) -> tuple[ColoredGraph, list[int]]:
    """Disjoint union; also returns the id offset of each input graph."""
    if not graphs:
        raise GraphError("empty union")
    d = graphs[0].d
    if any(g.d != d for g in graphs):
        raise GraphError("all graphs must share the same d")
    shades: list[str] = []
    edges = []
    offsets = []
    for g in graphs:
        off = len(shades)
        offsets.append(off)
        shades.extend(g.shades)
        edges.extend((c, w + off, b + off) for c, w, b in g.edges)
    return (
        ColoredGraph.from_edges(d, shades, edges, any(g.has_color_zero for g in graphs)),
        offsets,
    )


# -- validation ------------------------------------------------------------


@dataclass
class ValidationReport:
    ok: bool
    kind: str
    problems: list[str] = field(default_factory=list)
    connected: bool = True

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "kind": self.kind,
            "connected": self.connected,
            "problems": list(self.problems),
        }


def validate(g: ColoredGraph) -> ValidationReport:
    """Check bipartiteness, proper coloring and regularity.

    Never raises; the returned report lists every violated invariant.
    """
    problems = []
    if g.d < 2:
        problems.append(f"dimension d={g.d} must be at least 2")
    for v, s in enumerate(g.shades):
        if s not in SHADES:
            problems.append(f"vertex {v} has unknown shade {s!r}")
    seen: dict[tuple[int, int], int] = {}
    for c, w, b in g.edges:
        if not 0 <= c <= g.d:
            problems.append(f"edge color {c} outside 0..{g.d}")
            continue
        if c == 0 and not g.has_color_zero:
            problems.append("color-0 edge in a graph without color 0")
        if not (0 <= w < g.n and 0 <= b < g.n):
            problems.append(f"edge ({c}, {w}, {b}) references a missing vertex")
            continue
        if g.shades[w] != WHITE:
            problems.append(f"edge of color {c}: endpoint {w} listed as white is {g.shades[w]}")
        if g.shades[b] != BLACK:
            problems.append(f"edge of color {c}: endpoint {b} listed as black is {g.shades[b]}")
        for v in (w, b):
            if (v, c) in seen:
                problems.append(f"vertex {v} has more than one edge of color {c}")
            seen[(v, c)] = 1
    for v in range(g.n):
        for c in range(1, g.d + 1):
            if (v, c) not in seen:
                problems.append(f"vertex {v} missing color {c}")
    free = [v for v in range(g.n) if (v, 0) not in seen]
    if not g.has_color_zero:
        kind = "bubble"
    elif free:
        kind = "open"
    else:
        kind = "closed"
    comps = g.components() if g.n else []
    for comp in comps:
        whites = sum(1 for v in comp if g.shades[v] == WHITE)
        if 2 * whites != len(comp):
            problems.append(f"component containing vertex {comp[0]} is unbalanced")
    if kind == "open":
        nw = sum(1 for v in free if g.shades[v] == WHITE)
        if 2 * nw != len(free):
            problems.append("free vertices are unbalanced between shades")
    if g.n == 0:
        problems.append("graph has no vertices")
    return ValidationReport(not problems, kind, problems, connected=len(comps) == 1)


def require_valid(g: ColoredGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise GraphError("invalid graph: " + "; ".join(report.problems))


# -- faces -----------------------------------------------------------------


@dataclass(frozen=True)
class FaceCensus:
    d: int
    per_color: tuple[int, ...]
    open_paths: tuple[tuple[int, int, int], ...] = ()

    @property
    def total(self) -> int:
        return sum(self.per_color)

    def __getitem__(self, color: int) -> int:
        return self.per_color[color - 1]

    def to_dict(self) -> dict:
        out = {f"F_0{c}": n for c, n in enumerate(self.per_color, start=1)}
        out["F"] = self.total
        out["open_paths"] = [list(p) for p in self.open_paths]
        return out


def faces(g: ColoredGraph) -> FaceCensus:
    """Count the cycles alternating colors 0 and c, for each c.

    Open alternating paths between free vertices are returned separately as
    ``(c, white, black)`` and never counted as faces.
    """
    if not g.has_color_zero and any(c == 0 for c, _, _ in g.edges):
        raise GraphError("graph has color-0 edges but has_color_zero is false")
    adj = g.adjacency
    whites = g.whites()
    per_color = []
    paths = []
    for c in range(1, g.d + 1):
        seen = set()
        for w in whites:
            if adj[w][0] is not None:
                continue
            seen.add(w)
            b = adj[w][c]
            while adj[b][0] is not None:
                w2 = adj[b][0]
                seen.add(w2)
                b = adj[w2][c]
            paths.append((c, w, b))
        count = 0
        for w in whites:
            if w in seen:
                continue
            count += 1
            x = w
            while True:
                seen.add(x)
                x = adj[adj[x][c]][0]
                if x == w:
                    break
        per_color.append(count)
    return FaceCensus(g.d, tuple(per_color), tuple(paths))


def gurau_degree(g: ColoredGraph, bubble_partition: Sequence[Sequence[int]] | None = None) -> int:
    """Gurau's degree of a closed connected graph.

    ``d - sum_c F_0c + (d-1) (E - b)`` where ``E`` counts color-0 edges and
    ``b`` the bubbles.
    """
    if not g.is_closed:
        raise GraphError("Gurau's degree needs a closed graph")
    if not g.is_connected():
        raise GraphError("Gurau's degree needs a connected graph")
    b = len(bubble_partition) if bubble_partition is not None else len(g.bubbles())
    census = faces(g)
    return g.d - census.total + (g.d - 1) * (len(g.color_zero_edges) - b)


@dataclass(frozen=True)
class GraphPower:
    F: int
    E: int
    b: int
    s: tuple[Fraction, ...]
    delta: Fraction

    def to_dict(self) -> dict:
        return {
            "F": self.F,
            "E": self.E,
            "b": self.b,
            "s": [str(x) for x in self.s],
            "delta": str(self.delta),
        }


def graph_power(g: ColoredGraph, s) -> GraphPower:
    """Exponent of N carried by ``g``: ``F - (d-1) E + sum_i s_i``.

    ``s`` is either one enhancement shared by every bubble or a sequence
    aligned with :meth:`ColoredGraph.bubbles`.
    """
    bubbles = g.bubbles()
    if isinstance(s, (int, Fraction, str)):
        per = tuple(Fraction(s) for _ in bubbles)
    else:
        per = tuple(Fraction(x) for x in s)
        if len(per) != len(bubbles):
            raise GraphError(f"expected {len(bubbles)} enhancements, got {len(per)}")
    F = faces(g).total
    E = len(g.color_zero_edges)
    delta = F - (g.d - 1) * E + sum(per, Fraction(0))
    return GraphPower(F, E, len(bubbles), per, delta)


def boundary_bubble(h: ColoredGraph) -> ColoredGraph:
    """The bubble induced on the free vertices of ``h`` by its open paths.

    Free vertices keep their relative order and shade.
    """
    free = h.free_vertices()
    if not free:
        raise GraphError("boundary bubble needs free vertices; graph is closed")
    index = {v: i for i, v in enumerate(free)}
    census = faces(h)
    edges = [(c, index[w], index[b]) for c, w, b in census.open_paths]
    return ColoredGraph.from_edges(h.d, [h.shades[v] for v in free], edges, has_color_zero=False)


# -- canonical form --------------------------------------------------------


def _encode_from(g: ColoredGraph, start: int):
    """Relabel a component by breadth-first search from ``start``.

    Colors are explored in increasing order; since every vertex has at most
    one edge of each color, the labelling is determined by the start vertex.
    """
    adj = g.adjacency
    label = {start: 0}
    order = [start]
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for u in adj[v]:
            if u is not None and u not in label:
                label[u] = len(order)
                order.append(u)
                queue.append(u)
    code = tuple(
        (0 if g.shades[v] == WHITE else 1,) + tuple(-1 if u is None else label[u] for u in adj[v])
        for v in order
    )
    return code, order


def canonical_key(g: ColoredGraph) -> tuple:
    """Isomorphism invariant key (color- and shade-preserving isomorphisms)."""
    comp_keys = []
    for comp in g.components():
        comp_keys.append(min(_encode_from(g, v)[0] for v in comp))
    return (g.d, g.has_color_zero, tuple(sorted(comp_keys)))


canonical_form = canonical_key


def key_digest(key: tuple) -> str:
    return hashlib.sha1(repr(key).encode()).hexdigest()[:16]


def canonical_relabel(g: ColoredGraph) -> ColoredGraph:
    """Isomorphic copy of ``g`` in canonical vertex order."""
    pieces = []
    for comp in g.components():
        code, order = min(_encode_from(g, v) for v in comp)
        pieces.append((code, order))
    pieces.sort()
    order = [v for _, o in pieces for v in o]
    return g.induced(order, g.palette)


def automorphism_count(g: ColoredGraph) -> int:
    """Order of the automorphism group of a connected graph."""
    if not g.is_connected():
        raise GraphError("automorphism_count needs a connected graph")
    codes = [_encode_from(g, v)[0] for v in range(g.n)]
    best = min(codes)
    return sum(1 for c in codes if c == best)


def isomorphisms(a: ColoredGraph, b: ColoredGraph) -> list[list[int]]:
    """All isomorphisms ``a -> b`` of connected graphs, as vertex maps.

    Sorted lexicographically, so the first entry is a deterministic choice.
    """
    if a.d != b.d or a.n != b.n:
        return []
    if not a.is_connected() or not b.is_connected():
        raise GraphError("isomorphisms() needs connected graphs")
    code_a, order_a = _encode_from(a, 0)
    found = []
    for v in range(b.n):
        if b.shades[v] != a.shades[0]:
            continue
        code_b, order_b = _encode_from(b, v)
        if code_b == code_a:
            phi = [0] * a.n
            for x, y in zip(order_a, order_b):
                phi[x] = y
            found.append(phi)
    return sorted(found)
