import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation

from coltri.bubble_catalog import Pairing, best_pairing, closure, necklace_bubble, two_vertex_bubble
from coltri.colored_graph import GraphError, canonical_key, faces, gurau_degree
from coltri.gluing_space import enumerate_gluings
from coltri.stuffed_maps import (
    CombinatorialMap,
    alpha,
    bubble_map,
    contracted_map,
    from_stuffed_map,
    join_gluing,
    pairing_closure_map,
    projected_map,
    to_stuffed_map,
    tree_face_count,
    tree_gluing,
)

from helpers import B1, NECKLACE, gluings, oracle_faces

MELON = two_vertex_bubble(3)


@st.composite
def random_maps(draw, max_edges=6):
    E = draw(st.integers(1, max_edges))
    sigma = draw(st.permutations(range(2 * E)))
    return sigma


def map_from_sigma(sigma):
    # vertices are the cycles of sigma
    vertex = [None] * len(sigma)
    v = 0
    for h in range(len(sigma)):
        if vertex[h] is None:
            x = h
            while vertex[x] is None:
                vertex[x] = v
                x = sigma[x]
            v += 1
    return CombinatorialMap(tuple(sigma), tuple(vertex), ("plain",) * v)


@settings(max_examples=100, deadline=None)
@given(random_maps())
def test_map_invariants(sigma):
    m = map_from_sigma(sigma)
    a = Permutation([alpha(h) for h in range(m.n_darts)])
    assert a * a == Permutation(list(range(m.n_darts)))
    assert all(alpha(h) != h for h in range(m.n_darts))
    faces_oracle = len((Permutation(list(sigma)) * a).cyclic_form) + sum(
        1 for h in range(m.n_darts) if (Permutation(list(sigma)) * a)(h) == h
    )
    assert len(m.face_orbits()) == faces_oracle
    assert m.genus() >= 0
    assert (2 * len(m.components()) - m.euler_characteristic()) % 2 == 0
    assert CombinatorialMap.from_json(m.to_json()) == m


def test_map_validation():
    with pytest.raises(GraphError):
        CombinatorialMap((1, 0, 2), (0, 0, 0), ("plain",))
    with pytest.raises(GraphError):
        CombinatorialMap((1, 0), (0, 1), ("plain", "plain"))  # one cycle on two vertices
    with pytest.raises(GraphError):
        CombinatorialMap.from_rotations([[0, 0]])
    bad = map_from_sigma([1, 0]).to_dict()
    bad["alpha"] = [0, 1]
    with pytest.raises(GraphError):
        CombinatorialMap.from_dict(bad)


def test_planar_examples():
    loop = CombinatorialMap.from_rotations([[0, 1]])
    assert loop.n_faces == 2 and loop.genus() == 0 and loop.cyclomatic_number() == 1
    torus = CombinatorialMap.from_rotations([[0, 2, 1, 3]])
    assert torus.n_faces == 1 and torus.genus() == 1
    path = CombinatorialMap.from_rotations([[0], [1, 2], [3]])
    assert path.is_tree() and path.n_faces == 1


def test_bubble_maps():
    m = bubble_map(MELON, Pairing(MELON, ((0, 1),)))
    assert m.kinds == ("blue",) and m.n_edges == 0
    best, _ = best_pairing(B1)
    m = bubble_map(B1, best)
    assert m.kinds.count("blue") == 2
    boxes = [v for v, k in enumerate(m.kinds) if k.startswith("box")]
    assert [m.kinds[v] for v in boxes] == ["box:1"]
    assert m.degree(boxes[0]) == 2
    best, _ = best_pairing(NECKLACE)
    m = bubble_map(NECKLACE, best)
    boxes = [v for v, k in enumerate(m.kinds) if k.startswith("box")]
    assert m.kinds.count("blue") == 2 and len(boxes) == 2
    assert all(m.degree(v) == 2 for v in boxes)


def test_closure_maps():
    best, _ = best_pairing(B1)
    w = pairing_closure_map(B1, best)
    assert w.census() == (1, 2, 2)
    assert len(w.black) == 2 and all(w.map.degree(v) == 1 for v in w.black)
    assert w.census() == faces(closure(B1, best)).per_color
    w = pairing_closure_map(MELON, Pairing(MELON, ((0, 1),)))
    assert w.census() == (1, 1, 1) and len(w.black) == 1
    assert projected_map(pairing_closure_map(B1, best)).is_tree()


@pytest.mark.parametrize("bubble", [B1, NECKLACE, MELON, necklace_bubble(4, 3).graph])
def test_bijection_exhaustive_small(bubble):
    pairing, _ = best_pairing(bubble)
    counts = (1, 2) if bubble.n < 6 else (1,)
    for b in counts:
        for r in enumerate_gluings(bubble, b, keep_graphs=True).records:
            w = to_stuffed_map(r.graph, bubble, pairing)
            assert w.census() == tuple(r.per_color)
            back = from_stuffed_map(w, bubble, pairing)
            assert canonical_key(back) == canonical_key(r.graph)


@settings(max_examples=40, deadline=None)
@given(gluings(max_vertices=10))
def test_bijection_random(data):
    bubble, _, g = data
    pairing, _ = best_pairing(bubble)
    w = to_stuffed_map(g, bubble, pairing)
    assert list(w.census()) == oracle_faces(g)
    assert len(w.blue) == g.n // 2
    # each black vertex is one cycle of color-0 edges read through the pairing
    assert sum(w.map.degree(v) for v in w.black) == len(g.color_zero_edges)
    assert canonical_key(from_stuffed_map(w, bubble, pairing)) == canonical_key(g)
    for c in range(1, g.d + 1):
        assert w.map.color_submap(c).genus() >= 0


def test_bijection_rejects_foreign_bubbles():
    best, _ = best_pairing(B1)
    g = closure(NECKLACE, best_pairing(NECKLACE)[0])
    with pytest.raises(GraphError):
        to_stuffed_map(g, B1, best)


def test_from_map_rejects_malformed():
    best, _ = best_pairing(B1)
    w = pairing_closure_map(B1, best)
    data = w.map.to_dict()
    edge = next(e for e in range(w.map.n_edges) if w.map.colors[e])
    data["colors"][str(2 * edge)] = data["colors"][str(2 * edge + 1)] = [1, 2, 3]
    broken = CombinatorialMap.from_dict(data)
    with pytest.raises(GraphError):
        from_stuffed_map(broken, B1, best)


@pytest.mark.parametrize("bubble", [B1, NECKLACE])
@pytest.mark.parametrize("copies", [1, 2, 3, 4])
def test_tree_face_formula(bubble, copies):
    pairing, F = best_pairing(bubble)
    shapes = [None] if copies < 3 else [None, [0] * (copies - 1)]
    for parents in shapes:
        g = tree_gluing(bubble, pairing, copies, parents)
        w = to_stuffed_map(g, bubble, pairing)
        assert projected_map(w).is_tree()
        assert faces(g).total == w.total_faces == tree_face_count(F, bubble.d, copies)


def test_tree_face_count_values():
    assert tree_face_count(5, 3, 1) == 5
    assert tree_face_count(5, 3, 3) == 9


def test_projected_path_and_cycle():
    best, _ = best_pairing(B1)
    path = projected_map(to_stuffed_map(join_gluing(B1, best, 2, [((0, 0), (1, 0))]), B1, best))
    assert path.is_tree()
    assert sorted(path.degree(v) for v in range(path.n_vertices)) == [1, 1, 2, 2, 2]
    doubled = join_gluing(B1, best, 2, [((0, 0), (1, 0)), ((0, 1), (1, 1))])
    proj = projected_map(to_stuffed_map(doubled, B1, best))
    assert not proj.is_tree() and proj.cyclomatic_number() == 1
    with pytest.raises(GraphError):
        tree_gluing(B1, best, 3, [0, 5])


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 3), st.data())
def test_two_dimensional_degree_is_twice_genus(p, data):
    cycle = necklace_bubble(2, p).graph
    _, _, g = data.draw(gluings(bubble=cycle, max_vertices=10))
    m = contracted_map(g)
    assert m.n_faces == faces(g).total
    assert gurau_degree(g) == 2 * m.genus()
