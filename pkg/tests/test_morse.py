from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hopfgraph.builders import complete, cycle, icosahedron, octahedron, projective_plane, wheel
from hopfgraph.graph import cliques, euler_characteristic, induced_subgraph
from hopfgraph.morse import (Coloring, ColoringError, as_value, divisor_from_field, index_vector,
                             is_locally_injective, max_vertex_field, ph_index, random_coloring,
                             rank_index_vector, symmetric_index)

from oracles import brute_index, graphs, random_graph


def test_local_injectivity():
    C = cycle(4)
    assert is_locally_injective(C, Coloring({0: 0, 1: 1, 2: 0, 3: 1}))
    K = complete(3)
    assert not is_locally_injective(K, Coloring({0: 0, 1: 1, 2: 1}))
    assert is_locally_injective(K, Coloring.from_order([2, 0, 1]))


def test_missing_vertex_is_an_error():
    with pytest.raises(ColoringError, match="undefined"):
        is_locally_injective(cycle(4), Coloring({0: 1, 1: 2}))


def test_local_minimum_has_index_one():
    G = octahedron()
    f = Coloring.from_order(list(G.vertices))
    assert ph_index(G, f, G.vertices[0]) == 1


def test_wheel_center_with_two_descending_arcs():
    W = wheel(6)  # center 0, rim 1..6
    vals = {0: 10, 1: 0, 2: 1, 3: 20, 4: 2, 5: 3, 6: 21}
    assert ph_index(W, Coloring(vals), 0) == -1


def test_edge_tie_is_ambiguous():
    with pytest.raises(ColoringError, match="ambiguous level"):
        ph_index(cycle(4), Coloring({0: 0, 1: 0, 2: 1, 3: 2}), 0)


def test_cycle_index_vector():
    C = cycle(4)
    f = Coloring({0: 0, 1: 1, 2: 2, 3: 3})
    # 0 is the minimum, 3 sees two lower isolated neighbours, 1 and 2 see one
    assert index_vector(C, f) == {0: 1, 1: 0, 2: 0, 3: -1}


def test_wheel_center_minimal():
    W = wheel(5)
    f = Coloring({v: v for v in W.vertices})
    assert index_vector(W, f)[0] == 1


@pytest.mark.parametrize("G", [octahedron(), icosahedron(), projective_plane()])
def test_poincare_hopf_on_standard_graphs(G):
    for seed in range(20):
        f = random_coloring(G, seed)
        assert sum(index_vector(G, f).values()) == euler_characteristic(G)


@settings(max_examples=100, deadline=None)
@given(graphs(max_n=8), st.randoms(use_true_random=False))
def test_index_matches_subset_oracle(G, rnd):
    vals = list(range(len(G)))
    rnd.shuffle(vals)
    f = Coloring(dict(zip(G.vertices, vals)))
    iv = index_vector(G, f)
    for v in G.vertices:
        assert iv[v] == brute_index(G, f.values, v)
    assert sum(iv.values()) == euler_characteristic(G)
    assert rank_index_vector(G, f.values) == [iv[v] for v in G.vertices]


def test_noninjective_but_locally_injective_values():
    C = cycle(4)
    f = Coloring({0: 0, 1: 1, 2: 0, 3: 1})
    assert index_vector(C, f) == {0: 1, 1: -1, 2: 1, 3: -1}


def test_symmetric_index_examples():
    G = octahedron()
    f = Coloring.from_order(list(G.vertices))
    assert symmetric_index(G, f, G.vertices[0]) == 1
    # on the octahedron with 0 < 2 < 1 < 3 < 4 < 5: vertex 2's circle is 0,4,1,5
    f = Coloring({0: 0, 2: 1, 1: 2, 3: 3, 4: 4, 5: 5})
    total = sum(symmetric_index(G, f, v) for v in G.vertices)
    assert total == euler_characteristic(G)


def test_symmetric_index_regular_vertex_is_zero():
    # one descending arc on a circle link: S- and S+ are both paths
    G = icosahedron()
    seen = 0
    for seed in range(30):
        f = random_coloring(G, seed)
        for v in G.vertices:
            lower = induced_subgraph(G, [w for w in G.adj[v] if f[w] < f[v]])
            if 0 < len(lower) < G.degree(v) and lower.is_connected():
                seen += 1
                assert ph_index(G, f, v) == 0 == ph_index(G, f.negated(), v)
                assert symmetric_index(G, f, v) == 0
    assert seen > 0


def test_symmetric_index_at_local_minimum_of_2graph():
    G = icosahedron()
    f = random_coloring(G, 2)
    v = min(G.vertices, key=f.values.__getitem__)
    assert ph_index(G, f, v) == 1 == ph_index(G, f.negated(), v)
    assert symmetric_index(G, f, v) == 1


@pytest.mark.parametrize("G", [octahedron(), icosahedron(), cycle(5)])
def test_symmetric_indices_sum_to_chi_on_even_dimension(G):
    for seed in range(10):
        f = random_coloring(G, seed)
        assert sum(symmetric_index(G, f, v) for v in G.vertices) == euler_characteristic(G)


def test_max_vertex_field_gives_index_vector():
    rng = random.Random(4)
    for _ in range(150):
        G = random_graph(rng.randint(1, 6), rng.random(), rng)
        f = random_coloring(G, rng.randrange(10**6))
        assert divisor_from_field(G, max_vertex_field(G, f)) == index_vector(G, f)


def test_lexicographic_field_on_triangle():
    K = complete(3)
    choice = {x: min(x) for x in cliques(K)}
    assert len(choice) == 7
    # 0 collects (0), (0,1), (0,2), (0,1,2): 1 - 1 - 1 + 1; 1 collects (1), (1,2); 2 only (2)
    assert divisor_from_field(K, choice) == {0: 0, 1: 0, 2: 1}
    largest = {x: max(x) for x in cliques(K)}
    assert divisor_from_field(K, largest) == {0: 1, 1: 0, 2: 0}


def test_any_field_sums_to_chi():
    rng = random.Random(8)
    for _ in range(50):
        G = random_graph(rng.randint(1, 7), rng.random(), rng)
        choice = {x: rng.choice(x) for x in cliques(G)}
        assert sum(divisor_from_field(G, choice).values()) == euler_characteristic(G)


def test_bad_fields():
    K = complete(2)
    with pytest.raises(ColoringError, match="undefined"):
        divisor_from_field(K, {(0,): 0})
    with pytest.raises(ColoringError, match="outside"):
        divisor_from_field(K, {(0,): 1, (1,): 1, (0, 1): 1})


def test_random_coloring_reproducible():
    G = icosahedron()
    assert random_coloring(G, 7) == random_coloring(G, 7)
    assert random_coloring(G, 7) != random_coloring(G, 8)
    assert is_locally_injective(G, random_coloring(G, 3))


def test_random_index_average_on_octahedron():
    G = octahedron()
    n = 10_000
    tot = {v: 0 for v in G.vertices}
    for seed in range(n):
        for v, i in index_vector(G, random_coloring(G, seed)).items():
            tot[v] += i
    for v in G.vertices:
        assert abs(tot[v] / n - 1 / 3) < 0.05


def test_as_value():
    assert as_value("3/6") == Fraction(1, 2)
    assert as_value(4) == 4 and as_value(2.5) == Fraction(5, 2)
    with pytest.raises(ColoringError):
        as_value(True)
    with pytest.raises(ColoringError):
        as_value(None)


def test_coloring_json_roundtrip():
    G = cycle(4)
    f = Coloring({0: Fraction(1, 2), 1: 3, 2: -1, 3: 0})
    assert Coloring.from_json(G, f.to_json(G)) == f
