from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings

from hopfgraph.builders import complete, cycle, icosahedron, octahedron, wheel
from hopfgraph.graph import (Graph, GraphError, cliques, euler_characteristic, fvector,
                             induced_subgraph, unit_sphere)

from oracles import brute_chi, brute_cliques, brute_fvector, graphs, random_graph


def test_fvector_small_examples():
    assert fvector(complete(4)) == (4, 6, 4, 1)
    assert fvector(octahedron()) == (6, 12, 8)
    assert fvector(cycle(4)) == (4, 4)


def test_euler_characteristic_examples():
    assert euler_characteristic(octahedron()) == 2
    assert euler_characteristic(cycle(5)) == 0
    assert euler_characteristic(wheel(6)) == 1


def test_unit_spheres():
    for v in octahedron().vertices:
        S = unit_sphere(octahedron(), v)
        assert len(S) == 4 and all(S.degree(w) == 2 for w in S.vertices)
    ico = icosahedron()
    for v in ico.vertices:
        S = unit_sphere(ico, v)
        assert len(S) == 5 and S.num_edges == 5 and S.is_connected()
    W = wheel(5)
    S = unit_sphere(W, 0)
    assert sorted(S.vertices) == [1, 2, 3, 4, 5] and S.num_edges == 5


def test_induced_subgraph_examples():
    K = complete(4)
    assert induced_subgraph(K, K.vertices) == K
    C = cycle(6)
    H = induced_subgraph(C, [0, 1, 3, 4])
    assert H.num_edges == 2 and not H.is_connected()
    O = octahedron()
    a = O.vertices[0]
    b = next(w for w in O.vertices if w != a and not O.has_edge(a, w))
    P = induced_subgraph(O, [a, b])
    assert len(P) == 2 and P.num_edges == 0


def test_induced_subgraph_unknown_vertex():
    with pytest.raises(GraphError, match="no such vertex"):
        induced_subgraph(cycle(4), [0, 9])


@settings(max_examples=150, deadline=None)
@given(graphs(max_n=8))
def test_chi_matches_subset_oracle(G):
    assert euler_characteristic(G) == brute_chi(G)
    assert fvector(G) == brute_fvector(G)


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=7))
def test_cliques_are_exactly_the_complete_subsets(G):
    got = cliques(G)
    assert sorted(got) == sorted(brute_cliques(G))
    listed = set(got)
    for s in got:
        for k in range(len(s)):
            face = s[:k] + s[k + 1:]
            if face:
                assert face in listed


def test_cliques_kmax():
    assert all(len(s) <= 2 for s in cliques(complete(5), kmax=1))
    assert len(cliques(complete(5), kmax=1)) == 15


def test_graph_rejects_bad_input():
    with pytest.raises(GraphError):
        Graph({0: {0}})
    with pytest.raises(GraphError):
        Graph({0: {1}, 1: set()})
    with pytest.raises(GraphError, match="duplicate edge"):
        Graph.from_json({"vertices": [1, 2], "edges": [[1, 2], [2, 1]]})
    with pytest.raises(GraphError, match="self-loop"):
        Graph.from_json({"vertices": [1], "edges": [[1, 1]]})
    with pytest.raises(GraphError, match="unknown vertex"):
        Graph.from_json({"vertices": [1], "edges": [[1, 2]]})


def test_json_roundtrip_keeps_labels():
    G = Graph.from_json({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]})
    assert G.labels == {0: "a", 1: "b", 2: "c"}
    again = Graph.from_json(json.loads(G.dumps()))
    assert again == G and again.labels == G.labels


def test_random_graphs_chi_deterministic():
    rng = random.Random(5)
    for _ in range(20):
        G = random_graph(9, 0.5, rng)
        assert euler_characteristic(G) == brute_chi(G)
