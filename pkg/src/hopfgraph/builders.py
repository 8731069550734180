"""Deterministic constructors for the graphs used throughout the package."""
from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .graph import Graph, GraphError, Simplex, cliques

# Antipodal quotient of the icosahedron: 6 vertices, 15 edges, 10 triangles.
HEMI_ICOSAHEDRON: tuple[Simplex, ...] = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
)


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(range(n), [(i, (i + 1) % n) for i in range(n)])


def wheel(n: int) -> Graph:
    """Cycle ``1..n`` plus the center ``0``."""
    if n < 4:
        raise GraphError(f"wheel needs n >= 4, got {n}")
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    spokes = [(0, i) for i in range(1, n + 1)]
    return Graph.from_edges(range(n + 1), rim + spokes)


def cross_polytope(d: int) -> Graph:
    """1-skeleton of the d-dimensional cross-polytope; ``2i`` and ``2i+1`` are antipodes."""
    if d < 1:
        raise GraphError(f"cross_polytope needs d >= 1, got {d}")
    n = 2 * d
    return Graph.from_edges(range(n), [(u, v) for u, v in combinations(range(n), 2) if u // 2 != v // 2])


def octahedron() -> Graph:
    return cross_polytope(3)


def icosahedron() -> Graph:
    # 0 top, 1..5 upper ring, 6..10 lower ring, 11 bottom
    edges = []
    for i in range(5):
        up, up_next = 1 + i, 1 + (i + 1) % 5
        lo, lo_next = 6 + i, 6 + (i + 1) % 5
        edges += [(0, up), (up, up_next), (lo, lo_next), (11, lo), (up, lo), (up, lo_next)]
    return Graph.from_edges(range(12), edges)


def complete(n: int) -> Graph:
    return Graph.from_edges(range(n), combinations(range(n), 2))


def _simplex_label(G: Graph, s: Simplex) -> str:
    return "{" + ",".join(str(G.labels[v]) for v in s) + "}"


def order_complex(simplices: Sequence[Simplex], labels: Sequence[object] | None = None) -> Graph:
    """Graph on ``simplices`` joining strictly nested pairs.

    ``simplices`` must be closed under taking faces for the result to be the
    Barycentric refinement of the complex they span.
    """
    index = {s: i for i, s in enumerate(simplices)}
    adj: dict[int, set[int]] = {i: set() for i in range(len(simplices))}
    for s, i in index.items():
        k = len(s)
        for r in range(1, k):
            for face in combinations(s, r):
                j = index.get(face)
                if j is None:
                    raise GraphError(f"face {face} of {s} missing from the complex")
                adj[i].add(j)
                adj[j].add(i)
    lab = None if labels is None else dict(enumerate(labels))
    return Graph(adj, lab)


def closure(facets: Sequence[Simplex]) -> list[Simplex]:
    faces = {tuple(sorted(f)) for s in facets for r in range(1, len(s) + 1) for f in combinations(sorted(s), r)}
    return sorted(faces, key=lambda s: (len(s), s))


def barycentric(G: Graph) -> Graph:
    simplices = cliques(G)
    return order_complex(simplices, [_simplex_label(G, s) for s in simplices])


def kuenneth_product(G: Graph, H: Graph) -> Graph:
    """Graph on pairs (simplex of G, simplex of H) ordered by componentwise inclusion."""
    if not len(G) or not len(H):
        raise GraphError("product factors must be nonempty")
    sg, sh = cliques(G), cliques(H)
    up_g = _supersets(sg)
    up_h = _supersets(sh)
    nh = len(sh)
    adj: dict[int, set[int]] = {i * nh + j: set() for i in range(len(sg)) for j in range(nh)}
    for i in range(len(sg)):
        for j in range(nh):
            p = i * nh + j
            for i2 in up_g[i]:
                for j2 in up_h[j]:
                    q = i2 * nh + j2
                    if q != p:
                        adj[p].add(q)
                        adj[q].add(p)
    labels = {i * nh + j: _simplex_label(G, a) + "x" + _simplex_label(H, b)
              for i, a in enumerate(sg) for j, b in enumerate(sh)}
    return Graph(adj, labels)


def _supersets(simplices: Sequence[Simplex]) -> list[list[int]]:
    """For each simplex, the indices of all simplices containing it (itself included)."""
    index = {s: i for i, s in enumerate(simplices)}
    up: list[list[int]] = [[] for _ in simplices]
    for s, i in index.items():
        for r in range(1, len(s) + 1):
            for face in combinations(s, r):
                up[index[face]].append(i)
    return up


def projective_plane() -> Graph:
    """Barycentric refinement of the 6-vertex hemi-icosahedron (31 vertices, chi = 1)."""
    simplices = closure(HEMI_ICOSAHEDRON)
    return order_complex(simplices, ["{" + ",".join(map(str, s)) + "}" for s in simplices])
