"""Finite simple graphs and their Whitney (clique) complexes.

Vertices are integer ids. Graphs loaded from JSON get dense ids ``0..n-1``
and keep the original labels for output. Subgraphs keep the ids of their
parent, so a unit sphere can be compared directly with the ambient graph.

Most of the heavy lifting runs on bitmasks: vertex ``v`` is bit ``1 << v``
and ``Graph.masks[v]`` is the neighbourhood of ``v`` as an int.
"""
from __future__ import annotations

import json
from typing import Iterable, Iterator, Mapping

Simplex = tuple[int, ...]


class GraphError(ValueError):
    pass


def iter_bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable finite simple graph.

    ``adj`` maps every vertex to the frozenset of its neighbours. ``labels``
    maps vertex ids to the external ids used in JSON (defaults to the id).
    """

    __slots__ = ("vertices", "adj", "labels", "masks", "vmask", "_cache")

    def __init__(self, adj: Mapping[int, Iterable[int]], labels: Mapping[int, object] | None = None):
        vertices = tuple(sorted(adj))
        norm: dict[int, frozenset[int]] = {}
        for v in vertices:
            if not isinstance(v, int) or v < 0:
                raise GraphError(f"vertex ids must be non-negative ints, got {v!r}")
            nb = frozenset(adj[v])
            if v in nb:
                raise GraphError(f"self-loop at vertex {v}")
            norm[v] = nb
        for v, nb in norm.items():
            for w in nb:
                if w not in norm:
                    raise GraphError(f"edge ({v}, {w}) leaves the vertex set")
                if v not in norm[w]:
                    raise GraphError(f"adjacency not symmetric on ({v}, {w})")
        self.vertices: tuple[int, ...] = vertices
        self.adj: dict[int, frozenset[int]] = norm
        if labels is None:
            self.labels: dict[int, object] = {v: v for v in vertices}
        else:
            self.labels = {v: labels.get(v, v) for v in vertices}
        self.masks: dict[int, int] = {v: to_mask(nb) for v, nb in norm.items()}
        self.vmask: int = to_mask(vertices)
        self._cache: dict = {}

    @classmethod
    def from_edges(cls, vertices: Iterable[int], edges: Iterable[tuple[int, int]],
                   labels: Mapping[int, object] | None = None) -> "Graph":
        adj: dict[int, set[int]] = {v: set() for v in vertices}
        for u, v in edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u not in adj or v not in adj:
                raise GraphError(f"edge ({u}, {v}) uses an unknown vertex")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, labels)

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(tuple((v, tuple(sorted(self.adj[v]))) for v in self.vertices))

    def __repr__(self) -> str:
        return f"Graph(n={len(self.vertices)}, m={self.num_edges})"

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj.values()) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.vertices for v in sorted(self.adj[u]) if u < v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj.get(u, ())

    def relabeled(self) -> "Graph":
        """Copy with dense ids 0..n-1 (labels carried over)."""
        index = {v: i for i, v in enumerate(self.vertices)}
        return Graph({index[v]: [index[w] for w in self.adj[v]] for v in self.vertices},
                     {index[v]: self.labels[v] for v in self.vertices})

    def is_connected(self) -> bool:
        return mask_connected(self.masks, self.vmask)

    # JSON ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [self.labels[v] for v in self.vertices],
            "edges": [[self.labels[u], self.labels[v]] for u, v in self.edges()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "Graph":
        """Load ``{"vertices": [...], "edges": [[u, v], ...]}`` with dense ids."""
        if not isinstance(data, Mapping) or "vertices" not in data or "edges" not in data:
            raise GraphError('graph JSON needs "vertices" and "edges"')
        if not isinstance(data["vertices"], list) or not isinstance(data["edges"], list):
            raise GraphError('"vertices" and "edges" must be lists')
        labels = list(data["vertices"])
        index: dict[object, int] = {}
        for i, lab in enumerate(labels):
            if not isinstance(lab, (str, int)) or isinstance(lab, bool):
                raise GraphError(f"vertex id must be a string or integer, got {lab!r}")
            if lab in index:
                raise GraphError(f"duplicate vertex {lab!r}")
            index[lab] = i
        adj: dict[int, set[int]] = {i: set() for i in range(len(labels))}
        for e in data["edges"]:
            if not isinstance(e, (list, tuple)) or len(e) != 2:
                raise GraphError(f"edge must be a pair, got {e!r}")
            a, b = e
            if a not in index or b not in index:
                raise GraphError(f"edge ({a!r}, {b!r}) uses an unknown vertex")
            u, v = index[a], index[b]
            if u == v:
                raise GraphError(f"self-loop ({a!r}, {b!r})")
            if v in adj[u]:
                raise GraphError(f"duplicate edge ({a!r}, {b!r})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj, dict(enumerate(labels)))

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    def vertex_by_label(self, label: object) -> int:
        for v, lab in self.labels.items():
            if lab == label or str(lab) == str(label):
                return v
        raise GraphError(f"no such vertex {label!r}")


# Bitmask kernels --------------------------------------------------------

def mask_connected(masks: Mapping[int, int], mask: int) -> bool:
    if not mask:
        return True
    low = mask & -mask
    seen = frontier = low
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= mask & ~seen
        seen |= nxt
        frontier = nxt
    return seen == mask


def clique_sum(masks: Mapping[int, int], cand: int) -> int:
    """Euler characteristic of the Whitney complex induced on ``cand``.

    Every clique is generated exactly once from its smallest vertex.
    """
    total = 0
    while cand:
        low = cand & -cand
        cand ^= low
        v = low.bit_length() - 1
        rest = cand & masks[v]
        total += 1 - clique_sum(masks, rest) if rest else 1
    return total


def mask_fvector(masks: Mapping[int, int], cand: int) -> list[int]:
    counts: list[int] = []

    def rec(c: int, depth: int) -> None:
        while c:
            low = c & -c
            c ^= low
            if depth == len(counts):
                counts.append(0)
            counts[depth] += 1
            rest = c & masks[low.bit_length() - 1]
            if rest:
                rec(rest, depth + 1)

    rec(cand, 0)
    return counts


# Public operations ------------------------------------------------------

def cliques(G: Graph, kmax: int | None = None) -> list[Simplex]:
    """All complete subgraphs of ``G`` of dimension ``<= kmax``.

    Sorted by dimension, then lexicographically.
    """
    out: list[Simplex] = []
    masks = G.masks

    def rec(prefix: tuple[int, ...], cand: int) -> None:
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            s = prefix + (v,)
            out.append(s)
            if kmax is None or len(s) <= kmax:
                rest = cand & masks[v]
                if rest:
                    rec(s, rest)

    if kmax is None or kmax >= 0:
        rec((), G.vmask)
    out.sort(key=lambda s: (len(s), s))
    return out


def fvector(G: Graph) -> tuple[int, ...]:
    key = "fvector"
    if key not in G._cache:
        G._cache[key] = tuple(mask_fvector(G.masks, G.vmask))
    return G._cache[key]


def euler_characteristic(G: Graph) -> int:
    return sum((-1) ** k * f for k, f in enumerate(fvector(G)))


def induced_subgraph(G: Graph, S: Iterable[int]) -> Graph:
    S = set(S)
    for v in S:
        if v not in G.adj:
            raise GraphError(f"no such vertex {v!r}")
    return Graph({v: G.adj[v] & S for v in S}, {v: G.labels[v] for v in S})


def unit_sphere(G: Graph, v: int) -> Graph:
    if v not in G.adj:
        raise GraphError(f"no such vertex {v!r}")
    return induced_subgraph(G, G.adj[v])


def subgraph_of_mask(G: Graph, mask: int) -> Graph:
    return induced_subgraph(G, iter_bits(mask))

