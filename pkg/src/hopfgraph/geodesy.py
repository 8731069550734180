"""Geodesic wheels inside unit spheres and the Crofton pseudo-metric.

A wheel is a center ``x`` together with a chordless cycle ``C`` in the unit
sphere ``S(x)``. It is *geodesic* for an adjacent pair ``a, b`` on ``C`` when
some ``c`` on ``C`` maximises ``d(a, c) + d(b, c)`` over all of ``S(x)`` and
the arcs ``b -> c`` and ``c -> a`` of ``C`` (the ones avoiding the third
point) are shortest paths of ``S(x)``. Distances are hop counts in ``S(x)``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .graph import Graph, GraphError, iter_bits
from .measure import Measure

EXISTENTIAL = "existential"
UNIVERSAL = "universal"
DEFAULT_MAX_WHEELS = 10_000


class WheelError(ValueError):
    pass


@dataclass(frozen=True)
class WheelEmbedding:
    center: int
    boundary: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "boundary", tuple(self.boundary))
        b = self.boundary
        if len(b) < 4:
            raise WheelError(f"wheel boundary needs at least 4 vertices, got {len(b)}")
        if len(set(b)) != len(b) or self.center in b:
            raise WheelError("wheel boundary vertices must be distinct and differ from the center")

    def validate(self, G: Graph) -> None:
        c, b = self.center, self.boundary
        if c not in G.adj:
            raise WheelError(f"not a wheel: unknown center {c!r}")
        for k, v in enumerate(b):
            if v not in G.adj[c]:
                raise WheelError(f"not a wheel: {G.labels.get(v, v)!r} not adjacent to the center")
            w = b[(k + 1) % len(b)]
            if w not in G.adj[v]:
                raise WheelError(f"not a wheel: boundary {G.labels[v]!r}-{G.labels.get(w, w)!r} is not an edge")

    def canonical(self) -> "WheelEmbedding":
        """Same wheel with the boundary rotated/reflected to its lexicographic minimum."""
        b = self.boundary
        cands = []
        for seq in (b, b[::-1]):
            k = seq.index(min(seq))
            cands.append(seq[k:] + seq[:k])
        return WheelEmbedding(self.center, min(cands))

    @property
    def vertices(self) -> tuple[int, ...]:
        return (self.center,) + self.boundary

    def to_json(self, G: Graph) -> dict:
        return {"center": G.labels[self.center], "boundary": [G.labels[v] for v in self.boundary]}


@dataclass
class GrandCircleReport:
    circle: WheelEmbedding
    interpretation: str
    holds: bool
    # (a, b, c, d(a,c)+d(b,c), max over the sphere) for each good pair
    witnesses: list[tuple[int, int, int, int, int]] = field(default_factory=list)

    def to_json(self, G: Graph) -> dict:
        L = G.labels
        return {
            "circle": self.circle.to_json(G),
            "interpretation": self.interpretation,
            "holds": self.holds,
            "witnesses": [{"a": L[a], "b": L[b], "c": L[c], "sum": s, "max": m}
                          for a, b, c, s, m in self.witnesses],
        }


def _bfs(masks: dict[int, int], within: int, src: int) -> dict[int, int]:
    dist = {src: 0}
    seen = frontier = 1 << src
    k = 0
    while frontier:
        k += 1
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= masks[v]
        nxt &= within & ~seen
        for v in iter_bits(nxt):
            dist[v] = k
        seen |= nxt
        frontier = nxt
    return dist


def sphere_distances(G: Graph, x: int) -> dict[int, dict[int, float]]:
    """All-pairs hop distances inside ``S(x)``; ``math.inf`` when unreachable."""
    if x not in G.adj:
        raise GraphError(f"no such vertex {x!r}")
    sphere = G.masks[x]
    verts = list(iter_bits(sphere))
    out: dict[int, dict[int, float]] = {}
    for u in verts:
        d = _bfs(G.masks, sphere, u)
        out[u] = {v: d.get(v, math.inf) for v in verts}
    return out


def _good_pairs(W: WheelEmbedding, dist: dict[int, dict[int, float]]) -> list[tuple[int, int, int, int, int] | None]:
    b = W.boundary
    n = len(b)
    sphere = list(dist)
    out = []
    for i in range(n):
        a, bb = b[i], b[(i + 1) % n]
        best = max(dist[a][c] + dist[bb][c] for c in sphere)
        hit = None
        if best != math.inf:
            for k in range(n):
                if k == i or k == (i + 1) % n:
                    continue
                c = b[k]
                arc_bc = (k - i - 1) % n
                arc_ca = (i - k) % n
                if (dist[bb][c] == arc_bc and dist[c][a] == arc_ca
                        and dist[a][c] + dist[bb][c] == best):
                    hit = (a, bb, c, int(dist[a][c] + dist[bb][c]), int(best))
                    break
        out.append(hit)
    return out


def is_geodesic_wheel(G: Graph, W: WheelEmbedding, mode: str = EXISTENTIAL,
                      dist: dict[int, dict[int, float]] | None = None) -> GrandCircleReport:
    """EXISTENTIAL: some adjacent pair of ``C`` is good. UNIVERSAL: every adjacent pair is."""
    if mode not in (EXISTENTIAL, UNIVERSAL):
        raise ValueError(f"unknown mode {mode!r}")
    W.validate(G)
    if dist is None:
        dist = sphere_distances(G, W.center)
    pairs = _good_pairs(W, dist)
    good = [p for p in pairs if p is not None]
    holds = bool(good) if mode == EXISTENTIAL else len(good) == len(pairs)
    return GrandCircleReport(W, mode, holds, good)


def chordless_cycles(G: Graph, x: int, max_len: int) -> Iterator[tuple[int, ...]]:
    """Chordless cycles of length 4..max_len in ``S(x)``, each once, in DFS order.

    A cycle is emitted starting at its smallest vertex, oriented so the second
    vertex is smaller than the last.
    """
    sphere = G.masks[x]
    masks = {v: G.masks[v] & sphere for v in iter_bits(sphere)}

    def extend(path: list[int], inner: int, s: int) -> Iterator[tuple[int, ...]]:
        # inner: path vertices other than s and the tip
        tip = path[-1]
        for u in iter_bits(masks[tip] & ~((1 << (s + 1)) - 1)):
            if (1 << u) & inner or masks[u] & inner:
                continue
            if masks[u] >> s & 1:
                if len(path) >= 3 and path[1] < u:
                    yield tuple(path) + (u,)
                continue
            if len(path) + 1 < max_len:
                path.append(u)
                yield from extend(path, inner | (1 << tip), s)
                path.pop()

    for s in iter_bits(sphere):
        for v1 in iter_bits(masks[s] & ~((1 << (s + 1)) - 1)):
            yield from extend([s, v1], 0, s)


def enumerate_geodesic_wheels(G: Graph, x: int, max_count: int = DEFAULT_MAX_WHEELS,
                              mode: str = EXISTENTIAL) -> tuple[list[WheelEmbedding], bool]:
    """Geodesic wheels centred at ``x`` and whether the list was truncated."""
    if x not in G.adj:
        raise GraphError(f"no such vertex {x!r}")
    dist = sphere_distances(G, x)
    finite = [d for row in dist.values() for d in row.values() if d != math.inf]
    diam = max(finite, default=0)
    out: list[WheelEmbedding] = []
    for cyc in chordless_cycles(G, x, 2 * int(diam) + 1):
        W = WheelEmbedding(x, cyc)
        if is_geodesic_wheel(G, W, mode, dist).holds:
            if len(out) == max_count:
                return out, True
            out.append(W)
    return out, False


# Crofton pseudo-metric --------------------------------------------------

def crossing_weights(G: Graph, mu: Measure) -> dict[tuple[int, int], Fraction]:
    """Probability that a coloring drawn from ``mu`` changes sign along each edge."""
    mu.validate(G, signed=True)
    w: dict[tuple[int, int], Fraction] = {}
    for u, v in G.edges():
        w[(u, v)] = sum((wt for f, wt in mu.items() if (f[u] > 0) != (f[v] > 0)), Fraction(0))
    return w


def _dijkstra(G: Graph, weight: dict[tuple[int, int], Fraction], src: int) -> dict[int, Fraction]:
    dist: dict[int, Fraction] = {src: Fraction(0)}
    heap = [(Fraction(0), src)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for v in G.adj[u]:
            nd = d + weight[(u, v) if u < v else (v, u)]
            if v not in dist or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def crofton_distance(G: Graph, mu: Measure, a: int, b: int) -> Fraction | float:
    """Infimum over a-b paths of the expected number of sign changes; inf if disconnected."""
    for v in (a, b):
        if v not in G.adj:
            raise GraphError(f"no such vertex {v!r}")
    d = _dijkstra(G, crossing_weights(G, mu), a)
    return d.get(b, math.inf)


def crofton_matrix(G: Graph, mu: Measure) -> dict[int, dict[int, Fraction | float]]:
    w = crossing_weights(G, mu)
    out = {}
    for a in G.vertices:
        d = _dijkstra(G, w, a)
        out[a] = {b: d.get(b, math.inf) for b in G.vertices}
    return out


@dataclass
class Quotient:
    graph: Graph
    classes: dict[int, int]  # vertex of G -> vertex of the quotient
    weights: dict[tuple[int, int], Fraction]  # quotient edge -> lightest crossing weight

    def distance(self, p: int, q: int) -> Fraction | float:
        return _dijkstra(self.graph, self.weights, p).get(q, math.inf)


def kolmogorov_quotient(G: Graph, mu: Measure) -> Quotient:
    """Identify vertices at Crofton distance zero."""
    w = crossing_weights(G, mu)
    parent = {v: v for v in G.vertices}

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for (u, v), p in w.items():
        if p == 0:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[max(ru, rv)] = min(ru, rv)
    roots = sorted({find(v) for v in G.vertices})
    cid = {r: i for i, r in enumerate(roots)}
    classes = {v: cid[find(v)] for v in G.vertices}
    qw: dict[tuple[int, int], Fraction] = {}
    for (u, v), p in w.items():
        cu, cv = classes[u], classes[v]
        if cu == cv:
            continue
        key = (min(cu, cv), max(cu, cv))
        if key not in qw or p < qw[key]:
            qw[key] = p
    labels = {i: "{" + ",".join(str(G.labels[v]) for v in G.vertices if classes[v] == i) + "}"
              for i in range(len(roots))}
    Q = Graph.from_edges(range(len(roots)), qw.keys(), labels)
    return Quotient(Q, classes, qw)
