"""Slow, obviously-correct reference implementations used by the tests.

None of these share code with the package beyond the Graph container.
"""
from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import gcd
from itertools import combinations, permutations

from hypothesis import strategies as st

from hopfgraph.graph import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return Graph.from_edges(range(n), edges)


@st.composite
def graphs(draw, min_n: int = 1, max_n: int = 8):
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(range(n), [e for e, keep in zip(pairs, mask) if keep])


def is_complete(G: Graph, S) -> bool:
    return all(G.has_edge(u, v) for u, v in combinations(S, 2))


def brute_cliques(G: Graph, within=None) -> list[tuple[int, ...]]:
    verts = sorted(G.vertices if within is None else within)
    out = []
    for k in range(1, len(verts) + 1):
        for S in combinations(verts, k):
            if is_complete(G, S):
                out.append(S)
    return out


def brute_chi(G: Graph, within=None) -> int:
    return sum((-1) ** (len(S) - 1) for S in brute_cliques(G, within))


def brute_fvector(G: Graph) -> tuple[int, ...]:
    counts: dict[int, int] = {}
    for S in brute_cliques(G):
        counts[len(S)] = counts.get(len(S), 0) + 1
    return tuple(counts[k] for k in sorted(counts))


def brute_index(G: Graph, f: dict, v: int) -> int:
    lower = [w for w in G.adj[v] if f[w] < f[v]]
    return 1 - brute_chi(G, lower)


def brute_uniform_curvature(G: Graph) -> dict[int, Fraction]:
    verts = list(G.vertices)
    tot = {v: 0 for v in verts}
    count = 0
    for perm in permutations(range(len(verts))):
        f = dict(zip(verts, perm))
        for v in verts:
            tot[v] += brute_index(G, f, v)
        count += 1
    return {v: Fraction(t, count) for v, t in tot.items()}


def brute_levitt(G: Graph, v: int) -> Fraction:
    # 1 + sum over simplices x of S(v) of (-1)^dim(x+v) / (dim(x+v) + 1)
    total = Fraction(1)
    for S in brute_cliques(G, G.adj[v]):
        total += Fraction((-1) ** len(S), len(S) + 1)
    return total


def simple_paths(G: Graph, a: int, b: int):
    stack = [(a, [a])]
    while stack:
        u, path = stack.pop()
        if u == b:
            yield path
            continue
        for w in G.adj[u]:
            if w not in path:
                stack.append((w, path + [w]))


def brute_crofton(G: Graph, support, weights, a: int, b: int):
    """Minimum over simple a-b paths of the expected number of sign changes."""
    best = None
    for path in simple_paths(G, a, b):
        val = Fraction(0)
        for f, w in zip(support, weights):
            changes = sum(1 for x, y in zip(path, path[1:]) if (f[x] > 0) != (f[y] > 0))
            val += w * changes
        if best is None or val < best:
            best = val
    return best


def solve_square(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gauss-Jordan over the rationals; None if singular."""
    n = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if p is None:
            return None
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [aug[r][n] for r in range(n)]


def brute_maximin_slow(A) -> Fraction:
    """max_w min_s (Aw)_s by enumerating the vertices of {(w, t): Aw >= t, sum w = 1, w >= 0}.

    A vertex is cut out by the equality plus n tight inequalities chosen from
    the m row constraints and the n sign constraints.
    """
    m, n = len(A), len(A[0])
    A = [[Fraction(x) for x in row] for row in A]
    # variables (w_0..w_{n-1}, t); inequality k < m: A_k w - t >= 0 ; k >= m: w_{k-m} >= 0
    ineqs = [A[k] + [Fraction(-1)] for k in range(m)]
    ineqs += [[Fraction(int(j == i)) for j in range(n)] + [Fraction(0)] for i in range(n)]
    eq = [Fraction(1)] * n + [Fraction(0)]
    best = None
    for tight in combinations(range(m + n), n):
        M = [eq] + [ineqs[k] for k in tight]
        sol = solve_square(M, [Fraction(1)] + [Fraction(0)] * n)
        if sol is None:
            continue
        if all(sum(a * x for a, x in zip(row, sol)) >= 0 for row in ineqs):
            if best is None or sol[-1] > best:
                best = sol[-1]
    return best


def montante_solve(M: list[list[int]], b: list[int]) -> tuple[list[int], int] | None:
    """Fraction-free Gauss-Jordan: integer numerators and the determinant, or None."""
    n = len(M)
    a = [list(row) + [x] for row, x in zip(M, b)]
    prev, sign = 1, 1
    for k in range(n):
        p = next((r for r in range(k, n) if a[r][k]), None)
        if p is None:
            return None
        if p != k:
            a[k], a[p] = a[p], a[k]
            sign = -sign
        piv = a[k][k]
        for i in range(n):
            if i == k:
                continue
            f = a[i][k]
            a[i] = [(piv * x - f * y) // prev for x, y in zip(a[i], a[k])]
        prev = piv
    # every diagonal entry now equals the (row-swapped) determinant
    return [a[i][n] for i in range(n)], prev


def brute_maximin(A) -> Fraction:
    """Same value via square subsystems: rows R tight, support inside C, |R| = |C|.

    Every vertex of the feasible region has this form, so the largest
    feasible candidate is the optimum. Integer arithmetic throughout.
    """
    rows = [[Fraction(x) for x in r] for r in A]
    scale = 1
    for r in rows:
        for x in r:
            scale = scale * x.denominator // gcd(scale, x.denominator)
    B = [[int(x * scale) for x in r] for r in rows]
    m, n = len(B), len(B[0])
    best = None
    for k in range(1, min(m, n) + 1):
        for C in combinations(range(n), k):
            for R in combinations(range(m), k):
                M = [[B[s][j] for j in C] + [-1] for s in R] + [[1] * k + [0]]
                res = montante_solve(M, [0] * k + [1])
                if res is None:
                    continue
                num, det = res
                if det < 0:
                    num, det = [-x for x in num], -det
                if any(x < 0 for x in num[:k]):
                    continue
                t = num[k]
                if all(sum(B[s][j] * x for j, x in zip(C, num)) >= t for s in range(m)):
                    cand = Fraction(t, det)
                    if best is None or cand > best:
                        best = cand
    return best / scale


def definitional_topology(G: Graph):
    """Contractible / d-sphere predicates straight from the inductive definitions."""

    def sphere_of(S: frozenset, v: int) -> frozenset:
        return frozenset(w for w in G.adj[v] if w in S)

    def connected(S: frozenset) -> bool:
        if not S:
            return False
        start = next(iter(S))
        seen, stack = {start}, [start]
        while stack:
            u = stack.pop()
            for w in G.adj[u]:
                if w in S and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen == S

    @lru_cache(maxsize=None)
    def contractible(S: frozenset) -> bool:
        if len(S) == 1:
            return True
        return any(contractible(sphere_of(S, v)) and contractible(S - {v}) for v in S)

    @lru_cache(maxsize=None)
    def sphere(S: frozenset, d: int) -> bool:
        if d == -1:
            return not S
        if not S or (d >= 1 and not connected(S)):
            return False
        if not all(sphere(sphere_of(S, v), d - 1) for v in S):
            return False
        return any(contractible(S - {v}) for v in S)

    return contractible, sphere
