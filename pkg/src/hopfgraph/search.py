"""Search for probability measures on colorings with positive curvature.

Two kinds of constraint sites are supported:

* ``euler``: one site per vertex, entry = Poincare-Hopf index of the coloring.
* ``sectional``: one site per geodesic wheel, entry = index of the coloring
  restricted to the wheel, taken at its center.

The search solves the exact maximin LP over a finite pool of colorings and
grows the pool by column generation: a local search over vertex orderings
looks for a coloring whose dual-weighted index sum beats the current optimum.
A positive optimum is a certified fact about the graph. A non-positive one
only says that no such measure exists inside the explored pool.
"""
from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .geodesy import EXISTENTIAL, WheelEmbedding, enumerate_geodesic_wheels
from .graph import Graph, clique_sum, euler_characteristic
from .jsonio import rat
from .lp import LPSolution, POSITIVE, MaximinSolver, verify_certificate
from .measure import Measure
from .morse import Coloring, ColoringError, is_locally_injective, rank_index_vector

EULER = "euler"
SECTIONAL = "sectional"
SCHEMA_VERSION = 1

STATUS_POSITIVE = "POSITIVE"
STATUS_NONPOSITIVE = "NONPOSITIVE-WITHIN-POOL"
STATUS_BUDGET = "BUDGET"


class SearchError(RuntimeError):
    pass


@dataclass
class IndexMatrix:
    mode: str
    sites: list  # vertices (euler) or WheelEmbedding (sectional)
    pool: list[Coloring]
    entries: list[list[int]]  # entries[site][column]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.sites), len(self.pool)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(row[j] for row in self.entries)

    def site_label(self, G: Graph, k: int) -> str:
        s = self.sites[k]
        if isinstance(s, WheelEmbedding):
            return f"{G.labels[s.center]}:[" + ",".join(str(G.labels[v]) for v in s.boundary) + "]"
        return str(G.labels[s])


def _wheel_index_rank(W: WheelEmbedding, rank) -> int:
    rc = rank[W.center]
    below = [rank[v] < rc for v in W.boundary]
    if all(below):
        return 1
    return 1 - sum(1 for k in range(len(below)) if below[k] and not below[k - 1])


def site_column(G: Graph, mode: str, sites: Sequence, rank) -> list[int]:
    """Entries of one coloring (given by its values or ranks) at every site."""
    if mode == EULER:
        full = dict(zip(G.vertices, rank_index_vector(G, rank)))
        return [full[v] for v in sites]
    return [_wheel_index_rank(W, rank) for W in sites]


def build_index_matrix(G: Graph, pool: Sequence[Coloring], mode: str = EULER,
                       wheels: Sequence[WheelEmbedding] | None = None) -> IndexMatrix:
    if not pool:
        raise SearchError("empty coloring pool")
    if mode == EULER:
        sites: list = list(G.vertices)
    elif mode == SECTIONAL:
        if not wheels:
            raise SearchError("sectional mode needs a nonempty list of wheels")
        for W in wheels:
            W.validate(G)
        sites = list(wheels)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for k, f in enumerate(pool):
        if not is_locally_injective(G, f):
            raise ColoringError(f"pool coloring {k} is not locally injective")
    cols = [site_column(G, mode, sites, f.values) for f in pool]
    entries = [[c[s] for c in cols] for s in range(len(sites))]
    return IndexMatrix(mode, sites, list(pool), entries)


# Pricing ----------------------------------------------------------------

class _Pricer:
    """Hill climbing over vertex orderings for a fixed dual-weighted objective."""

    def __init__(self, G: Graph, mode: str, sites: Sequence, dual: Sequence[Fraction]):
        self.G = G
        self.mode = mode
        self.sites = list(sites)
        scale = lcm(*(Fraction(d).denominator for d in dual)) if dual else 1
        self.weight = [int(Fraction(d) * scale) for d in dual]
        self.scale = scale
        self.active = [k for k, w in enumerate(self.weight) if w]
        self._cache: dict[tuple[int, int], int] = {}
        # sites whose entry can change when the order of u and v flips
        self.touch: dict[tuple[int, int], list[int]] = {}
        if mode == EULER:
            pos = {v: k for k, v in enumerate(self.sites)}
            for u, v in G.edges():
                ks = [pos[x] for x in (u, v) if x in pos and self.weight[pos[x]]]
                if ks:
                    self.touch[(u, v)] = ks
        else:
            for k in self.active:
                W = self.sites[k]
                for b in W.boundary:
                    key = (min(W.center, b), max(W.center, b))
                    self.touch.setdefault(key, []).append(k)

    def entry(self, k: int, rank) -> int:
        if self.mode == EULER:
            v = self.sites[k]
            rv = rank[v]
            m = 0
            for w in self.G.adj[v]:
                if rank[w] < rv:
                    m |= 1 << w
            i = self._cache.get((v, m))
            if i is None:
                i = self._cache[(v, m)] = 1 - clique_sum(self.G.masks, m)
            return i
        return _wheel_index_rank(self.sites[k], rank)

    def score(self, rank) -> int:
        return sum(self.weight[k] * self.entry(k, rank) for k in self.active)

    def climb(self, order: list[int], max_sweeps: int = 10_000) -> tuple[list[int], int]:
        rank = {v: i for i, v in enumerate(order)}
        best = self.score(rank)
        touch = self.touch
        for _ in range(max_sweeps):
            improved = False
            for p in range(len(order) - 1):
                u, v = order[p], order[p + 1]
                ks = touch.get((u, v) if u < v else (v, u))
                if not ks:
                    continue
                before = sum(self.weight[k] * self.entry(k, rank) for k in ks)
                rank[u], rank[v] = p + 1, p
                after = sum(self.weight[k] * self.entry(k, rank) for k in ks)
                if after > before:
                    order[p], order[p + 1] = v, u
                    best += after - before
                    improved = True
                else:
                    rank[u], rank[v] = p, p + 1
            if not improved:
                break
        return order, best

    def start(self, k: int, seed: int) -> list[int]:
        verts = list(self.G.vertices)
        if k == 0:
            # heaviest sites first: their vertices (or wheel centers) become minima
            w = {v: 0 for v in verts}
            for j in self.active:
                s = self.sites[j]
                c = s.center if isinstance(s, WheelEmbedding) else s
                w[c] += self.weight[j]
            return sorted(verts, key=lambda v: (-w[v], v))
        rng = random.Random(seed * 1_000_003 + k)
        rng.shuffle(verts)
        return verts


def _climb_job(args) -> tuple[list[int], int]:
    G, mode, sites, dual, k, seed = args
    pr = _Pricer(G, mode, sites, dual)
    return pr.climb(pr.start(k, seed))


def price_columns(G: Graph, dual: Sequence[Fraction], mode: str = EULER, budget: int = 16,
                  wheels: Sequence[WheelEmbedding] | None = None, threshold: Fraction = Fraction(0),
                  seed: int = 0, max_new: int = 1, workers: int = 1) -> list[Coloring]:
    """Colorings whose dual-weighted entry sum exceeds ``threshold``, best first.

    ``budget`` is the number of hill-climbing restarts; restart 0 starts from
    the heaviest-dual ordering, the others from seeded random orderings.
    """
    sites = list(G.vertices) if mode == EULER else list(wheels or [])
    if len(dual) != len(sites):
        raise SearchError(f"dual has {len(dual)} entries for {len(sites)} sites")
    if not any(dual):
        return []
    jobs = [(G, mode, sites, list(dual), k, seed) for k in range(budget)]
    if workers > 1 and budget > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_climb_job, jobs))
    else:
        pr = _Pricer(G, mode, sites, dual)
        results = [pr.climb(pr.start(k, seed)) for k in range(budget)]
    scale = lcm(*(Fraction(d).denominator for d in dual))
    bar = Fraction(threshold) * scale
    found: dict[tuple[int, ...], tuple[int, int, list[int]]] = {}
    for k, (order, score) in enumerate(results):
        if score <= bar:
            continue
        rank = {v: i for i, v in enumerate(order)}
        col = tuple(site_column(G, mode, sites, rank))
        if col not in found:
            found[col] = (score, k, order)
    ranked = sorted(found.values(), key=lambda t: (-t[0], t[1]))
    return [Coloring.from_order(order) for _, _, order in ranked[:max_new]]


def price_new_column(G: Graph, dual: Sequence[Fraction], mode: str = EULER, budget: int = 16,
                     wheels: Sequence[WheelEmbedding] | None = None, threshold: Fraction = Fraction(0),
                     seed: int = 0) -> Coloring | None:
    cols = price_columns(G, dual, mode, budget, wheels, threshold, seed, max_new=1)
    return cols[0] if cols else None


# Orchestration ----------------------------------------------------------

def height_coloring(G: Graph, source: int) -> Coloring:
    """Order vertices by hop distance from ``source`` (ties by id)."""
    dist = {source: 0}
    frontier = [source]
    while frontier:
        nxt = []
        for u in frontier:
            for w in sorted(G.adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    nxt.append(w)
        frontier = nxt
    far = len(G)
    return Coloring.from_order(sorted(G.vertices, key=lambda v: (dist.get(v, far), v)))


def seed_pool(G: Graph, seed: int, n_random: int, n_canonical: int) -> list[Coloring]:
    """Height functions from evenly spaced sources, their negatives, then random orderings."""
    verts = list(G.vertices)
    pool: list[Coloring] = []
    if n_canonical:
        step = max(1, len(verts) // n_canonical)
        for v in verts[::step][:n_canonical]:
            f = height_coloring(G, v)
            pool += [f, f.negated()]
    rng = random.Random(seed)
    for _ in range(n_random):
        order = verts[:]
        rng.shuffle(order)
        pool.append(Coloring.from_order(order))
    return pool


def find_wheels(G: Graph, per_vertex: int = 1, mode: str = EXISTENTIAL) -> list[WheelEmbedding]:
    out: list[WheelEmbedding] = []
    for x in G.vertices:
        ws, _ = enumerate_geodesic_wheels(G, x, per_vertex, mode)
        out += ws
    return out


@dataclass
class SearchReport:
    G: Graph
    mode: str
    status: str
    matrix: IndexMatrix
    solution: LPSolution
    certificate_reason: str
    rounds: int
    converged: bool
    total_pivots: int
    # one entry per solve: pool size, optimum, and the checks run on it
    history: list[dict] = field(default_factory=list)
    gauss_bonnet: dict = field(default_factory=dict)
    config: dict = field(default_factory=dict)
    budget_exhausted: bool = False

    @property
    def t_star(self) -> Fraction:
        return self.solution.t_star

    def measure(self) -> Measure:
        pairs = [(f, w) for f, w in zip(self.matrix.pool, self.solution.weights) if w > 0]
        return Measure(tuple(f for f, _ in pairs), tuple(w for _, w in pairs))

    @property
    def verdict(self) -> str:
        if self.status == STATUS_POSITIVE:
            return "a probability measure with positive curvature at every site exists (certified)"
        if self.status == STATUS_NONPOSITIVE:
            return ("no measure found within the explored pool; this is not a proof "
                    "that no positive-curvature measure exists")
        return "time budget exhausted before a positive measure was found; partial results only"

    def to_json(self) -> dict:
        G, A = self.G, self.matrix
        return {
            "schema_version": SCHEMA_VERSION,
            "mode": self.mode,
            "status": self.status,
            "verdict": self.verdict,
            "t_star": rat(self.t_star),
            "pool_size": len(A.pool),
            "sites": len(A.sites),
            "rounds": self.rounds,
            "converged": self.converged,
            "budget_exhausted": self.budget_exhausted,
            "pivots": self.total_pivots,
            "history": [{k: rat(v) if isinstance(v, Fraction) else v for k, v in h.items()}
                        for h in self.history],
            "measure": self.measure().to_json(G),
            "certificate": {
                "verified": self.certificate_reason == "ok",
                "reason": self.certificate_reason,
                "dual": [{"site": A.site_label(G, k), "weight": rat(y)}
                         for k, y in enumerate(self.solution.dual) if y],
            },
            "gauss_bonnet": {k: rat(v) if isinstance(v, Fraction) else v for k, v in self.gauss_bonnet.items()},
            "config": self.config,
        }


def _euler_check(G: Graph, measure: Measure) -> dict:
    """Gauss-Bonnet and the mean-value ceiling for the Euler curvature of ``measure``."""
    chi = euler_characteristic(G)
    K = {v: Fraction(0) for v in G.vertices}
    for f, w in measure.items():
        for v, i in zip(G.vertices, rank_index_vector(G, f.values)):
            K[v] += w * i
    total = sum(K.values(), Fraction(0))
    low = min(K.values())
    ceiling = Fraction(chi, len(G))
    if total != chi:
        raise SearchError(f"Gauss-Bonnet violated: sum K = {total}, chi = {chi}")
    if low > ceiling:
        raise SearchError(f"min K = {low} above the mean {ceiling}")
    return {"chi": chi, "vertices": len(G), "ceiling": ceiling, "sum_curvature": total,
            "min_curvature": low, "holds": True}


def positive_curvature_search(
    G: Graph,
    mode: str = EULER,
    seed: int = 0,
    rounds: int = 30,
    restarts: int = 16,
    n_random: int = 16,
    n_canonical: int = 32,
    columns_per_round: int = 4,
    wheels: Sequence[WheelEmbedding] | None = None,
    wheels_per_vertex: int = 1,
    time_budget: float | None = None,
    pivot_budget: int | None = None,
    stop_when_positive: bool = False,
    workers: int = 1,
) -> SearchReport:
    t0 = time.monotonic()
    if mode == SECTIONAL and wheels is None:
        wheels = find_wheels(G, wheels_per_vertex)
    sites = list(G.vertices) if mode == EULER else list(wheels or [])
    config = {"seed": seed, "rounds": rounds, "restarts": restarts, "random_pool": n_random,
              "canonical_pool": n_canonical, "columns_per_round": columns_per_round,
              "wheels_per_vertex": wheels_per_vertex if mode == SECTIONAL else None,
              "time_budget": time_budget, "pivot_budget": pivot_budget}
    chi, n = euler_characteristic(G), len(G)

    pool: list[Coloring] = []
    seen: set[tuple[int, ...]] = set()
    columns: list[list[int]] = []

    def add(f: Coloring) -> bool:
        col = tuple(site_column(G, mode, sites, f.values))
        if col in seen:
            return False
        seen.add(col)
        pool.append(f)
        columns.append(list(col))
        return True

    for f in seed_pool(G, seed, n_random, n_canonical):
        if not is_locally_injective(G, f):
            raise ColoringError("seed coloring is not locally injective")
        add(f)
    if not pool:
        raise SearchError("empty coloring pool")

    history: list[dict] = []
    total_pivots = 0
    converged = False
    out_of_time = False
    gb: dict = {}
    sol = None
    A = None
    r = 0
    solver, solver_cols = None, 0
    for r in range(1, rounds + 1):
        entries = [[c[s] for c in columns] for s in range(len(sites))]
        A = IndexMatrix(mode, sites, list(pool), entries)
        if solver is None:
            solver = MaximinSolver(entries, pivot_budget)
        else:
            solver.add_columns(columns[solver_cols:])
        solver_cols = len(columns)
        sol = solver.solve()
        total_pivots += sol.pivots
        check = verify_certificate(entries, sol)
        if not check:
            raise SearchError(f"certificate rejected: {check.reason}")
        if history and sol.t_star < history[-1]["t_star"]:
            raise SearchError("optimum decreased after enlarging the pool")
        if mode == EULER and sol.t_star > Fraction(chi, n):
            raise SearchError(f"t* = {sol.t_star} exceeds chi/|V| = {Fraction(chi, n)}")
        gb = _euler_check(G, Measure(
            tuple(f for f, w in zip(pool, sol.weights) if w > 0),
            tuple(w for w in sol.weights if w > 0)))
        history.append({"pool_size": len(pool), "t_star": sol.t_star, "certificate": check.reason,
                        "min_curvature": gb["min_curvature"], "gauss_bonnet": gb["holds"]})
        if stop_when_positive and sol.t_star > 0:
            break
        if time_budget is not None and time.monotonic() - t0 > time_budget:
            out_of_time = True
            break
        new = price_columns(G, sol.dual, mode, restarts, wheels, sol.t_star,
                            seed=seed * 7919 + r, max_new=columns_per_round, workers=workers)
        added = sum(add(f) for f in new)
        if not added:
            converged = True
            break

    # a positive optimum is certified whether or not time ran out
    if sol.status == POSITIVE:
        status = STATUS_POSITIVE
    elif out_of_time:
        status = STATUS_BUDGET
    else:
        status = STATUS_NONPOSITIVE
    return SearchReport(G, mode, status, A, sol, "ok", r, converged, total_pivots,
                        history, gb, config, out_of_time)
