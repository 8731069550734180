"""Index-expectation curvature, Levitt curvature and sectional curvature of wheels."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .geodesy import WheelEmbedding
from .graph import Graph, GraphError, clique_sum, euler_characteristic, mask_fvector
from .measure import Measure, MeasureError
from .morse import Coloring, ColoringError, index_vector

EXHAUSTIVE_LIMIT = 16


def expectation_curvature(G: Graph, mu: Measure) -> dict[int, Fraction]:
    mu.validate(G)
    K = {v: Fraction(0) for v in G.vertices}
    for f, w in mu.items():
        if not w:
            continue
        for v, i in index_vector(G, f).items():
            K[v] += w * i
    return K


@dataclass
class SampledCurvature:
    estimate: dict[int, Fraction]  # exact sample mean
    stderr: dict[int, float]
    samples: int
    seed: int


def uniform_curvature(G: Graph, limit: int = EXHAUSTIVE_LIMIT, samples: int | None = None,
                      seed: int = 0) -> dict[int, Fraction] | SampledCurvature:
    """Index expectation under the uniform measure on vertex orderings.

    The index at ``v`` only sees which neighbours precede ``v``. Under a
    uniform ordering a given ``k``-subset of the ``d`` neighbours is exactly
    that set with probability ``k! (d-k)! / (d+1)!``, so the exact value is a
    sum over subsets of the unit sphere. This is used when every degree is at
    most ``limit``; otherwise ``samples`` random orderings give an estimate.
    """
    deg = max((G.degree(v) for v in G.vertices), default=0)
    if deg <= limit and samples is None:
        return _uniform_exact(G)
    if samples is None:
        raise MeasureError(f"degree {deg} exceeds the exhaustive limit {limit}; pass samples=")
    return _uniform_sampled(G, samples, seed)


def _uniform_exact(G: Graph) -> dict[int, Fraction]:
    masks = G.masks
    out = {}
    for v in G.vertices:
        S = masks[v]
        d = S.bit_count()
        total = Fraction(0)
        sub = S
        while True:
            k = sub.bit_count()
            total += Fraction(math.factorial(k) * math.factorial(d - k), math.factorial(d + 1)) * (1 - clique_sum(masks, sub))
            if not sub:
                break
            sub = (sub - 1) & S
        out[v] = total
    return out


def _uniform_sampled(G: Graph, samples: int, seed: int) -> SampledCurvature:
    rng = random.Random(seed)
    verts = list(G.vertices)
    s1 = {v: 0 for v in verts}
    s2 = {v: 0 for v in verts}
    for _ in range(samples):
        vals = list(range(len(verts)))
        rng.shuffle(vals)
        f = Coloring(dict(zip(verts, vals)))
        for v, i in index_vector(G, f).items():
            s1[v] += i
            s2[v] += i * i
    est, err = {}, {}
    for v in verts:
        est[v] = Fraction(s1[v], samples)
        var = max(Fraction(s2[v], samples) - est[v] ** 2, Fraction(0))
        err[v] = math.sqrt(var / max(samples - 1, 1))
    return SampledCurvature(est, err, samples, seed)


def levitt_curvature(G: Graph, v: int) -> Fraction:
    """``1 - f0/2 + f1/3 - f2/4 + ...`` over the f-vector of the unit sphere."""
    if v not in G.adj:
        raise GraphError(f"no such vertex {v!r}")
    fv = mask_fvector(G.masks, G.masks[v])
    return Fraction(1) + sum((Fraction((-1) ** (k + 1) * f, k + 2) for k, f in enumerate(fv)), Fraction(0))


def levitt_vector(G: Graph) -> dict[int, Fraction]:
    return {v: levitt_curvature(G, v) for v in G.vertices}


def gauss_bonnet_check(G: Graph, K: dict[int, Fraction]) -> tuple[bool, Fraction]:
    """Whether ``sum(K) == chi(G)``, with the residual ``sum(K) - chi(G)``."""
    missing = [v for v in G.vertices if v not in K]
    if missing:
        raise GraphError(f"curvature undefined at vertex {G.labels[missing[0]]!r}")
    residual = sum((Fraction(K[v]) for v in G.vertices), Fraction(0)) - euler_characteristic(G)
    return residual == 0, residual


def wheel_index(G: Graph, W: WheelEmbedding, f: Coloring) -> int:
    """Index at the center of ``f`` restricted to the wheel.

    ``1 - #(maximal boundary arcs below the center)``; a boundary lying
    entirely below the center is a circle with chi 0.
    """
    W.validate(G)
    c, b = W.center, W.boundary
    fc = f[c]
    below = []
    for v in b:
        if f[v] == fc:
            raise ColoringError(f"ambiguous level between center and {G.labels[v]!r}")
        below.append(f[v] < fc)
    if all(below):
        return 1
    arcs = sum(1 for k in range(len(b)) if below[k] and not below[k - 1])
    return 1 - arcs


def sectional_curvature(G: Graph, mu: Measure, W: WheelEmbedding) -> Fraction:
    mu.validate()
    return sum((w * wheel_index(G, W, f) for f, w in mu.items()), Fraction(0))
