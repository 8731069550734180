"""Colorings (locally injective vertex functions) and Poincare-Hopf indices.

The index of a coloring ``f`` at ``v`` is ``1 - chi(S^-)`` where ``S^-`` is
the part of the unit sphere of ``v`` on which ``f`` is smaller than ``f(v)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .graph import Graph, Simplex, clique_sum, cliques

Value = int | Fraction


class ColoringError(ValueError):
    pass


def as_value(x: object) -> Value:
    """Exact scalar from an int, Fraction, float or ``"p/q"`` string."""
    if isinstance(x, bool):
        raise ColoringError(f"not a number: {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, (Fraction, Rational, float, str)):
        q = Fraction(x)
        return q.numerator if q.denominator == 1 else q
    raise ColoringError(f"not a number: {x!r}")


@dataclass(frozen=True)
class Coloring:
    values: Mapping[int, Value]

    def __post_init__(self):
        object.__setattr__(self, "values", {v: as_value(x) for v, x in self.values.items()})

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Coloring":
        """Coloring giving the ``k``-th vertex of ``order`` the value ``k``."""
        return cls({v: k for k, v in enumerate(order)})

    def __getitem__(self, v: int) -> Value:
        return self.values[v]

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.values.items())))

    def negated(self) -> "Coloring":
        return Coloring({v: -x for v, x in self.values.items()})

    def order(self) -> list[int]:
        return sorted(self.values, key=self.values.__getitem__)

    def restrict(self, vertices: Iterable[int]) -> "Coloring":
        return Coloring({v: self.values[v] for v in vertices})

    def to_json(self, G: Graph) -> dict:
        from .jsonio import rat
        return {"values": {str(G.labels[v]): rat(self.values[v]) for v in G.vertices}}

    @classmethod
    def from_json(cls, G: Graph, data: Mapping) -> "Coloring":
        raw = data.get("values", data) if isinstance(data, Mapping) else None
        if not isinstance(raw, Mapping):
            raise ColoringError("coloring JSON must map vertex ids to values")
        return cls({G.vertex_by_label(k): as_value(x) for k, x in raw.items()})


def _check_total(G: Graph, f: Coloring) -> None:
    missing = [v for v in G.vertices if v not in f.values]
    if missing:
        raise ColoringError(f"coloring undefined at vertex {G.labels[missing[0]]!r}")


def is_locally_injective(G: Graph, f: Coloring) -> bool:
    _check_total(G, f)
    vals = f.values
    return all(vals[u] != vals[v] for u, v in G.edges())


def _require_injective_at(G: Graph, f: Coloring, v: int) -> None:
    fv = f.values[v]
    for w in G.adj[v]:
        if f.values[w] == fv:
            raise ColoringError(f"ambiguous level: f({G.labels[v]!r}) = f({G.labels[w]!r}) on an edge")


def lower_mask(G: Graph, f: Coloring, v: int) -> int:
    """Bitmask of neighbours of ``v`` with smaller value."""
    fv = f.values[v]
    m = 0
    for w in G.adj[v]:
        if f.values[w] < fv:
            m |= 1 << w
    return m


def ph_index(G: Graph, f: Coloring, v: int) -> int:
    if v not in G.adj:
        raise ColoringError(f"no such vertex {v!r}")
    _check_total(G, f)
    _require_injective_at(G, f, v)
    return 1 - clique_sum(G.masks, lower_mask(G, f, v))


def index_vector(G: Graph, f: Coloring) -> dict[int, int]:
    _check_total(G, f)
    if not is_locally_injective(G, f):
        bad = next((u, v) for u, v in G.edges() if f.values[u] == f.values[v])
        raise ColoringError(f"ambiguous level on edge ({G.labels[bad[0]]!r}, {G.labels[bad[1]]!r})")
    masks = G.masks
    return {v: 1 - clique_sum(masks, lower_mask(G, f, v)) for v in G.vertices}


def rank_index_vector(G: Graph, rank: Mapping[int, int] | Sequence[int]) -> list[int]:
    """Index vector for an injective integer ranking, in ``G.vertices`` order.

    No validation; used on hot paths where the ranking is known to be injective.
    """
    masks = G.masks
    out = []
    for v in G.vertices:
        rv = rank[v]
        m = 0
        for w in G.adj[v]:
            if rank[w] < rv:
                m |= 1 << w
        out.append(1 - clique_sum(masks, m))
    return out


def symmetric_index(G: Graph, f: Coloring, v: int) -> Fraction:
    return Fraction(ph_index(G, f, v) + ph_index(G, f.negated(), v), 2)


def divisor_from_field(G: Graph, choice: Mapping[Simplex, int]) -> dict[int, int]:
    """Poincare-Hopf divisor of a field assigning each simplex one of its vertices.

    Each simplex ``x`` sends its energy ``(-1)**dim(x)`` to ``choice[x]``.
    """
    out = {v: 0 for v in G.vertices}
    for x in cliques(G):
        if x not in choice:
            raise ColoringError(f"field undefined on simplex {x}")
        v = choice[x]
        if v not in x:
            raise ColoringError(f"field sends simplex {x} to vertex {v} outside it")
        out[v] += (-1) ** (len(x) - 1)
    return out


def max_vertex_field(G: Graph, f: Coloring) -> dict[Simplex, int]:
    return {x: max(x, key=f.values.__getitem__) for x in cliques(G)}


def random_coloring(G: Graph, seed: int) -> Coloring:
    """Uniformly random permutation of ``0..n-1`` placed on the vertices."""
    vals = list(range(len(G)))
    random.Random(seed).shuffle(vals)
    return Coloring(dict(zip(G.vertices, vals)))
