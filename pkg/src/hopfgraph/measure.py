"""Finitely supported probability measures on colorings."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Iterable, Mapping, Sequence

from .graph import Graph
from .jsonio import parse_rat, rat
from .morse import Coloring, is_locally_injective


class MeasureError(ValueError):
    pass


@dataclass(frozen=True)
class Measure:
    support: tuple[Coloring, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "support", tuple(self.support))
        object.__setattr__(self, "weights", tuple(Fraction(w) for w in self.weights))

    @classmethod
    def dirac(cls, f: Coloring) -> "Measure":
        return cls((f,), (Fraction(1),))

    @classmethod
    def uniform(cls, colorings: Sequence[Coloring]) -> "Measure":
        n = len(colorings)
        return cls(tuple(colorings), (Fraction(1, n),) * n)

    def items(self) -> Iterable[tuple[Coloring, Fraction]]:
        return zip(self.support, self.weights)

    def validate(self, G: Graph | None = None, *, signed: bool = False) -> None:
        if not self.support:
            raise MeasureError("measure has empty support")
        if len(self.support) != len(self.weights):
            raise MeasureError(f"{len(self.support)} colorings but {len(self.weights)} weights")
        for k, w in enumerate(self.weights):
            if w < 0:
                raise MeasureError(f"negative weight {w} at position {k}")
        total = sum(self.weights)
        if total != 1:
            raise MeasureError(f"weights sum to {total}, not 1")
        if G is None:
            return
        for k, f in enumerate(self.support):
            missing = [v for v in G.vertices if v not in f.values]
            if missing:
                raise MeasureError(f"coloring {k} undefined at vertex {G.labels[missing[0]]!r}")
            if not is_locally_injective(G, f):
                raise MeasureError(f"coloring {k} is not locally injective")
            if signed:
                zero = [v for v in G.vertices if f.values[v] == 0]
                if zero:
                    raise MeasureError(f"coloring {k} vanishes at vertex {G.labels[zero[0]]!r}; sign undefined")

    def to_json(self, G: Graph) -> dict:
        return {
            "weights": [rat(w) for w in self.weights],
            "colorings": [f.to_json(G) for f in self.support],
        }

    @classmethod
    def from_json(cls, G: Graph, data: Mapping) -> "Measure":
        if not isinstance(data, Mapping) or "weights" not in data or "colorings" not in data:
            raise MeasureError('measure JSON needs "weights" and "colorings"')
        weights = tuple(parse_rat(w) for w in data["weights"])
        support = tuple(Coloring.from_json(G, c) for c in data["colorings"])
        return cls(support, weights)


def uniform_measure(G: Graph, limit: int = 8) -> Measure:
    """Uniform measure on all ``n!`` vertex orderings of ``G``."""
    n = len(G)
    if n > limit:
        raise MeasureError(f"{n}! orderings exceed the exhaustive limit ({limit} vertices)")
    w = Fraction(1, factorial(n))
    support = tuple(Coloring.from_order(p) for p in permutations(G.vertices))
    return Measure(support, (w,) * len(support))
