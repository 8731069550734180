from __future__ import annotations

from fractions import Fraction

import pytest

from hopfgraph.builders import cycle, octahedron
from hopfgraph.measure import Measure, MeasureError, uniform_measure
from hopfgraph.morse import Coloring, random_coloring


def test_validation_errors():
    G = cycle(4)
    f = random_coloring(G, 1)
    with pytest.raises(MeasureError, match="empty"):
        Measure((), ()).validate(G)
    with pytest.raises(MeasureError, match="sum"):
        Measure((f,), (Fraction(1, 2),)).validate(G)
    with pytest.raises(MeasureError, match="negative"):
        Measure((f, f), (Fraction(3, 2), Fraction(-1, 2))).validate(G)
    with pytest.raises(MeasureError, match="locally injective"):
        Measure((Coloring({0: 1, 1: 1, 2: 2, 3: 3}),), (1,)).validate(G)
    with pytest.raises(MeasureError, match="sign undefined"):
        Measure((Coloring({0: 0, 1: 1, 2: 2, 3: 3}),), (1,)).validate(G, signed=True)


def test_json_roundtrip():
    G = octahedron()
    mu = Measure((random_coloring(G, 1), random_coloring(G, 2)), (Fraction(1, 3), Fraction(2, 3)))
    data = mu.to_json(G)
    assert data["weights"] == ["1/3", "2/3"]
    assert Measure.from_json(G, data) == mu


def test_uniform_measure_size_and_limit():
    mu = uniform_measure(cycle(4))
    assert len(mu.support) == 24 and sum(mu.weights) == 1
    with pytest.raises(MeasureError):
        uniform_measure(octahedron(), limit=5)
