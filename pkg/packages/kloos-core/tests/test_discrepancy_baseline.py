import numpy as np
import pytest

from kloos.core import PreconditionError, random_baseline, random_polygons
from kloos.core.discrepancy.baseline import BASELINE_BITS, regular_polygon


# skipcq: PY-D0003
def test_random_baseline_is_seeded():
    first = random_baseline(100, seed=9)
    second = random_baseline(100, seed=9)
    assert first.count == 100
    assert np.array_equal(first.x, second.x)
    assert not np.array_equal(first.x, random_baseline(100, seed=10).x)
    assert (first.den == 2**BASELINE_BITS).all()
    assert ((first.x >= 0) & (first.x < 1)).all()


# skipcq: PY-D0003
def test_random_baseline_rejects_empty():
    with pytest.raises(PreconditionError):
        random_baseline(0)


# skipcq: PY-D0003
def test_regular_polygon():
    square = regular_polygon((0.5, 0.5), 0.25, 4, 0.0)
    assert len(square.vertices) == 4
    assert square.area == pytest.approx(0.125, abs=1e-6)


# skipcq: PY-D0003
def test_random_polygons():
    polygons = random_polygons(20, seed=1)
    assert len(polygons) == 20
    assert [p.vertices for p in polygons] == [p.vertices for p in random_polygons(20, seed=1)]
    for polygon in polygons:
        assert 3 <= len(polygon.vertices) <= 8
        assert all(0 < x < 1 and 0 < y < 1 for x, y in polygon.vertices)
    assert random_polygons(0) == []
    with pytest.raises(PreconditionError):
        random_polygons(-1)
