from fractions import Fraction

import numpy as np
import pytest

from kloos.core import (
    BoundRatioRow,
    CompleteSumSeries,
    InversePair,
    KloostermanQuery,
    KloostermanValue,
    Method,
    MomentResult,
    PreconditionError,
    SumGrid,
)
from kloos.core.models import DyadicScan


# skipcq: PY-D0003
def test_kloosterman_query():
    query = KloostermanQuery(1, -2, 7)
    assert query.as_tuple() == (1, -2, 7)
    assert str(query) == "S(1, -2; 7)"
    assert repr(query) == "<KloostermanQuery(m=1, n=-2, c=7)>"
    assert query == KloostermanQuery(1, -2, 7)
    assert len({query, KloostermanQuery(1, -2, 7)}) == 1


# skipcq: PY-D0003
def test_kloosterman_query_rejects_bad_modulus():
    with pytest.raises(PreconditionError):
        KloostermanQuery(1, 1, 0)


# skipcq: PY-D0003
def test_kloosterman_query_eq_other_class():
    with pytest.raises(TypeError):
        _ = KloostermanQuery(1, 1, 1) == (1, 1, 1)


# skipcq: PY-D0003
def test_kloosterman_value():
    value = KloostermanValue(KloostermanQuery(0, 0, 10), 4.0, Method.DIRECT, 4)
    assert float(value) == 4.0
    assert value.to_json() == {"m": 0, "n": 0, "c": 10, "value": 4.0, "method": "direct", "term_count": 4}
    assert isinstance(repr(value), str)


# skipcq: PY-D0003
def test_method_values():
    assert [method.value for method in Method] == ["direct", "crt-split", "dft"]
    assert Method("dft") is Method.DFT


# skipcq: PY-D0003
def test_complete_sum_series():
    series = CompleteSumSeries(1, 1, 3, np.array([1.0, 2.0, 1.0]))
    assert series.final == 1.0
    assert series.at(1) == 1.0
    assert series.increments().tolist() == [1.0, 1.0, -1.0]
    with pytest.raises(ValueError):
        series.partial[0] = 5.0
    with pytest.raises(PreconditionError):
        series.at(0)


# skipcq: PY-D0003
def test_sum_grid():
    grid = SumGrid(1, 1, 5, {(1, 1): 2.0, (-1, 1): 3.5}, 5.5)
    assert len(grid) == 2
    assert grid.max_entry() == 3.5
    assert "pairs=2" in repr(grid)


# skipcq: PY-D0003
def test_moment_result():
    result = MomentResult(2, 10, 4.0, 1.5)
    assert repr(result) == "<MomentResult(N=2, X=10, value=4.0, normalized=1.5)>"


# skipcq: PY-D0003
def test_bound_ratio_row():
    row = BoundRatioRow(1, 2, 10, "triple", 5.0, 20.0)
    assert row.ratio == 0.25
    assert row.as_row() == (1, 2, 10, "triple", 5.0, 20.0, 0.25)


# skipcq: PY-D0003
def test_dyadic_scan_bound():
    scan = DyadicScan(16, 2, 8.0, 2.0, 80)
    assert scan.bound == pytest.approx(0.25 + 10.0 / 80)


# skipcq: PY-D0003
def test_inverse_pair():
    pair = InversePair(3, 7, 10)
    assert (pair.x, pair.y) == (Fraction(3, 10), Fraction(7, 10))
    a, b, c = pair
    assert (a, b, c) == (3, 7, 10)
    assert sorted([InversePair(1, 1, 4), InversePair(3, 7, 10), InversePair(1, 1, 2)])[0] == InversePair(1, 1, 2)
    assert repr(pair) == "<InversePair(a=3, b=7, c=10)>"
    with pytest.raises(TypeError):
        _ = pair == (3, 7, 10)


@pytest.mark.parametrize("args", [(2, 2, 5), (0, 1, 1), (4, 4, 3), (1, 1, 0), (11, 1, 10)])
# skipcq: PY-D0003
def test_inverse_pair_rejects_non_inverses(args: tuple[int, int, int]):
    with pytest.raises(PreconditionError):
        InversePair(*args)
    assert InversePair(1, 1, 1).as_tuple() == (1, 1, 1)
