from fractions import Fraction

import numpy as np
import pytest

from kloos.core import PreconditionError
from kloos.core._internal import (
    as_fraction,
    block_ranges,
    floor_scaled,
    hyperbola_sign,
    integer_coefficients,
    linear_sign,
    map_blocks,
)


@pytest.mark.parametrize(
    "value,expected",
    [(1, Fraction(1)), ("1/3", Fraction(1, 3)), ("0.25", Fraction(1, 4)), (0.5, Fraction(1, 2))],
)
# skipcq: PY-D0003
def test_as_fraction(value, expected: Fraction):
    assert as_fraction(value) == expected


@pytest.mark.parametrize("value", [float("nan"), float("inf"), "one third", None])
# skipcq: PY-D0003
def test_as_fraction_rejects(value):
    with pytest.raises(PreconditionError):
        as_fraction(value)


# skipcq: PY-D0003
def test_block_ranges():
    assert block_ranges(1, 10, 4) == [(1, 5), (5, 9), (9, 10)]
    assert block_ranges(3, 3, 4) == []


# skipcq: PY-D0003
def test_map_blocks_keeps_order():
    blocks = block_ranges(0, 100, 7)
    assert map_blocks(sum, [range(*block) for block in blocks], 4) == [sum(range(*block)) for block in blocks]


# skipcq: PY-D0003
def test_integer_coefficients():
    assert integer_coefficients(["1/2", "1/3", 2]) == [3, 2, 12]


# skipcq: PY-D0003
def test_linear_sign_is_exact():
    big = 2**53 + 1
    columns = [np.array([big, big, 3]), np.array([1, 1, 1])]
    assert linear_sign([1, -big], columns).tolist() == [0, 0, -1]
    assert linear_sign([1, -(big - 1)], columns).tolist() == [1, 1, -1]
    assert linear_sign([0, 0], columns).tolist() == [0, 0, 0]


# skipcq: PY-D0003
def test_hyperbola_sign():
    x = np.array([1, 1, 2])
    y = np.array([1, 1, 2])
    den = np.array([2, 3, 4])
    assert hyperbola_sign(4, x, y, den).tolist() == [0, -1, 0]


# skipcq: PY-D0003
def test_floor_scaled():
    num = np.array([1, 1, 3, 0])
    den = np.array([3, 2, 4, 5])
    assert floor_scaled(num, den, Fraction(0), 4).tolist() == [1, 2, 3, 0]
    assert floor_scaled(num, den, Fraction(1, 3), 4).tolist() == [0, 0, 1, -2]
    huge = np.array([2**40], dtype=np.int64)
    assert floor_scaled(huge - 1, huge, Fraction(1, 7), 2**25).tolist() == [(2**25 * 6) // 7]
