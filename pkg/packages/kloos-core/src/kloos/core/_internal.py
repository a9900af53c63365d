"""Internal helpers shared by the numeric modules.

The sign helpers decide rational comparisons exactly: a float pass settles almost every
element and only the ones inside a narrow band around zero are recomputed with Python
integers.
"""

import logging
import math
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import TypeVar

import numpy as np

from kloos.core._types import IntArray, RealLike
from kloos.core.exceptions import PreconditionError

logger = logging.getLogger("kloos")

T = TypeVar("T")
R = TypeVar("R")

# int64 products below this bound can not wrap around
INT64_SAFE = 2**62

# relative width of the float band that gets recomputed exactly
_SIGN_BAND = 1e-9


def as_fraction(value: RealLike) -> Fraction:
    """Convert ints, floats, fraction strings ("1/3", "0.25") and Fractions to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float) and not math.isfinite(value):
        raise PreconditionError(f"Expected a finite number, got {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise PreconditionError(f"Can not read {value!r} as a rational number") from exc


def block_ranges(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Split the half open range [lo, hi) into consecutive blocks of at most `size` integers."""
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


def map_blocks(fn: Callable[[T], R], blocks: Sequence[T], threads: int) -> list[R]:
    """Apply `fn` to every block and return the results in block order.

    The partition is chosen by the caller and never depends on `threads`, so reducing the
    returned list left to right gives the same floating point result for any thread count.
    """
    if threads <= 1 or len(blocks) <= 1:
        return [fn(block) for block in blocks]
    logger.debug(f"Running {len(blocks)} blocks on {threads} threads")
    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(fn, blocks))


def row_fsum(matrix: np.ndarray) -> np.ndarray:
    """Return the correctly rounded sum of every row, each accumulated from the left."""
    return np.array([math.fsum(row) for row in np.asarray(matrix, dtype=np.float64).tolist()], dtype=np.float64)


def integer_coefficients(coefficients: Sequence[RealLike]) -> list[int]:
    """Scale rational coefficients by the lcm of their denominators."""
    fractions = [as_fraction(q) for q in coefficients]
    scale = math.lcm(*(q.denominator for q in fractions))
    return [int(q * scale) for q in fractions]


def _signs(approx: np.ndarray, magnitude: np.ndarray, exact: Callable[[int], int]) -> IntArray:
    signs = np.sign(approx).astype(np.int64)
    uncertain = np.flatnonzero(np.abs(approx) <= _SIGN_BAND * magnitude)
    for index in uncertain:
        value = exact(int(index))
        signs[index] = (value > 0) - (value < 0)
    return signs


def linear_sign(coefficients: Sequence[RealLike], columns: Sequence[IntArray]) -> IntArray:
    """Return the exact sign of sum(q_k * columns[k]) for every element.

    Args:
        coefficients: holds the rational coefficients q_k
        columns: holds integer arrays of equal length, one per coefficient

    Returns:
        an int64 array with entries in {-1, 0, 1}
    """
    ints = integer_coefficients(coefficients)
    largest = max((abs(q) for q in ints), default=0)
    if largest == 0:
        return np.zeros(len(columns[0]), dtype=np.int64)
    scaled = [q / largest for q in ints]
    approx = np.zeros(len(columns[0]), dtype=np.float64)
    magnitude = np.zeros(len(columns[0]), dtype=np.float64)
    for q, column in zip(scaled, columns):
        term = q * column.astype(np.float64)
        approx += term
        magnitude += np.abs(term)

    def exact(index: int) -> int:
        return sum(q * int(column[index]) for q, column in zip(ints, columns))

    return _signs(approx, magnitude, exact)


def hyperbola_sign(scale: int, x_num: IntArray, y_num: IntArray, den: IntArray) -> IntArray:
    """Return the exact sign of scale * x_num * y_num - den**2 for every element."""
    x = x_num.astype(np.float64)
    y = y_num.astype(np.float64)
    d = den.astype(np.float64)
    approx = scale * x * y - d * d
    magnitude = np.abs(scale * x * y) + d * d

    def exact(index: int) -> int:
        return scale * int(x_num[index]) * int(y_num[index]) - int(den[index]) ** 2

    return _signs(approx, magnitude, exact)


def floor_scaled(num: IntArray, den: IntArray, offset: Fraction, k: int) -> IntArray:
    """Return floor((num / den - offset) * k) exactly for every element."""
    p, q = offset.numerator, offset.denominator
    bound = max(int(np.abs(num).max(initial=0)) * k * q, abs(p) * k * int(den.max(initial=0)))
    if bound < INT64_SAFE and int(den.max(initial=0)) * q < INT64_SAFE:
        return np.floor_divide(num * (k * q) - den * (p * k), den * q)
    numerators = num.astype(object) * (k * q) - den.astype(object) * (p * k)
    return (numerators // (den.astype(object) * q)).astype(np.int64)
