"""This file contains sums of Kloosterman sums over moduli and their envelope diagnostics.

Every aggregate is built from one pass over the moduli: for each c the inverse table is
built once and all requested (m, n) pairs are evaluated against it. The moduli are cut into
blocks of `Settings.block_size`, the blocks may run on several threads, and the block results
are always combined in block order.
"""

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from kloos.core._internal import block_ranges, map_blocks, row_fsum
from kloos.core._types import FloatArray, Pair
from kloos.core.arith import totient_table
from kloos.core.backends import SumBackend, get_backend
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.models import BoundRatioRow, CompleteSumSeries, DyadicScan, Method, MomentResult, SumGrid
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

KINDS = ("triple", "moment2", "moment2n", "linnik")


def _pair_arrays(pairs: Sequence[Pair]) -> tuple[np.ndarray, np.ndarray]:
    if not pairs:
        raise PreconditionError("At least one (m, n) pair is required")
    array = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    return array[:, 0].copy(), array[:, 1].copy()


def _check_budget(pair_count: int, c_lo: int, c_hi: int, settings: Settings) -> None:
    table = totient_table(c_hi - 1, settings)
    terms = pair_count * (table.count(c_hi - 1) - table.count(c_lo - 1))
    if terms > settings.term_budget:
        logger.warning(f"Refusing {terms} summation terms")
        raise CapacityError("summation terms", settings.term_budget, terms)
    logger.debug(f"Summing {pair_count} pairs over {c_lo} <= c < {c_hi} ({terms} terms)")


class _ModulusPass:
    """One pass over the moduli c_lo <= c < c_hi for a fixed list of pairs."""

    def __init__(self, pairs: Sequence[Pair], backend: SumBackend, weighted: bool = False):
        self.ms, self.ns = _pair_arrays(pairs)
        self.backend: SumBackend = backend
        self.weighted: bool = weighted

    def columns(self, block: tuple[int, int]) -> FloatArray:
        lo, hi = block
        out = np.empty((len(self.ms), hi - lo), dtype=np.float64)
        for c in range(lo, hi):
            values = self.backend.modular_sums(c, self.ms, self.ns)
            out[:, c - lo] = values / c if self.weighted else values
        return out

    def block_total(self, block: tuple[int, int]) -> FloatArray:
        return row_fsum(self.columns(block))


def modulus_totals(
    pairs: Sequence[Pair],
    c_lo: int,
    c_hi: int,
    settings: Settings | None = None,
    method: str | Method = Method.DIRECT,
    weighted: bool = False,
) -> FloatArray:
    """Return sum_{c_lo <= c < c_hi} S(m, n; c) (divided by c when weighted) for every pair.

    Args:
        pairs: holds the (m, n) pairs
        c_lo: holds the first modulus
        c_hi: holds the end of the half open modulus range
        settings: holds the budget, block size and thread count
        method: holds the backend name
        weighted: divides every sum by its modulus

    Returns:
        one total per pair, in pair order
    """
    settings = resolve(settings)
    if c_lo < 1 or c_hi <= c_lo:
        raise PreconditionError(f"Expected 1 <= c_lo < c_hi, got [{c_lo}, {c_hi})")
    _check_budget(len(pairs), c_lo, c_hi, settings)
    modulus_pass = _ModulusPass(pairs, get_backend(method, settings), weighted)
    partials = map_blocks(modulus_pass.block_total, block_ranges(c_lo, c_hi, settings.block_size), settings.threads)
    return row_fsum(np.stack(partials, axis=1))


def complete_sums(
    pairs: Sequence[Pair], X: int, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> FloatArray:
    """Return T(m, n; X) = sum_{c <= X} S(m, n; c) for every pair."""
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    return modulus_totals(pairs, 1, X + 1, settings, method)


def complete_sum_series(
    m: int, n: int, X: int, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> CompleteSumSeries:
    """Return T(m, n; y) for every prefix y = 1..X.

    Examples:
        >>> complete_sum_series(0, 1, 4).partial.round(9).tolist()
        [1.0, 0.0, -1.0, -1.0]
    """
    settings = resolve(settings)
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    _check_budget(1, 1, X + 1, settings)
    modulus_pass = _ModulusPass([(m, n)], get_backend(method, settings))
    columns = map_blocks(modulus_pass.columns, block_ranges(1, X + 1, settings.block_size), settings.threads)
    values = np.concatenate(columns, axis=1)[0]
    return CompleteSumSeries(m, n, X, np.cumsum(values))


def signed_range(base: int) -> list[int]:
    """Return the integers k with base <= |k| < 2 base in ascending order."""
    return [*range(-2 * base + 1, -base + 1), *range(base, 2 * base)]


def triple_sum(
    M: int, N: int, X: int, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> SumGrid:
    """Return K(M, N; X) = sum over M <= |m| < 2M, N <= |n| < 2N of |T(m, n; X)|.

    Args:
        M: holds the dyadic base of m
        N: holds the dyadic base of n
        X: holds the modulus limit
        settings: holds the budget, block size and thread count
        method: holds the backend name

    Returns:
        the grid of all 4 M N entries and their total
    """
    if min(M, N, X) < 1:
        raise PreconditionError(f"M, N and X must be positive, got M={M}, N={N}, X={X}")
    pairs = [(m, n) for m in signed_range(M) for n in signed_range(N)]
    totals = np.abs(complete_sums(pairs, X, settings, method))
    entries = {pair: float(value) for pair, value in zip(pairs, totals)}
    return SumGrid(M, N, X, entries, math.fsum(totals))


def second_moment(
    N: int, X: int, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> MomentResult:
    """Return the second moment of T(n, 1; X) over N <= |n| < 2N and its 1/c weighted variant.

    The weighted variant sums |sum_{X <= c < 2X} S(n, s; c) / c|**2 over N <= n < 2N and s = +1, -1.
    """
    if min(N, X) < 1:
        raise PreconditionError(f"N and X must be positive, got N={N}, X={X}")
    totals = complete_sums([(n, 1) for n in signed_range(N)], X, settings, method)
    return MomentResult(N, X, math.fsum(totals * totals), normalized_moment(N, X, settings, method))


def normalized_moment(N: int, X: int, settings: Settings | None = None, method: str | Method = Method.DIRECT) -> float:
    """Return sum_{s = +1, -1} sum_{N <= n < 2N} |sum_{X <= c < 2X} S(n, s; c) / c|**2."""
    if min(N, X) < 1:
        raise PreconditionError(f"N and X must be positive, got N={N}, X={X}")
    pairs = [(n, sign) for sign in (1, -1) for n in range(N, 2 * N)]
    totals = modulus_totals(pairs, X, 2 * X, settings, method, weighted=True)
    return math.fsum(totals * totals)


def envelope(kind: str, M: int, N: int, X: int) -> float:
    """Return the decay envelope of a diagnostic with every X**o(1) factor set to 1."""
    if kind == "triple":
        return M * N * X + (M * N) ** (2 / 3) * X ** (7 / 6)
    if kind == "moment2":
        return N * X**2 + N ** (1 / 3) * X ** (7 / 3)
    if kind == "moment2n":
        return N + (N * X) ** (1 / 3)
    if kind in ("linnik", "sum"):
        return float(X)
    raise PreconditionError(f"Unknown report kind {kind!r}, expected one of {KINDS}")


def bound_ratio_report(
    grid: Iterable[tuple[int, int, int]],
    kinds: Sequence[str] = ("triple", "moment2", "linnik"),
    settings: Settings | None = None,
    method: str | Method = Method.DIRECT,
) -> list[BoundRatioRow]:
    """Measure every requested quantity on every (M, N, X) triple next to its envelope.

    Args:
        grid: holds the (M, N, X) triples
        kinds: holds the quantities, any of triple, moment2, moment2n and linnik
        settings: holds the budget, block size and thread count
        method: holds the backend name

    Returns:
        one row per triple and kind, in grid order
    """
    grid = list(grid)
    if not grid:
        raise PreconditionError("The report grid must not be empty")
    unknown = [kind for kind in kinds if kind not in KINDS]
    if unknown:
        raise PreconditionError(f"Unknown report kinds {unknown}, expected a subset of {KINDS}")
    rows: list[BoundRatioRow] = []
    for M, N, X in grid:
        moment: MomentResult | None = None
        for kind in kinds:
            if kind == "triple":
                measured = triple_sum(M, N, X, settings, method).total
            elif kind in ("moment2", "moment2n"):
                moment = moment or second_moment(N, X, settings, method)
                measured = moment.value if kind == "moment2" else moment.normalized
            else:
                measured = abs(complete_sum_series(1, 1, X, settings, method).final)
            rows.append(BoundRatioRow(M, N, X, kind, measured, envelope(kind, M, N, X)))
    return rows


def series_rows(series: CompleteSumSeries) -> list[BoundRatioRow]:
    """Return one `sum` row per prefix y with measured T(m, n; y) against the envelope y."""
    return [
        BoundRatioRow(series.m, series.n, y, "sum", float(value), envelope("sum", series.m, series.n, y))
        for y, value in enumerate(series.partial.tolist(), start=1)
    ]


def dyadic_triple_scan(
    X: int, ell: int | None = None, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> DyadicScan:
    """Evaluate the dyadic decomposition that bounds the box discrepancy of the inverse set.

    All pairs with 1 <= |m|, |n| < 2**(ell + 1) and the axis pairs (0, m) are summed in
    one pass over the moduli.

    Args:
        X: holds the modulus limit
        ell: holds the finest dyadic level, ceil(log2 X) when omitted
        settings: holds the budget, block size and thread count
        method: holds the backend name

    Returns:
        the two parts of the bound and the implied discrepancy bound
    """
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    ell = max(0, math.ceil(math.log2(X))) if ell is None else ell
    if ell < 0:
        raise PreconditionError(f"ell must be non-negative, got {ell}")
    limit = 2 ** (ell + 1)
    signed = [*range(-limit + 1, 0), *range(1, limit)]
    pairs = [(m, n) for m in signed for n in signed] + [(0, m) for m in range(1, limit)]
    totals = np.abs(complete_sums(pairs, X, settings, method))
    weights = np.array([2.0 ** -(abs(m).bit_length() + abs(n).bit_length() - 2) for m, n in pairs[: len(signed) ** 2]])
    axis_weights = np.array([2.0 ** -(m.bit_length() - 1) for m in range(1, limit)])
    triple_part = math.fsum(totals[: len(weights)] * weights)
    axis_part = math.fsum(totals[len(weights) :] * axis_weights)
    point_count = totient_table(X, settings).count(X)
    return DyadicScan(X, ell, triple_part, axis_part, point_count)
