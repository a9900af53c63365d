"""This file contains the packing of convex regions with dyadic squares and the counts built on it.

At level i the grid squares have side 2**-i and share the offsets of every other level, so a
level i square lies in exactly one level i - 1 square. For every row of the grid the squares
that fit into a convex region form one run of consecutive columns; a float estimate of that
run is corrected with exact membership tests. The cover squares are half open when points are
assigned to them, so no point is counted twice.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from kloos.core._internal import as_fraction, floor_scaled
from kloos.core._types import BoolArray, IntArray, RealLike
from kloos.core.discrepancy.functionals import MAX_COVER_DEPTH, isotropic_parameters
from kloos.core.discrepancy.models import ConvexCount, DyadicCover, HyperbolaBound, HyperbolaRegion, Region
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.pointset import PointCloud, PointSet

logger = logging.getLogger("kloos")

# the largest number of grid rows a single cover level may scan
MAX_COVER_ROWS = 2**22

# slack constant of the hyperbola region floor (log X - C) / X
HYPERBOLA_SLACK = 2.5

_EMPTY_RUNS = np.empty((0, 3), dtype=np.int64)


class _Level:
    """Exact square tests for one grid level."""

    def __init__(self, region: Region, level: int, offsets: tuple[Fraction, Fraction]):
        self.region = region
        self.level = level
        self.k = 2**level
        self.offsets = offsets
        self.scale = math.lcm(offsets[0].denominator, offsets[1].denominator)
        self.den = self.scale * self.k
        self.u_min = math.ceil(-offsets[0] * self.k)
        self.u_max = math.floor((1 - offsets[0]) * self.k) - 1
        self.v_min = math.ceil(-offsets[1] * self.k)
        self.v_max = math.floor((1 - offsets[1]) * self.k) - 1

    def fits(self, u: IntArray, v: IntArray) -> BoolArray:
        x_num = int(self.offsets[0] * self.den) + u * self.scale
        y_num = int(self.offsets[1] * self.den) + v * self.scale
        side = np.full(len(u), self.scale, dtype=np.int64)
        den = np.full(len(u), self.den, dtype=np.int64)
        inside = (u >= self.u_min) & (u <= self.u_max)
        return inside & self.region.square_inside(x_num, y_num, side, den)

    def row_range(self) -> tuple[int, int]:
        """Return the first and last row the region can reach, bounded by MAX_COVER_ROWS."""
        y_lo, y_hi = self.region.y_bounds()
        first = max(self.v_min, math.floor((y_lo - float(self.offsets[1])) * self.k) - 1)
        last = min(self.v_max, math.ceil((y_hi - float(self.offsets[1])) * self.k) + 1)
        if last - first + 1 > MAX_COVER_ROWS:
            logger.warning(f"Refusing to scan {last - first + 1} rows at cover level {self.level}")
            raise CapacityError("dyadic cover rows", MAX_COVER_ROWS, last - first + 1)
        return first, last

    def rows(self) -> IntArray:
        first, last = self.row_range()
        return np.arange(first, last + 1, dtype=np.int64)

    def spans(self) -> IntArray:
        """Return (v, u_lo, u_hi) for every row that holds at least one fitting square."""
        v = self.rows()
        if not len(v):
            return _EMPTY_RUNS
        y0 = float(self.offsets[1]) + v / self.k
        left, right = self.region.row_span(y0, y0 + 1 / self.k)
        finite = np.isfinite(left) & np.isfinite(right) & (left <= right)
        x_off = float(self.offsets[0])
        with np.errstate(invalid="ignore", over="ignore"):
            lo = np.where(finite, np.ceil((np.where(finite, left, 0) - x_off) * self.k), 1).astype(np.int64)
            hi = np.where(finite, np.floor((np.where(finite, right, 0) - x_off) * self.k) - 1, 0).astype(np.int64)
            mid = np.where(finite, np.floor((np.where(finite, left + right, 0) / 2 - x_off) * self.k), 0)
        lo = np.maximum(lo, self.u_min)
        hi = np.minimum(hi, self.u_max)
        mid = np.clip(mid.astype(np.int64), self.u_min, self.u_max)
        retry = finite & (lo > hi) & self.fits(mid, v)
        lo, hi = np.where(retry, mid, lo), np.where(retry, mid, hi)
        lo, hi = self._shrink(lo, hi, v)
        lo, hi = self._grow(lo, hi, v)
        keep = lo <= hi
        return np.column_stack((v[keep], lo[keep], hi[keep]))

    def _shrink(self, lo: IntArray, hi: IntArray, v: IntArray) -> tuple[IntArray, IntArray]:
        while True:
            live = lo <= hi
            bad_lo = live & ~self.fits(lo, v)
            bad_hi = live & ~self.fits(hi, v)
            if not (bad_lo.any() or bad_hi.any()):
                return lo, hi
            lo = lo + bad_lo
            hi = hi - (bad_hi & ~bad_lo)

    def _grow(self, lo: IntArray, hi: IntArray, v: IntArray) -> tuple[IntArray, IntArray]:
        while True:
            live = lo <= hi
            left = live & self.fits(lo - 1, v)
            right = live & self.fits(hi + 1, v)
            if not (left.any() or right.any()):
                return lo, hi
            lo = lo - left
            hi = hi + right


def _subtract_children(spans: IntArray, parents: IntArray) -> IntArray:
    """Remove the children of the parent runs from the level runs, row by row."""
    if not len(parents):
        return spans
    lookup = {int(v): (int(lo), int(hi)) for v, lo, hi in parents}
    runs: list[tuple[int, int, int]] = []
    for v, lo, hi in spans.tolist():
        parent = lookup.get(v // 2)
        if parent is None:
            runs.append((v, lo, hi))
            continue
        child_lo, child_hi = 2 * parent[0], 2 * parent[1] + 1
        if lo < child_lo:
            runs.append((v, lo, child_lo - 1))
        if hi > child_hi:
            runs.append((v, child_hi + 1, hi))
    return np.array(runs, dtype=np.int64).reshape(-1, 3)


def dyadic_cover(region: Region, M: int, offsets: tuple[RealLike, RealLike] = (0, 0)) -> DyadicCover:
    """Pack a convex region with the dyadic families B_1..B_M.

    Args:
        region: holds a convex polygon or the hyperbola region
        M: holds the depth, 1 <= M <= 30
        offsets: holds the grid offsets, each in [0, 1)

    Returns:
        the cover with its families and the full fitting runs of every level

    Raises:
        CapacityError: when the deepest level would scan more than MAX_COVER_ROWS rows
    """
    if not 1 <= M <= MAX_COVER_DEPTH:
        raise PreconditionError(f"The cover depth must lie in [1, {MAX_COVER_DEPTH}], got {M}")
    shift = (as_fraction(offsets[0]), as_fraction(offsets[1]))
    if not all(0 <= offset < 1 for offset in shift):
        raise PreconditionError(f"Offsets must lie in [0, 1), got {offsets}")
    # the deepest level spans the most rows
    _Level(region, M, shift).row_range()
    families: list[IntArray] = []
    spans: list[IntArray] = []
    for level in range(1, M + 1):
        full = _Level(region, level, shift).spans()
        families.append(_subtract_children(full, spans[-1]) if spans else full)
        spans.append(full)
    cover = DyadicCover(region, M, shift, families, spans)
    logger.debug(f"Built {cover!r}")
    return cover


def cover_mask(cloud: PointCloud, cover: DyadicCover, level: int) -> BoolArray:
    """Return which points fall into a half open square of B_level."""
    runs = cover.families[level - 1]
    if not len(runs) or not cloud.count:
        return np.zeros(cloud.count, dtype=np.bool_)
    k = 2**level
    u = floor_scaled(cloud.x_num, cloud.den, cover.offsets[0], k)
    v = floor_scaled(cloud.y_num, cloud.den, cover.offsets[1], k)
    v_first = int(runs[:, 0].min())
    width = int(runs[:, 0].max()) - v_first + 1
    bounds = np.tile(np.array([1, 0, 1, 0], dtype=np.int64), (width, 1))
    slot = np.zeros(width, dtype=np.int64)
    for row, lo, hi in runs.tolist():
        index = row - v_first
        bounds[index, 2 * slot[index]], bounds[index, 2 * slot[index] + 1] = lo, hi
        slot[index] += 1
    index = v - v_first
    in_rows = (index >= 0) & (index < width)
    row = bounds[np.where(in_rows, index, 0)]
    first = (u >= row[:, 0]) & (u <= row[:, 1])
    second = (u >= row[:, 2]) & (u <= row[:, 3])
    return in_rows & (first | second)


def convex_count(
    cloud: PointCloud,
    region: Region,
    depth: int | None = None,
    offsets: tuple[RealLike, RealLike] = (0, 0),
) -> ConvexCount:
    """Count the points in a convex region exactly and from below through its dyadic cover.

    Args:
        cloud: holds the points
        region: holds the convex region
        depth: holds the cover depth, the isotropic choice for S(X) and 8 otherwise
        offsets: holds the grid offsets

    Returns:
        the exact count and the cover bound, which never exceeds it
    """
    if depth is None:
        depth = isotropic_parameters(cloud.X)[1] if isinstance(cloud, PointSet) else 8
    exact = int(region.contains(cloud.x_num, cloud.y_num, cloud.den).sum())
    cover = dyadic_cover(region, depth, offsets)
    bound = sum(int(cover_mask(cloud, cover, level).sum()) for level in range(1, depth + 1))
    logger.debug(f"Region {region!r} holds {exact} points, the cover accounts for {bound}")
    return ConvexCount(exact, bound, cover)


def hyperbola_convex_lower_bound(ps: PointSet, constant: float = HYPERBOLA_SLACK) -> HyperbolaBound:
    """Measure the discrepancy of the convex region x y >= 1/X against the floor (log X - constant) / X.

    The region holds every point except the ones below the hyperbola and has area
    1 - (1 + log X) / X.
    """
    if ps.X < 3:
        raise PreconditionError(f"X must be at least 3, got {ps.X}")
    region = HyperbolaRegion(ps.X)
    count = int(region.contains(ps.a, ps.b, ps.c).sum())
    return HyperbolaBound(ps.X, count, ps.count, region.area, constant)
