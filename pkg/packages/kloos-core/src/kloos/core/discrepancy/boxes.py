"""This file contains the extreme (torus) box discrepancy of a point cloud.

The supremum of |count / N - measure| over torus boxes is attained in the limit by boxes whose
sides pass through point coordinates: closed boxes for the largest excess of points and open
boxes for the largest deficit. Both families are indexed by positions in the sorted distinct
coordinates ("rank space").

exact-small scans the whole family in O(N**3) numpy work. search evaluates seeded rank space
boxes and improves the best ones coordinate by coordinate, so its value is a lower bound.
"""

import logging
from fractions import Fraction

import numpy as np

from kloos.core._internal import block_ranges, map_blocks
from kloos.core._types import FloatArray, IntArray
from kloos.core.discrepancy.models import Box, DiscrepancyResult
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.pointset import PointCloud
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

MODES = ("exact-small", "search", "auto")

# grid resolution of the search seeds per axis
SEARCH_GRID = 6

# number of seeds that get refined
SEARCH_REFINED = 8

# largest empty strips used as seeds per axis
SEARCH_GAPS = 3


class RankSpace:
    """The sorted distinct coordinates of a point cloud and the rank of every point.

    A closed candidate (k, t, i, s) is [v_k, v_{k+t}] x [w_i, w_{i+s}] with cyclic indices and
    0 <= t < K. An open candidate is (v_k, v_{k+t}) x (w_i, w_{i+s}) with 1 <= t <= K, where
    t = K is the whole circle without the line through v_k.
    """

    def __init__(self, cloud: PointCloud):
        self.cloud: PointCloud = cloud
        self.v, first_x, self.rx = np.unique(cloud.x, return_index=True, return_inverse=True)
        self.w, first_y, self.ry = np.unique(cloud.y, return_index=True, return_inverse=True)
        self.rx = self.rx.reshape(-1)
        self.ry = self.ry.reshape(-1)
        self.first_x: IntArray = first_x
        self.first_y: IntArray = first_y
        self.K: int = len(self.v)
        self.L: int = len(self.w)

    def grid(self) -> IntArray:
        """Return the point counts per (x rank, y rank) cell."""
        cells = np.zeros((self.K, self.L), dtype=np.int64)
        np.add.at(cells, (self.rx, self.ry), 1)
        return cells

    def exact_x(self, rank: int) -> Fraction:
        return self.cloud.coordinates(int(self.first_x[rank % self.K]))[0]

    def exact_y(self, rank: int) -> Fraction:
        return self.cloud.coordinates(int(self.first_y[rank % self.L]))[1]

    def arc_length(self, values: FloatArray, start: int, steps: int, closed: bool) -> float:
        if not closed and steps == len(values):
            return 1.0
        return float((values[(start + steps) % len(values)] - values[start]) % 1.0)

    def value(self, k: int, t: int, i: int, s: int, closed: bool) -> float:
        """Return the float deviation of one candidate, positive when it is an excess for closed
        candidates and a deficit for open ones."""
        dx = (self.rx - k) % self.K
        dy = (self.ry - i) % self.L
        if closed:
            count = int(np.count_nonzero((dx <= t) & (dy <= s)))
        else:
            count = int(np.count_nonzero((dx >= 1) & (dx < t) & (dy >= 1) & (dy < s)))
        measure = self.arc_length(self.v, k, t, closed) * self.arc_length(self.w, i, s, closed)
        fraction = count / self.cloud.count
        return fraction - measure if closed else measure - fraction

    def box(self, k: int, t: int, i: int, s: int, closed: bool) -> Box:
        """Return the exact box of a candidate."""
        xi, zeta = self.exact_x(k), self.exact_y(i)
        alpha = Fraction(1) if not closed and t == self.K else (self.exact_x(k + t) - xi) % 1
        beta = Fraction(1) if not closed and s == self.L else (self.exact_y(i + s) - zeta) % 1
        return Box(xi, zeta, alpha, beta)


def _exact_result(space: RankSpace, candidate: tuple[int, int, int, int, bool], mode: str) -> DiscrepancyResult:
    k, t, i, s, closed = candidate
    box = space.box(k, t, i, s, closed)
    count = space.cloud.count_in_box(box, closed)
    deviation = Fraction(count, space.cloud.count) - box.measure
    return DiscrepancyResult(
        float(abs(deviation)),
        box,
        mode,
        count,
        space.cloud.count,
        closed=closed,
        lower_bound=mode == "search",
    )


class _ExactScan:
    """Evaluates every candidate with a fixed x start k, for a block of starts."""

    def __init__(self, space: RankSpace):
        self.space = space
        self.n = space.cloud.count
        self.rows = np.cumsum(space.grid(), axis=1)

    def _excess(self, k: int) -> tuple[float, tuple]:
        space, n = self.space, self.n
        rows = np.roll(self.rows, -k, axis=0)
        prefix = np.cumsum(rows, axis=0)
        lengths = (np.roll(space.v, -k) - space.v[k]) % 1.0
        aw = lengths[:, None] * space.w[None, :]
        shifted = np.zeros_like(prefix)
        shifted[:, 1:] = prefix[:, :-1]
        f = prefix / n - aw
        g = shifted / n - aw
        inner = f - np.minimum.accumulate(g, axis=1)
        suffix = np.full_like(g, np.inf)
        suffix[:, :-1] = np.minimum.accumulate(g[:, ::-1], axis=1)[:, ::-1][:, 1:]
        outer = f - suffix + (prefix[:, -1:] / n - lengths[:, None])
        best = (-np.inf, ())
        for table, wrap in ((inner, False), (outer, True)):
            t, j = np.unravel_index(int(np.argmax(table)), table.shape)
            if table[t, j] > best[0]:
                if wrap:
                    i = j + 1 + int(np.argmin(g[t, j + 1 :]))
                    s = (j - i) % space.L
                else:
                    i = int(np.argmin(g[t, : j + 1]))
                    s = j - i
                best = (float(table[t, j]), (k, int(t), i, int(s), True))
        return best

    def _deficit(self, k: int) -> tuple[float, tuple]:
        space, n = self.space, self.n
        rows = np.roll(self.rows, -k, axis=0)
        inside = np.cumsum(rows, axis=0) - rows[0]
        lengths = (np.roll(space.v, -k - 1) - space.v[k]) % 1.0
        lengths[-1] = 1.0
        aw = lengths[:, None] * space.w[None, :]
        shifted = np.zeros_like(inside)
        shifted[:, 1:] = inside[:, :-1]
        upper = aw - shifted / n
        lower = aw - inside / n
        prefix_min = np.full_like(lower, np.inf)
        prefix_min[:, 1:] = np.minimum.accumulate(lower, axis=1)[:, :-1]
        inner = upper - prefix_min
        suffix_min = np.minimum.accumulate(lower[:, ::-1], axis=1)[:, ::-1]
        outer = upper - suffix_min + (lengths[:, None] - inside[:, -1:] / n)
        best = (-np.inf, ())
        for table, wrap in ((inner, False), (outer, True)):
            r, j = np.unravel_index(int(np.argmax(table)), table.shape)
            if table[r, j] > best[0]:
                if wrap:
                    i = j + int(np.argmin(lower[r, j:]))
                    s = (j - i) % space.L or space.L
                else:
                    i = int(np.argmin(lower[r, :j]))
                    s = j - i
                best = (float(table[r, j]), (k, int(r) + 1, i, int(s), False))
        return best

    def __call__(self, block: tuple[int, int]) -> tuple[float, tuple]:
        best = (-np.inf, ())
        for k in range(*block):
            for value, candidate in (self._excess(k), self._deficit(k)):
                if value > best[0]:
                    best = (value, candidate)
        return best


def _exact_small(cloud: PointCloud, settings: Settings) -> DiscrepancyResult:
    if cloud.count > settings.exact_box_cap:
        logger.warning(f"Refusing an exact box discrepancy scan of {cloud.count} points")
        raise CapacityError("exact box discrepancy points", settings.exact_box_cap, cloud.count)
    space = RankSpace(cloud)
    blocks = block_ranges(0, space.K, max(1, settings.block_size // 16))
    best = (-np.inf, ())
    for value, candidate in map_blocks(_ExactScan(space), blocks, settings.threads):
        if value > best[0]:
            best = (value, candidate)
    logger.debug(f"Exact box scan over {space.K} x {space.L} ranks picked {best[1]}")
    return _exact_result(space, best[1], "exact-small")


def _spread(count: int, cells: int, upper: int) -> list[int]:
    return sorted({min(upper, round(p * count / cells)) for p in range(cells)})


def _seeds(space: RankSpace) -> list[tuple[int, int, int, int, bool]]:
    K, L = space.K, space.L
    seeds: list[tuple[int, int, int, int, bool]] = []
    starts_x, starts_y = _spread(K, SEARCH_GRID, K - 1), _spread(L, SEARCH_GRID, L - 1)
    sizes_x = sorted({max(1, round(q * K / SEARCH_GRID)) for q in range(1, SEARCH_GRID + 1)})
    sizes_y = sorted({max(1, round(q * L / SEARCH_GRID)) for q in range(1, SEARCH_GRID + 1)})
    for k in starts_x:
        for i in starts_y:
            for t in sizes_x:
                for s in sizes_y:
                    seeds.append((k, min(t, K) - 1, i, min(s, L) - 1, True))
                    seeds.append((k, min(t, K), i, min(s, L), False))
    gaps_x = np.argsort(-((np.roll(space.v, -1) - space.v) % 1.0), kind="stable")[:SEARCH_GAPS]
    gaps_y = np.argsort(-((np.roll(space.w, -1) - space.w) % 1.0), kind="stable")[:SEARCH_GAPS]
    seeds.extend((int(k), 1, 0, L, False) for k in gaps_x)
    seeds.extend((0, K, int(i), 1, False) for i in gaps_y)
    seeds.append((int(space.rx[0]), 0, int(space.ry[0]), 0, True))
    return seeds


def _refine(space: RankSpace, seed: tuple[int, int, int, int, bool], value: float) -> tuple[float, tuple]:
    k, t, i, s, closed = seed
    lo_t, hi_t = (0, space.K - 1) if closed else (1, space.K)
    lo_s, hi_s = (0, space.L - 1) if closed else (1, space.L)
    step = max(1, max(space.K, space.L) // 8)
    best = (value, seed)
    while True:
        improved = False
        for axis in range(4):
            for sign in (1, -1):
                k2, t2, i2, s2 = k, t, i, s
                if axis == 0:
                    k2 = (k + sign * step) % space.K
                elif axis == 1:
                    t2 = min(hi_t, max(lo_t, t + sign * step))
                elif axis == 2:
                    i2 = (i + sign * step) % space.L
                else:
                    s2 = min(hi_s, max(lo_s, s + sign * step))
                candidate = (k2, t2, i2, s2, closed)
                score = space.value(*candidate)
                if score > best[0]:
                    best = (score, candidate)
                    k, t, i, s = k2, t2, i2, s2
                    improved = True
        if not improved:
            if step == 1:
                return best
            step //= 2


def _search(cloud: PointCloud, settings: Settings) -> DiscrepancyResult:
    space = RankSpace(cloud)
    seeds = _seeds(space)
    blocks = block_ranges(0, len(seeds), settings.block_size)
    scored = [
        value
        for part in map_blocks(lambda block: [space.value(*seeds[j]) for j in range(*block)], blocks, settings.threads)
        for value in part
    ]
    ranked = sorted(range(len(seeds)), key=lambda j: (-scored[j], j))[:SEARCH_REFINED]
    refined = map_blocks(lambda j: _refine(space, seeds[j], scored[j]), ranked, settings.threads)
    best = (-np.inf, ())
    for value, candidate in refined:
        if value > best[0]:
            best = (value, candidate)
    logger.debug(f"Box search over {len(seeds)} seeds picked {best[1]}")
    return _exact_result(space, best[1], "search")


def box_discrepancy(cloud: PointCloud, mode: str = "auto", settings: Settings | None = None) -> DiscrepancyResult:
    """Return the extreme box discrepancy of a point cloud and a box that attains it.

    Args:
        cloud: holds the points
        mode: holds exact-small, search or auto (exact-small up to the configured cap)
        settings: holds the exact scan cap, block size and thread count

    Returns:
        the exact deviation of the reported witness; a lower bound in search mode
    """
    settings = resolve(settings)
    if cloud.count < 1:
        raise PreconditionError("The point cloud is empty")
    if mode not in MODES:
        raise PreconditionError(f"Unknown mode {mode!r}, expected one of {MODES}")
    if mode == "auto":
        mode = "exact-small" if cloud.count <= settings.exact_box_cap else "search"
    if mode == "exact-small":
        return _exact_small(cloud, settings)
    return _search(cloud, settings)
