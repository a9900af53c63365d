"""This file contains the search for discs with a large count deviation."""

import logging
import math

import numpy as np

from kloos.core._internal import block_ranges, map_blocks
from kloos.core._types import FloatArray
from kloos.core.discrepancy.models import Disc, DiscrepancyResult
from kloos.core.exceptions import PreconditionError
from kloos.core.pointset import PointCloud
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

# radius of the discs that are shrunk onto single points
POINT_RADIUS = 1e-9

# largest admissible radius used by the search
MAX_RADIUS = 0.49

# smallest refinement step for centers and radii
MIN_STEP = 1e-7

# number of candidates that get refined
REFINED_SEEDS = 8

# refinement rounds per candidate
MAX_ROUNDS = 2000


def _squared_distances(cloud: PointCloud, center: tuple[float, float]) -> FloatArray:
    dx = np.abs(cloud.x - center[0])
    dy = np.abs(cloud.y - center[1])
    dx = np.minimum(dx, 1.0 - dx)
    dy = np.minimum(dy, 1.0 - dy)
    return dx * dx + dy * dy


def _deviation(count: int, n: int, R: float) -> float:
    return abs(count / n - math.pi * R * R)


def _radii(n: int) -> list[float]:
    steps = max(1, math.ceil(math.log2(max(n, 2)))) + 1
    return [MAX_RADIUS * 2 ** (-j / 2) for j in range(steps)]


class _CenterScan:
    """Scores every radius of the ladder around a block of centers."""

    def __init__(self, cloud: PointCloud, centers: list[tuple[float, float]], radii: list[float]):
        self.cloud = cloud
        self.centers = centers
        self.radii = np.array(radii)

    def __call__(self, block: tuple[int, int]) -> list[tuple[float, tuple[float, float, float]]]:
        scored = []
        for index in range(*block):
            center = self.centers[index]
            distances = np.sort(_squared_distances(self.cloud, center))
            counts = np.searchsorted(distances, self.radii * self.radii, side="left")
            for R, count in zip(self.radii.tolist(), counts.tolist()):
                scored.append((_deviation(count, self.cloud.count, R), (center[0], center[1], R)))
        return scored


def _value(cloud: PointCloud, candidate: tuple[float, float, float]) -> float:
    x, y, R = candidate
    count = int(np.count_nonzero(_squared_distances(cloud, (x, y)) < R * R))
    return _deviation(count, cloud.count, R)


def _refine(cloud: PointCloud, candidate: tuple[float, float, float], value: float, step: float):
    best = (value, candidate)
    rounds = 0
    while step >= MIN_STEP and rounds < MAX_ROUNDS:
        rounds += 1
        improved = False
        for axis in range(3):
            for sign in (1, -1):
                moved = list(best[1])
                if axis < 2:
                    moved[axis] += sign * step
                else:
                    moved[2] = moved[2] * (1 + 2 * sign * step) if moved[2] else step
                moved[0] = min(1.0, max(0.0, moved[0]))
                moved[1] = min(1.0, max(0.0, moved[1]))
                moved[2] = min(MAX_RADIUS, max(0.0, moved[2]))
                score = _value(cloud, tuple(moved))
                if score > best[0]:
                    best = (score, tuple(moved))
                    improved = True
        if not improved:
            step /= 2
    return best


def ball_discrepancy_search(cloud: PointCloud, seeds: int = 8, settings: Settings | None = None) -> DiscrepancyResult:
    """Search for an open torus disc whose count deviates most from N pi R**2.

    The candidates are a seeds x seeds grid of centers with a geometric ladder of radii and
    tiny discs around up to `seeds` points; the best candidates are refined by moving the
    center and the radius with halving steps. The result is a lower bound.

    Args:
        cloud: holds the points
        seeds: holds the grid resolution, at least 1
        settings: holds the block size and thread count

    Returns:
        the deviation of the best disc found and the disc
    """
    settings = resolve(settings)
    if seeds < 1:
        raise PreconditionError(f"seeds must be positive, got {seeds}")
    if cloud.count < 1:
        raise PreconditionError("The point cloud is empty")
    centers = [((p + 0.5) / seeds, (q + 0.5) / seeds) for p in range(seeds) for q in range(seeds)]
    scan = _CenterScan(cloud, centers, _radii(cloud.count))
    blocks = block_ranges(0, len(centers), max(1, settings.block_size // 16))
    scored = [item for part in map_blocks(scan, blocks, settings.threads) for item in part]
    picks = np.linspace(0, cloud.count - 1, min(seeds, cloud.count)).round().astype(np.int64)
    for index in sorted(set(picks.tolist())):
        candidate = (float(cloud.x[index]) % 1.0, float(cloud.y[index]) % 1.0, POINT_RADIUS)
        scored.append((_value(cloud, candidate), candidate))
    ranked = sorted(range(len(scored)), key=lambda j: (-scored[j][0], j))[:REFINED_SEEDS]
    refined = map_blocks(
        lambda j: _refine(cloud, scored[j][1], scored[j][0], 0.5 / seeds), ranked, settings.threads
    )
    best = (-1.0, scored[ranked[0]][1])
    for value, candidate in refined:
        if value > best[0]:
            best = (value, candidate)
    x, y, R = best[1]
    disc = Disc((x, y), R)
    count = cloud.count_in_disc(disc.center, disc.R)
    logger.debug(f"Disc search picked {disc!r} holding {count} points")
    return DiscrepancyResult(
        _deviation(count, cloud.count, R),
        disc,
        "search",
        count,
        cloud.count,
        closed=False,
        lower_bound=True,
    )
