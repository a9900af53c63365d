"""This file contains the seeded random inputs: uniform point clouds and convex polygons."""

import logging
import math

import numpy as np

from kloos.core.discrepancy.models import ConvexPolygon
from kloos.core.exceptions import PreconditionError
from kloos.core.pointset import PointCloud

logger = logging.getLogger("kloos")

# coordinates are multiples of 2**-31 in [0, 1)
BASELINE_BITS = 31

# polygon vertices are rounded to multiples of 2**-12
VERTEX_BITS = 12


def random_baseline(n: int, seed: int = 0) -> PointCloud:
    """Return n independent uniform points on the torus.

    The points are drawn with numpy's PCG64 generator, so a seed always gives the same cloud.

    Args:
        n: holds the number of points
        seed: holds the generator seed

    Returns:
        the point cloud with denominator 2**31
    """
    if n < 1:
        raise PreconditionError(f"n must be positive, got {n}")
    rng = np.random.default_rng(seed)
    numerators = rng.integers(0, 2**BASELINE_BITS, size=(n, 2), dtype=np.int64)
    den = np.full(n, 2**BASELINE_BITS, dtype=np.int64)
    logger.debug(f"Drew {n} uniform points with seed {seed}")
    return PointCloud(numerators[:, 0], numerators[:, 1], den, label=f"random({n}, seed={seed})")


def regular_polygon(center: tuple[float, float], radius: float, sides: int, phase: float) -> ConvexPolygon:
    """Return a polygon with vertices on a circle, rounded to multiples of 2**-12."""
    scale = 2**VERTEX_BITS
    vertices = []
    for k in range(sides):
        angle = phase + 2 * math.pi * k / sides
        x = round((center[0] + radius * math.cos(angle)) * scale) / scale
        y = round((center[1] + radius * math.sin(angle)) * scale) / scale
        vertices.append((x, y))
    return ConvexPolygon(vertices)


def random_polygons(count: int, seed: int = 0) -> list[ConvexPolygon]:
    """Return `count` convex polygons with 3 to 8 vertices inside the open unit square.

    Each polygon is inscribed in a circle with radius in [0.05, 0.45] that keeps a margin of
    0.02 to the boundary.
    """
    if count < 0:
        raise PreconditionError(f"count must be non-negative, got {count}")
    rng = np.random.default_rng(seed)
    polygons = []
    for _ in range(count):
        radius = float(rng.uniform(0.05, 0.45))
        center = tuple(float(c) for c in rng.uniform(radius + 0.02, 0.98 - radius, size=2))
        sides = int(rng.integers(3, 9))
        polygons.append(regular_polygon(center, radius, sides, float(rng.uniform(0, 2 * math.pi))))
    logger.debug(f"Drew {count} convex polygons with seed {seed}")
    return polygons
