"""This file contains slow brute force reference implementations.

They loop over Python integers and fractions and never call the fast paths they check, so
the tests and the acceptance report can compare both.
"""

import cmath
import itertools
import math
from fractions import Fraction

import numpy as np

from kloos.core.discrepancy.models import ConvexPolygon
from kloos.core.pointset import PointCloud


def kloosterman(m: int, n: int, c: int) -> complex:
    """Return the defining sum of S(m, n; c) with its imaginary part."""
    total = 0j
    for a in range(1, c + 1):
        if math.gcd(a, c) == 1:
            inverse = pow(a, -1, c) if c > 1 else 1
            total += cmath.exp(2j * math.pi * ((m * a + n * inverse) % c) / c)
    return total


def complete_sum(m: int, n: int, X: int) -> float:
    """Return sum_{c <= X} S(m, n; c)."""
    return math.fsum(kloosterman(m, n, c).real for c in range(1, X + 1))


def second_moment(N: int, X: int) -> float:
    """Return the sum over N <= |n| < 2N of (sum_{c <= X} S(n, 1; c))**2 with two plain loops."""
    total = 0.0
    for n in [*range(-2 * N + 1, -N + 1), *range(N, 2 * N)]:
        inner = 0.0
        for c in range(1, X + 1):
            inner += kloosterman(n, 1, c).real
        total += inner * inner
    return total


def inverse_points(X: int) -> list[tuple[int, int, int]]:
    """Return every (a, b, c) with a b = 1 (mod c) and 1 <= a, b <= c <= X by testing all pairs."""
    return [
        (a, b, c)
        for c in range(1, X + 1)
        for a in range(1, c + 1)
        for b in range(1, c + 1)
        if (a * b - 1) % c == 0
    ]


def _coordinates(cloud: PointCloud) -> list[tuple[Fraction, Fraction]]:
    return [cloud.coordinates(i) for i in range(cloud.count)]


def _arcs(values: list[Fraction], closed: bool) -> list[tuple[Fraction, Fraction]]:
    size = len(values)
    if closed:
        return [(values[k], (values[(k + t) % size] - values[k]) % 1) for k in range(size) for t in range(size)]
    return [
        (values[k], Fraction(1) if t == size else (values[(k + t) % size] - values[k]) % 1)
        for k in range(size)
        for t in range(1, size + 1)
    ]


def _in_arc(t: Fraction, start: Fraction, length: Fraction, closed: bool) -> bool:
    end = start + length
    if closed:
        return start <= t <= end or t <= end - 1
    return start < t < end or t < end - 1


def _membership(arcs: list[tuple[Fraction, Fraction]], coordinates: list[Fraction], closed: bool) -> np.ndarray:
    return np.array(
        [[_in_arc(t, start, length, closed) for t in coordinates] for start, length in arcs], dtype=np.int32
    )


def box_discrepancy(cloud: PointCloud, chunk: int = 256) -> float:
    """Return max |count / N - measure| over every closed and open box with sides through point coordinates.

    Each axis contributes all arcs between two coordinates; the counts of all boxes come from one
    product of the two membership matrices.
    """
    points = _coordinates(cloud)
    xs = sorted({x for x, _ in points})
    ys = sorted({y for _, y in points})
    n = cloud.count
    best = 0.0
    for closed in (True, False):
        arcs_x, arcs_y = _arcs(xs, closed), _arcs(ys, closed)
        members_x = _membership(arcs_x, [x for x, _ in points], closed)
        members_y = _membership(arcs_y, [y for _, y in points], closed)
        lengths_x = np.array([float(length) for _, length in arcs_x])
        lengths_y = np.array([float(length) for _, length in arcs_y])
        for start in range(0, len(arcs_x), chunk):
            counts = members_x[start : start + chunk] @ members_y.T
            measures = np.outer(lengths_x[start : start + chunk], lengths_y)
            deviation = counts / n - measures if closed else measures - counts / n
            best = max(best, float(deviation.max()))
    return best


def convex_count(cloud: PointCloud, polygon: ConvexPolygon) -> int:
    """Count the points on or inside the polygon with fraction arithmetic."""
    vertices = polygon.vertices
    total = 0
    for x, y in _coordinates(cloud):
        inside = True
        for (x0, y0), (x1, y1) in zip(vertices, vertices[1:] + vertices[:1]):
            if (x1 - x0) * (y - y0) - (y1 - y0) * (x - x0) < 0:
                inside = False
                break
        total += inside
    return total


def min_pairwise_distance(cloud: PointCloud) -> float:
    """Return the smallest torus distance over all pairs."""
    best = math.inf
    for (x0, y0), (x1, y1) in itertools.combinations(zip(cloud.x.tolist(), cloud.y.tolist()), 2):
        dx, dy = abs(x0 - x1), abs(y0 - y1)
        best = min(best, math.hypot(min(dx, 1 - dx), min(dy, 1 - dy)))
    return best


def square_inside(polygon: ConvexPolygon, x0: Fraction, y0: Fraction, side: Fraction) -> bool:
    """Return whether the closed square with lower left corner (x0, y0) lies in the polygon."""
    vertices = polygon.vertices
    for x, y in ((x0, y0), (x0 + side, y0), (x0, y0 + side), (x0 + side, y0 + side)):
        for (ax, ay), (bx, by) in zip(vertices, vertices[1:] + vertices[:1]):
            if (bx - ax) * (y - ay) - (by - ay) * (x - ax) < 0:
                return False
    return True
