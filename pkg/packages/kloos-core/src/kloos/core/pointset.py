"""This file contains the modular inverse point set S(X) and the queries answered on it.

A point is stored as integer numerators over an integer denominator, so every box and region
membership test is an exact rational comparison. Only disc membership and distances use
floats.
"""

import functools
import io
import logging
import math
import pathlib
from collections.abc import Iterator, Sequence
from fractions import Fraction
from typing import IO

import numpy as np

from kloos.core._internal import block_ranges, hyperbola_sign, linear_sign, map_blocks
from kloos.core._types import BoolArray, ComplexArray, FloatArray, IntArray, Pair, Point
from kloos.core.arith import totient_table, unit_pairs
from kloos.core.discrepancy.models import Box, Disc
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.kloosterman import CHUNK_ELEMENTS, TWO_PI
from kloos.core.models import InversePair
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

# edge length of the svg canvas
SVG_SIZE = 1000


def _frozen(array: Sequence[int] | IntArray) -> IntArray:
    out = np.array(array, dtype=np.int64)
    out.setflags(write=False)
    return out


class PointCloud:
    """Class that represents a finite set of rational points (x_num / den, y_num / den).

    Both the modular inverse set and the random baselines are point clouds, so every
    counting and discrepancy routine accepts either.
    """

    def __init__(self, x_num: IntArray, y_num: IntArray, den: IntArray, label: str = "points"):
        self.x_num: IntArray = _frozen(x_num)
        self.y_num: IntArray = _frozen(y_num)
        self.den: IntArray = _frozen(den)
        if not len(self.x_num) == len(self.y_num) == len(self.den):
            raise PreconditionError("Numerators and denominators must have equal lengths")
        if len(self.den) and int(self.den.min()) < 1:
            raise PreconditionError("Denominators must be positive")
        self.label: str = label

    @property
    def count(self) -> int:
        return len(self.den)

    def __len__(self) -> int:
        return self.count

    @functools.cached_property
    def x(self) -> FloatArray:
        return self.x_num / self.den

    @functools.cached_property
    def y(self) -> FloatArray:
        return self.y_num / self.den

    def _arc_mask(self, num: IntArray, start: Fraction, length: Fraction, closed: bool) -> BoolArray:
        end = start + length
        lo = linear_sign([1, -start], [num, self.den])
        hi = linear_sign([1, -end], [num, self.den])
        wrap = linear_sign([1, -(end - 1)], [num, self.den])
        if closed:
            return ((lo >= 0) & (hi <= 0)) | (wrap <= 0)
        return ((lo > 0) & (hi < 0)) | (wrap < 0)

    def box_mask(self, box: Box, closed: bool = True) -> BoolArray:
        """Return which points lie in the box, read as a closed or as an open set."""
        return self._arc_mask(self.x_num, box.xi, box.alpha, closed) & self._arc_mask(
            self.y_num, box.zeta, box.beta, closed
        )

    def count_in_box(self, box: Box, closed: bool = True) -> int:
        """Return the exact number of points in the torus box.

        Args:
            box: holds the box
            closed: counts the closed box, otherwise its interior

        Returns:
            the number of points
        """
        return int(self.box_mask(box, closed).sum())

    def count_in_boxes(self, boxes: Sequence[Box], closed: bool = True) -> list[int]:
        return [self.count_in_box(box, closed) for box in boxes]

    def disc_mask(self, disc: Disc) -> BoolArray:
        cx, cy = disc.center
        dx = np.abs(self.x - cx)
        dy = np.abs(self.y - cy)
        dx = np.minimum(dx, 1.0 - dx)
        dy = np.minimum(dy, 1.0 - dy)
        return dx * dx + dy * dy < disc.R * disc.R

    def count_in_disc(self, center: Point, R: float) -> int:
        """Return the number of points at torus distance less than R from the center."""
        return int(self.disc_mask(Disc(center, R)).sum())

    def _phases(self, m1: IntArray, m2: IntArray, rows: slice | IntArray = slice(None)) -> IntArray:
        den = self.den[rows]
        first = np.mod(m1[:, None], den[None, :]) * self.x_num[rows][None, :]
        second = np.mod(m2[:, None], den[None, :]) * self.y_num[rows][None, :]
        return (np.mod(first, den[None, :]) + np.mod(second, den[None, :])) % den[None, :]

    def weyl_sum(self, m1: int, m2: int) -> complex:
        """Return the sum of e(m1 x + m2 y) over all points.

        Examples:
            >>> round(generate(4).weyl_sum(1, 1).real, 9)
            -1.0
        """
        phase = self._phases(np.array([m1], dtype=np.int64), np.array([m2], dtype=np.int64))[0]
        angles = TWO_PI * phase / self.den
        return complex(math.fsum(np.cos(angles)), math.fsum(np.sin(angles)))

    def weyl_sums(self, vectors: Sequence[Pair]) -> ComplexArray:
        """Return the Weyl sum of every frequency vector, evaluated in chunks of points."""
        if not len(vectors):
            return np.empty(0, dtype=np.complex128)
        array = np.asarray(vectors, dtype=np.int64).reshape(-1, 2)
        out = np.zeros(len(array), dtype=np.complex128)
        step = max(1, CHUNK_ELEMENTS // len(array))
        for start in range(0, self.count, step):
            rows = slice(start, start + step)
            angles = TWO_PI * self._phases(array[:, 0], array[:, 1], rows) / self.den[rows][None, :]
            out += np.cos(angles).sum(axis=1) + 1j * np.sin(angles).sum(axis=1)
        return out

    def coordinates(self, index: int) -> tuple[Fraction, Fraction]:
        """Return the exact coordinates of the point at `index`."""
        den = int(self.den[index])
        return Fraction(int(self.x_num[index]), den), Fraction(int(self.y_num[index]), den)

    def witness(self, index: int) -> tuple[Fraction, Fraction] | InversePair:
        """Return the point at `index` in its most specific form, plain coordinates for a cloud."""
        return self.coordinates(index)

    def min_pairwise_distance(self) -> tuple[float, tuple]:
        """Return the smallest torus distance between two points and the two points.

        The points are sorted by x and every point is compared with its k-th successor
        for k = 1, 2, ... until the smallest x gap of the k-th successors exceeds the best
        distance found so far.
        """
        if self.count < 2:
            raise PreconditionError(f"At least two points are required, got {self.count}")
        order = np.argsort(self.x, kind="stable")
        xs, ys = self.x[order], self.y[order]
        positions = np.arange(self.count)
        best, pair = math.inf, (0, 1)
        for k in range(1, self.count):
            successor = (positions + k) % self.count
            gap = np.mod(xs[successor] - xs, 1.0)
            if gap.min() >= best:
                break
            dy = np.abs(ys[successor] - ys)
            distance = np.hypot(np.minimum(gap, 1.0 - gap), np.minimum(dy, 1.0 - dy))
            index = int(np.argmin(distance))
            if distance[index] < best:
                best = float(distance[index])
                pair = tuple(sorted((int(order[index]), int(order[successor[index]]))))
        logger.debug(f"Minimal distance {best} between points {pair}")
        return best, (self.witness(pair[0]), self.witness(pair[1]))

    def subset(self, indices: Sequence[int] | IntArray, label: str | None = None) -> "PointCloud":
        """Return the points at the given indices as a new point cloud."""
        indices = np.asarray(indices, dtype=np.int64)
        return PointCloud(self.x_num[indices], self.y_num[indices], self.den[indices], label or self.label)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(label={self.label}, count={self.count})>"


class PointSet(PointCloud):
    """Class that represents S(X), all points (a/c, b/c) with a b = 1 (mod c) and 1 <= a, b <= c <= X.

    The points are ordered by c and then by a.
    """

    def __init__(self, X: int, a: IntArray, b: IntArray, c: IntArray):
        super().__init__(a, b, c, label=f"S({X})")
        self.X: int = X

    @property
    def a(self) -> IntArray:
        return self.x_num

    @property
    def b(self) -> IntArray:
        return self.y_num

    @property
    def c(self) -> IntArray:
        return self.den

    def __iter__(self) -> Iterator[InversePair]:
        for a, b, c in zip(self.a.tolist(), self.b.tolist(), self.c.tolist()):
            yield InversePair(a, b, c)

    def __contains__(self, item: InversePair | tuple[int, int, int]) -> bool:
        a, b, c = item
        return 1 <= c <= self.X and 1 <= a <= c and 1 <= b <= c and (a * b - 1) % c == 0

    def witness(self, index: int) -> InversePair:
        return InversePair(int(self.a[index]), int(self.b[index]), int(self.c[index]))

    def hyperbola_points(self) -> list[InversePair]:
        """Return the points with (a/c)(b/c) < 1/X, which are exactly (1, 1, c) for sqrt(X) < c <= X."""
        below = np.flatnonzero(hyperbola_sign(self.X, self.a, self.b, self.c) < 0)
        return [self.witness(int(index)) for index in below]

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(X={self.X}, count={self.count})>"


def generate(X: int, settings: Settings | None = None) -> PointSet:
    """Generate S(X).

    Args:
        X: holds the largest modulus
        settings: holds the point cap, block size and thread count

    Returns:
        the point set with one point per c <= X and unit a mod c
    """
    settings = resolve(settings)
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    if X > settings.point_cap:
        logger.warning(f"Refusing to generate S({X})")
        raise CapacityError("point set modulus", settings.point_cap, X)
    blocks = block_ranges(1, X + 1, settings.block_size)
    parts = map_blocks(lambda block: unit_pairs(*block), blocks, settings.threads)
    a, b, c = (np.concatenate([part[k] for part in parts]) for k in range(3))
    expected = totient_table(X, settings).count(X)
    if len(a) != expected:
        raise RuntimeError(f"Generated {len(a)} points but N({X}) = {expected}")
    logger.debug(f"Generated S({X}) with {expected} points")
    return PointSet(X, a, b, c)


def empty_box_witnesses(X: int) -> list[Box]:
    """Return boxes that hold no point of S(X).

    These are [0, 1] x [0, 1/(2X)] and, once it fits in the square,
    [2/sqrt(X), 3/sqrt(X)] x [0.2/sqrt(X), 0.25/sqrt(X)].
    """
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    boxes = [Box(0, 0, 1, Fraction(1, 2 * X))]
    if X >= 9:
        s = Fraction(1 / math.sqrt(X))
        boxes.append(Box(2 * s, s / 5, s, s / 20))
    return boxes


def _open_target(target: str | pathlib.Path | IO) -> tuple[IO, bool]:
    if isinstance(target, (str, pathlib.Path)):
        return open(target, "w", encoding="utf-8", newline=""), True
    if isinstance(target, io.IOBase):
        return target, False
    raise TypeError(f"Expected str, Path or IO, got {type(target)}")


def export_csv(ps: PointSet, target: str | pathlib.Path | IO) -> int:
    """Write the header `a,b,c` and one row per point, returning the number of rows."""
    handle, owned = _open_target(target)
    step = 1 << 16
    try:
        handle.write("a,b,c\n")
        for start in range(0, ps.count, step):
            rows = slice(start, start + step)
            lines = zip(ps.a[rows].tolist(), ps.b[rows].tolist(), ps.c[rows].tolist())
            handle.write("".join(f"{a},{b},{c}\n" for a, b, c in lines))
    finally:
        if owned:
            handle.close()
    return ps.count


def export_svg(ps: PointCloud, target: str | pathlib.Path | IO) -> int:
    """Write a scatter plot of the points on a 1000 x 1000 canvas with the origin at the bottom left."""
    handle, owned = _open_target(target)
    cx = np.round(ps.x * SVG_SIZE, 3)
    cy = np.round((1.0 - ps.y) * SVG_SIZE, 3)
    try:
        handle.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" '
            f'width="{SVG_SIZE}" height="{SVG_SIZE}">\n'
            f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>\n<g fill="black">\n'
        )
        handle.write("".join(f'<circle cx="{x:g}" cy="{y:g}" r="0.5"/>\n' for x, y in zip(cx.tolist(), cy.tolist())))
        handle.write("</g>\n</svg>\n")
    finally:
        if owned:
            handle.close()
    return ps.count
