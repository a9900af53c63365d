"""This file contains the test sets, regions and results of the discrepancy module.

Coordinates are exact rationals. Points of the inverse set live in (0, 1], a closed arc
[s, s + l] of the circle contains t when s <= t <= s + l or t <= s + l - 1, so an arc with
l = 1 is the whole circle.
"""

import abc
import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from typing import Union

import numpy as np

from kloos.core._internal import as_fraction, hyperbola_sign, integer_coefficients, linear_sign
from kloos.core._types import JSON, BoolArray, FloatArray, IntArray, Point, RealLike, Vertex
from kloos.core.exceptions import PreconditionError

logger = logging.getLogger("kloos")

# convex subsets of the unit square are (4 + pi) well shaped
CONVEX_WELL_SHAPED = 4 + math.pi


def _unit(name: str, value: RealLike) -> Fraction:
    fraction = as_fraction(value)
    if not 0 <= fraction <= 1:
        raise PreconditionError(f"{name} must lie in [0, 1], got {value}")
    return fraction


class Box:
    """Class that represents the torus box [xi, xi + alpha] x [zeta, zeta + beta]."""

    @classmethod
    def parse(cls, value: Union["Box", dict, Sequence[RealLike]]) -> "Box":
        """Parse a box from a dict with xi, zeta, alpha and beta or from a 4 element sequence."""
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(**value)
        if isinstance(value, (list, tuple)) and len(value) == 4:
            return cls(*value)
        raise TypeError(f"Expected dict, sequence or {cls.__name__}, got {type(value)}")

    def __init__(self, xi: RealLike, zeta: RealLike, alpha: RealLike, beta: RealLike):
        self.xi: Fraction = _unit("xi", xi)
        self.zeta: Fraction = _unit("zeta", zeta)
        self.alpha: Fraction = _unit("alpha", alpha)
        self.beta: Fraction = _unit("beta", beta)

    @property
    def measure(self) -> Fraction:
        return self.alpha * self.beta

    def to_json(self) -> dict[str, JSON]:
        """Return the box as floats together with the exact fractions."""
        fields = {"xi": self.xi, "zeta": self.zeta, "alpha": self.alpha, "beta": self.beta}
        return {**{k: float(v) for k, v in fields.items()}, "exact": {k: str(v) for k, v in fields.items()}}

    def as_tuple(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        """Return (xi, zeta, alpha, beta)."""
        return self.xi, self.zeta, self.alpha, self.beta

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    def __eq__(self, other) -> bool:
        if not isinstance(other, Box):
            raise TypeError(f"Can not compare other classes than {self.__class__.__name__}")
        return self.as_tuple() == other.as_tuple()

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(xi={self.xi}, zeta={self.zeta}, alpha={self.alpha}, beta={self.beta})>"


class Disc:
    """Class that represents the open torus disc of radius R < 1/2 around `center`."""

    @classmethod
    def parse(cls, value: Union["Disc", dict]) -> "Disc":
        """Parse a disc from a dict with center and R."""
        if isinstance(value, cls):
            return value
        if isinstance(value, dict):
            return cls(tuple(value["center"]), value["R"])
        raise TypeError(f"Expected dict or {cls.__name__}, got {type(value)}")

    def __init__(self, center: Point, R: float):
        x, y = (float(coordinate) for coordinate in center)
        if not (0 <= x <= 1 and 0 <= y <= 1):
            raise PreconditionError(f"The center must lie in the unit square, got {center}")
        if not 0 <= R < 0.5:
            raise PreconditionError(f"The radius must lie in [0, 1/2), got {R}")
        self.center: Point = (x, y)
        self.R: float = float(R)

    @property
    def measure(self) -> float:
        return math.pi * self.R**2

    def to_json(self) -> dict[str, JSON]:
        return {"center": list(self.center), "R": self.R}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(center={self.center}, R={self.R})>"


class Region(abc.ABC):
    """Abstract base class for the closed regions that can be packed with dyadic squares.

    Membership tests take points as integer numerators over a shared integer denominator.
    """

    @property
    @abc.abstractmethod
    def area(self) -> float:
        """Return the Lebesgue measure of the region."""
        raise NotImplementedError

    @abc.abstractmethod
    def contains(self, x_num: IntArray, y_num: IntArray, den: IntArray) -> BoolArray:
        """Return the exact closed membership of every point."""
        raise NotImplementedError

    @abc.abstractmethod
    def square_inside(self, x_num: IntArray, y_num: IntArray, side_num: IntArray, den: IntArray) -> BoolArray:
        """Return whether every closed square with the given lower left corner and side lies in the region."""
        raise NotImplementedError

    @abc.abstractmethod
    def row_span(self, y0: FloatArray, y1: FloatArray) -> tuple[FloatArray, FloatArray]:
        """Return a float estimate of the x interval whose vertical segments over [y0, y1] lie in the region."""
        raise NotImplementedError

    @abc.abstractmethod
    def y_bounds(self) -> tuple[float, float]:
        """Return the lowest and highest y of the region."""
        raise NotImplementedError

    @abc.abstractmethod
    def to_json(self) -> JSON:
        raise NotImplementedError


class ConvexPolygon(Region):
    """Class that represents a strictly convex polygon inside [0, 1)**2.

    The vertices are stored counterclockwise; clockwise input is reversed.
    """

    @classmethod
    def parse(cls, value: Union["ConvexPolygon", Sequence[Vertex]]) -> "ConvexPolygon":
        """Parse a polygon from a sequence of [x, y] vertex pairs."""
        if isinstance(value, cls):
            return value
        if isinstance(value, (list, tuple)):
            return cls(value)
        raise TypeError(f"Expected a vertex list or {cls.__name__}, got {type(value)}")

    def __init__(self, vertices: Sequence[Vertex]):
        points = [(as_fraction(x), as_fraction(y)) for x, y in vertices]
        if len(points) < 3:
            raise PreconditionError(f"A polygon needs at least 3 vertices, got {len(points)}")
        if any(not (0 <= x < 1 and 0 <= y < 1) for x, y in points):
            raise PreconditionError("All vertices must lie in [0, 1)**2")
        turns = [self._cross(points[i - 2], points[i - 1], points[i]) for i in range(len(points))]
        if all(turn < 0 for turn in turns):
            points.reverse()
        elif not all(turn > 0 for turn in turns):
            raise PreconditionError("The vertices do not form a strictly convex polygon")
        self.vertices: tuple[tuple[Fraction, Fraction], ...] = tuple(points)
        self._edges: list[list[int]] = [
            self._edge(points[i], points[(i + 1) % len(points)]) for i in range(len(points))
        ]
        floats = np.array([[float(x), float(y)] for x, y in points])
        self._x0, self._y0 = floats[:, 0], floats[:, 1]
        self._x1, self._y1 = np.roll(self._x0, -1), np.roll(self._y0, -1)

    @staticmethod
    def _cross(o: tuple[Fraction, Fraction], p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> Fraction:
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    @staticmethod
    def _edge(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> list[int]:
        # A x + B y + C >= 0 on the left of p -> q
        dx, dy = q[0] - p[0], q[1] - p[1]
        return integer_coefficients([-dy, dx, dy * p[0] - dx * p[1]])

    @property
    def area(self) -> float:
        return float(self.exact_area)

    @property
    def exact_area(self) -> Fraction:
        """Return the shoelace area."""
        n = len(self.vertices)
        twice = sum(
            self.vertices[i][0] * self.vertices[(i + 1) % n][1] - self.vertices[(i + 1) % n][0] * self.vertices[i][1]
            for i in range(n)
        )
        return twice / 2

    def contains(self, x_num: IntArray, y_num: IntArray, den: IntArray) -> BoolArray:
        inside = np.ones(len(x_num), dtype=np.bool_)
        for edge in self._edges:
            inside &= linear_sign(edge, [x_num, y_num, den]) >= 0
        return inside

    def square_inside(self, x_num: IntArray, y_num: IntArray, side_num: IntArray, den: IntArray) -> BoolArray:
        inside = np.ones(len(x_num), dtype=np.bool_)
        for dx, dy in ((0, 0), (1, 0), (0, 1), (1, 1)):
            inside &= self.contains(x_num + dx * side_num, y_num + dy * side_num, den)
        return inside

    def _slice(self, y: FloatArray) -> tuple[FloatArray, FloatArray]:
        ys = y[:, None]
        low = np.minimum(self._y0, self._y1)[None, :]
        high = np.maximum(self._y0, self._y1)[None, :]
        crossing = (ys >= low) & (ys <= high) & (low < high)
        with np.errstate(divide="ignore", invalid="ignore"):
            t = (ys - self._y0[None, :]) / (self._y1 - self._y0)[None, :]
        xs = self._x0[None, :] + t * (self._x1 - self._x0)[None, :]
        left = np.where(crossing, xs, np.inf).min(axis=1)
        right = np.where(crossing, xs, -np.inf).max(axis=1)
        return left, right

    def row_span(self, y0: FloatArray, y1: FloatArray) -> tuple[FloatArray, FloatArray]:
        left0, right0 = self._slice(y0)
        left1, right1 = self._slice(y1)
        return np.maximum(left0, left1), np.minimum(right0, right1)

    def y_bounds(self) -> tuple[float, float]:
        return float(self._y0.min()), float(self._y0.max())

    def to_json(self) -> JSON:
        return [[float(x), float(y)] for x, y in self.vertices]

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(vertices={len(self.vertices)}, area={self.area!r})>"


class HyperbolaRegion(Region):
    """Class that represents the convex region {(x, y) in [0, 1]**2 : x y >= 1/X}."""

    def __init__(self, X: int):
        if X < 1:
            raise PreconditionError(f"X must be positive, got {X}")
        self.X: int = X

    @property
    def area(self) -> float:
        """Return 1 - (1 + ln X) / X."""
        return 1 - (1 + math.log(self.X)) / self.X

    def contains(self, x_num: IntArray, y_num: IntArray, den: IntArray) -> BoolArray:
        inside = hyperbola_sign(self.X, x_num, y_num, den) >= 0
        inside &= (x_num >= 0) & (y_num >= 0) & (x_num <= den) & (y_num <= den)
        return inside

    def square_inside(self, x_num: IntArray, y_num: IntArray, side_num: IntArray, den: IntArray) -> BoolArray:
        inside = (x_num >= 0) & (y_num >= 0) & (x_num + side_num <= den) & (y_num + side_num <= den)
        return inside & (hyperbola_sign(self.X, x_num, y_num, den) >= 0)

    def row_span(self, y0: FloatArray, y1: FloatArray) -> tuple[FloatArray, FloatArray]:
        with np.errstate(divide="ignore"):
            left = np.where(y0 > 0, 1.0 / (self.X * np.maximum(y0, 0.0)), np.inf)
        right = np.where((y1 <= 1) & (y0 >= 0), 1.0, -np.inf)
        return left, right

    def y_bounds(self) -> tuple[float, float]:
        return 1.0 / self.X, 1.0

    def to_json(self) -> JSON:
        return {"hyperbola": self.X}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(X={self.X})>"


class DyadicCover:
    """Class that represents the packing families B_1..B_M of a region.

    The squares of level i have side 2**-i and lower left corner (a_off + u 2**-i, b_off + v 2**-i).
    `families[i - 1]` holds the rows of level i as (v, u_lo, u_hi) runs of consecutive squares.
    B_1 holds every level 1 square inside the region, B_i the level i squares inside the region
    that are not children of a level i - 1 square inside the region.
    """

    def __init__(
        self,
        region: Region,
        depth: int,
        offsets: tuple[Fraction, Fraction],
        families: list[IntArray],
        spans: list[IntArray],
    ):
        self.region: Region = region
        self.depth: int = depth
        self.offsets: tuple[Fraction, Fraction] = offsets
        self.families: list[IntArray] = families
        self.spans: list[IntArray] = spans

    def count(self, level: int) -> int:
        """Return #B_level."""
        runs = self.families[level - 1]
        return int((runs[:, 2] - runs[:, 1] + 1).sum()) if len(runs) else 0

    def covered_measure(self, level: int | None = None) -> Fraction:
        """Return the total area of B_1..B_level."""
        level = self.depth if level is None else level
        return sum((Fraction(self.count(i), 4**i) for i in range(1, level + 1)), Fraction(0))

    def defect(self, level: int | None = None) -> float:
        """Return area(region) - covered_measure(level)."""
        return self.region.area - float(self.covered_measure(level))

    def squares(self, level: int) -> list[tuple[int, int]]:
        """Return the (u, v) indices of every square of B_level."""
        return [(u, int(v)) for v, lo, hi in self.families[level - 1] for u in range(int(lo), int(hi) + 1)]

    def square(self, level: int, u: int, v: int) -> tuple[Fraction, Fraction, Fraction]:
        """Return the lower left corner and side of the square (u, v) of the given level."""
        side = Fraction(1, 2**level)
        return self.offsets[0] + u * side, self.offsets[1] + v * side, side

    def to_json(self) -> dict[str, JSON]:
        return {
            "region": self.region.to_json(),
            "depth": self.depth,
            "offsets": [str(offset) for offset in self.offsets],
            "counts": [self.count(i) for i in range(1, self.depth + 1)],
            "defect": self.defect(),
        }

    def __repr__(self) -> str:
        counts = [self.count(i) for i in range(1, self.depth + 1)]
        return f"<{self.__class__.__name__}(region={self.region!r}, depth={self.depth}, counts={counts})>"


class DiscrepancyResult:
    """Class that represents a measured discrepancy and the test set that attains it.

    `closed` tells whether the witness is read as a closed set (too many points) or as the
    limit of slightly smaller open sets (too few points). `lower_bound` marks search results.
    """

    def __init__(
        self,
        value: float,
        witness: Box | Disc,
        mode: str,
        count: int,
        point_count: int,
        closed: bool = True,
        lower_bound: bool = False,
    ):
        self.value: float = value
        self.witness: Box | Disc = witness
        self.mode: str = mode
        self.count: int = count
        self.point_count: int = point_count
        self.closed: bool = closed
        self.lower_bound: bool = lower_bound

    def to_json(self) -> dict[str, JSON]:
        return {
            "value": self.value,
            "mode": self.mode,
            "count": self.count,
            "point_count": self.point_count,
            "closed": self.closed,
            "lower_bound": self.lower_bound,
            "witness": self.witness.to_json(),
        }

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__}(value={self.value!r}, mode={self.mode}, "
            f"closed={self.closed}, lower_bound={self.lower_bound}, witness={self.witness!r})>"
        )


class ErrorEstimate:
    """Class that represents an exponential sum error term next to the measured count error.

    When the expected count is zero the measured value is the absolute error |count / N - measure|
    and `absolute` is set.
    """

    def __init__(self, E: float, relative_count_error: float, count: int, expected: float, absolute: bool = False):
        self.E: float = E
        self.relative_count_error: float = relative_count_error
        self.count: int = count
        self.expected: float = expected
        self.absolute: bool = absolute

    def to_json(self) -> dict[str, JSON]:
        return {
            "E": self.E,
            "relative_count_error": self.relative_count_error,
            "count": self.count,
            "expected": self.expected,
            "absolute": self.absolute,
        }

    def __iter__(self):
        return iter((self.E, self.relative_count_error))

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(E={self.E!r}, relative_count_error={self.relative_count_error!r})>"


class ConvexCount:
    """Class that represents the exact count in a region and the dyadic cover lower bound."""

    def __init__(self, exact: int, cover_bound: int, cover: DyadicCover):
        self.exact: int = exact
        self.cover_bound: int = cover_bound
        self.cover: DyadicCover = cover

    def __iter__(self):
        return iter((self.exact, self.cover_bound))

    def to_json(self) -> dict[str, JSON]:
        return {"exact": self.exact, "cover_bound": self.cover_bound, "cover": self.cover.to_json()}

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(exact={self.exact}, cover_bound={self.cover_bound})>"


class HyperbolaBound:
    """Class that represents the discrepancy of the region above the hyperbola x y = 1/X."""

    def __init__(self, X: int, count: int, point_count: int, area: float, constant: float):
        self.X: int = X
        self.count: int = count
        self.point_count: int = point_count
        self.area: float = area
        self.constant: float = constant

    @property
    def measured(self) -> float:
        """Return |count / N(X) - area|."""
        return abs(self.count / self.point_count - self.area)

    @property
    def floor(self) -> float:
        """Return (ln X - constant) / X."""
        return (math.log(self.X) - self.constant) / self.X

    @property
    def holds(self) -> bool:
        return self.measured >= self.floor

    def __iter__(self):
        return iter((self.measured, self.floor))

    def to_json(self) -> dict[str, JSON]:
        return {
            "X": self.X,
            "count": self.count,
            "point_count": self.point_count,
            "area": self.area,
            "measured": self.measured,
            "floor": self.floor,
            "constant": self.constant,
            "holds": self.holds,
        }

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(X={self.X}, measured={self.measured!r}, floor={self.floor!r})>"
