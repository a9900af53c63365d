"""This file contains the exponential sum error functionals and the parameter choices that feed them.

Every functional is evaluated with the implied constant set to 1 next to the measured count
error, so the two can be reported side by side.
"""

import logging
import math
from fractions import Fraction

import numpy as np

from kloos.core._types import JSON, Pair
from kloos.core.aggregate import dyadic_triple_scan
from kloos.core.discrepancy.models import Box, Disc, ErrorEstimate
from kloos.core.exceptions import PreconditionError
from kloos.core.models import DyadicScan, Method
from kloos.core.pointset import PointCloud
from kloos.core.settings import Settings

logger = logging.getLogger("kloos")

# decay exponents with the o(1) term dropped
ENVELOPE_EXPONENTS = {
    "box": -5 / 6,
    "ball": -2 / 3,
    "isotropic": -11 / 24,
    "isotropic-baseline": -5 / 12,
}

MAX_COVER_DEPTH = 30


def half_plane(vectors: list[Pair]) -> list[Pair]:
    """Keep one vector of every pair +m, -m; both have Weyl sums of equal modulus."""
    return [(m1, m2) for m1, m2 in vectors if m1 > 0 or (m1 == 0 and m2 > 0)]


def frequency_box(L1: int, L2: int) -> list[Pair]:
    """Return the non-zero vectors of [-L1, L1] x [-L2, L2] in lexicographic order."""
    return [(m1, m2) for m1 in range(-L1, L1 + 1) for m2 in range(-L2, L2 + 1) if (m1, m2) != (0, 0)]


def frequency_disc(L: float) -> list[Pair]:
    """Return the vectors with 0 < |m|_2 <= L in lexicographic order."""
    radius = math.floor(L)
    return [(m1, m2) for m1, m2 in frequency_box(radius, radius) if m1 * m1 + m2 * m2 <= L * L]


def _half_moduli(cloud: PointCloud, vectors: list[Pair]) -> tuple[np.ndarray, np.ndarray]:
    half = half_plane(vectors)
    if not half:
        return np.empty((0, 2), dtype=np.int64), np.empty(0, dtype=np.float64)
    return np.asarray(half, dtype=np.int64), np.abs(cloud.weyl_sums(half))


def koksma_szusz_bound(cloud: PointCloud, M: int) -> float:
    """Return 1/M + (1/N) sum over 0 < |m|_max <= M of |W(m)| / r(m) with r(m) = (|m1| + 1)(|m2| + 1).

    Args:
        cloud: holds the points
        M: holds the frequency cut off

    Returns:
        the right hand side of the box discrepancy inequality with its constant set to 1
    """
    if M < 1:
        raise PreconditionError(f"M must be positive, got {M}")
    vectors, moduli = _half_moduli(cloud, frequency_box(M, M))
    weights = 1.0 / ((np.abs(vectors[:, 0]) + 1) * (np.abs(vectors[:, 1]) + 1))
    value = 1 / M + 2 * math.fsum(moduli * weights) / cloud.count
    logger.debug(f"Koksma-Szusz bound at M={M} is {value}")
    return value


def _count_error(count: int, expected_fraction: float, point_count: int) -> tuple[float, bool]:
    if expected_fraction == 0:
        return abs(count / point_count - expected_fraction), True
    return abs(count / (expected_fraction * point_count) - 1), False


def bmv_error(cloud: PointCloud, box: Box, L1: int, L2: int) -> ErrorEstimate:
    """Return the error term for counting points in a box next to the measured relative error.

    E = 1/(alpha L1) + 1/(beta L2) + (1/N) sum over non-zero m in [-L1, L1] x [-L2, L2] of |W(m)|.

    Args:
        cloud: holds the points
        box: holds the closed box
        L1: holds the first frequency cut off, alpha L1 >= 2
        L2: holds the second frequency cut off, beta L2 >= 2

    Returns:
        E and |count / (mu N) - 1|
    """
    if box.alpha * L1 < 2 or box.beta * L2 < 2:
        raise PreconditionError(f"Expected alpha L1 >= 2 and beta L2 >= 2, got L1={L1}, L2={L2} for {box!r}")
    _, moduli = _half_moduli(cloud, frequency_box(L1, L2))
    E = float(1 / (box.alpha * L1) + 1 / (box.beta * L2)) + 2 * math.fsum(moduli) / cloud.count
    count = cloud.count_in_box(box)
    measure = float(box.measure)
    error, absolute = _count_error(count, measure, cloud.count)
    return ErrorEstimate(E, error, count, measure * cloud.count, absolute)


def harman_error(cloud: PointCloud, disc: Disc, L: float) -> ErrorEstimate:
    """Return the error term for counting points in an open disc next to the measured relative error.

    E = R/L + 1/L**2 + (1/N) sum over 0 < |m|_2 <= L of (1/L**2 + min(R**2, R**(1/2) / |m|**(3/2))) |W(m)|.
    An empty disc (R = 0) reports the absolute error instead.
    """
    if L < 1:
        raise PreconditionError(f"L must be at least 1, got {L}")
    R = disc.R
    vectors, moduli = _half_moduli(cloud, frequency_disc(L))
    norms = np.hypot(vectors[:, 0], vectors[:, 1]).astype(np.float64)
    weights = 1 / L**2 + np.minimum(R * R, math.sqrt(R) / norms**1.5)
    E = R / L + 1 / L**2 + 2 * math.fsum(weights * moduli) / cloud.count
    count = cloud.count_in_disc(disc.center, R)
    error, absolute = _count_error(count, disc.measure, cloud.count)
    return ErrorEstimate(E, error, count, disc.measure * cloud.count, absolute)


class SmallBoxParameters:
    """Class that represents the frequency cut offs chosen for a box and the error they predict."""

    def __init__(self, L1: int, L2: int, predicted: float):
        self.L1: int = L1
        self.L2: int = L2
        self.predicted: float = predicted

    def __iter__(self):
        return iter((self.L1, self.L2))

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(L1={self.L1}, L2={self.L2}, predicted={self.predicted!r})>"


def _predicted_error(alpha: float, beta: float, L1: int, L2: int, X: int) -> float:
    return 1 / (alpha * L1) + 1 / (beta * L2) + L1 * L2 / X + (L1 * L2) ** (2 / 3) * X ** (-5 / 6)


def small_box_parameters(box: Box, X: int) -> SmallBoxParameters:
    """Choose L1 from the two balancing candidates and L2 = ceil(alpha L1 / beta).

    The candidates are ceil(2 alpha**(-2/3) beta**(1/3) X**(1/3)) and
    ceil(2 alpha**(-5/7) beta**(2/7) X**(5/14)); the one with the smaller predicted error wins and
    both cut offs are raised until alpha L1 >= 2 and beta L2 >= 2.
    """
    if box.alpha == 0 or box.beta == 0:
        raise PreconditionError(f"The box must have positive sides, got {box!r}")
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    alpha, beta = float(box.alpha), float(box.beta)
    best: SmallBoxParameters | None = None
    for first in (
        math.ceil(2 * alpha ** (-2 / 3) * beta ** (1 / 3) * X ** (1 / 3)),
        math.ceil(2 * alpha ** (-5 / 7) * beta ** (2 / 7) * X ** (5 / 14)),
    ):
        L1 = max(first, math.ceil(Fraction(2) / box.alpha))
        L2 = max(math.ceil(box.alpha * L1 / box.beta), math.ceil(Fraction(2) / box.beta))
        candidate = SmallBoxParameters(L1, L2, _predicted_error(alpha, beta, L1, L2, X))
        if best is None or candidate.predicted < best.predicted:
            best = candidate
    return best


def small_box_envelope(box: Box, X: int) -> float:
    """Return mu(B)**(2/3) X**(-1/3), meaningful for mu(B) > 1/X."""
    return float(box.measure) ** (2 / 3) * X ** (-1 / 3)


def harman_parameter(X: int, R: float) -> int:
    """Return L = floor(X**(1/2) + X**(2/3) R**(1/3)), at least 1."""
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    return max(1, math.floor(math.sqrt(X) + X ** (2 / 3) * R ** (1 / 3)))


def ball_envelope(X: int, R: float) -> float:
    """Return X**(-1) + R**(2/3) X**(-2/3)."""
    return 1 / X + R ** (2 / 3) * X ** (-2 / 3)


def isotropic_parameters(X: int) -> tuple[int, int]:
    """Return the split level L = floor(3 log X / (8 log 2)) and the cover depth M.

    M = max(L + 1, floor(log X / (2 log 2))), capped at 30.
    """
    if X < 1:
        raise PreconditionError(f"X must be positive, got {X}")
    L = math.floor(3 * math.log(X) / (8 * math.log(2)))
    M = max(L + 1, math.floor(math.log(X) / (2 * math.log(2))))
    return L, min(M, MAX_COVER_DEPTH)


def decay_envelope(kind: str, X: int) -> float:
    """Return X raised to the decay exponent of `kind` (box, ball, isotropic or isotropic-baseline)."""
    if kind not in ENVELOPE_EXPONENTS:
        raise PreconditionError(f"Unknown envelope {kind!r}, expected one of {sorted(ENVELOPE_EXPONENTS)}")
    return X ** ENVELOPE_EXPONENTS[kind]


def dyadic_box_bound(
    X: int, ell: int | None = None, settings: Settings | None = None, method: str | Method = Method.DIRECT
) -> DyadicScan:
    """Return the box discrepancy bound of S(X) assembled from dyadic triple sums."""
    return dyadic_triple_scan(X, ell, settings, method)


def schmidt_comparison(box_value: float, convex_value: float) -> dict[str, JSON]:
    """Report a convex discrepancy estimate next to the square root of the box discrepancy."""
    if box_value < 0 or convex_value < 0:
        raise PreconditionError("Discrepancies are non-negative")
    root = math.sqrt(box_value)
    return {
        "box": box_value,
        "convex": convex_value,
        "box_root": root,
        "ratio": convex_value / root if root else None,
    }


def lil_baseline(n: int) -> float:
    """Return sqrt(2 log log n / n) / 2, the iterated logarithm scale of an i.i.d. uniform sample."""
    if n < 3:
        raise PreconditionError(f"n must be at least 3, got {n}")
    return math.sqrt(2 * math.log(math.log(n)) / n) / 2
