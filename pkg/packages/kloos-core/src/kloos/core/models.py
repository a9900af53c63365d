"""This module contains the kloos models for sums and points."""

import enum
from fractions import Fraction

import numpy as np

from kloos.core._types import JSON, FloatArray, Pair
from kloos.core.exceptions import PreconditionError


class Method(str, enum.Enum):
    """The evaluation paths of a single Kloosterman sum."""

    DIRECT = "direct"
    CRT_SPLIT = "crt-split"
    DFT = "dft"


class KloostermanQuery:
    """Class that represents the arguments (m, n; c) of a Kloosterman sum.

    m and n are arbitrary integers (their signs matter), c is a positive modulus.
    """

    def __init__(self, m: int, n: int, c: int):
        if c < 1:
            raise PreconditionError(f"The modulus must be positive, got {c}")
        self.m: int = int(m)
        self.n: int = int(n)
        self.c: int = int(c)

    def as_tuple(self) -> tuple[int, int, int]:
        """Return (m, n, c)."""
        return self.m, self.n, self.c

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    def __eq__(self, other) -> bool:
        if not isinstance(other, KloostermanQuery):
            raise TypeError(f"Can not compare other classes than {self.__class__.__name__}")
        return self.as_tuple() == other.as_tuple()

    def __str__(self) -> str:
        return f"S({self.m}, {self.n}; {self.c})"

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(m={self.m}, n={self.n}, c={self.c})>"


class KloostermanValue:
    """Class that represents an evaluated Kloosterman sum.

    The value is real because the terms for a and -a are complex conjugates.
    """

    def __init__(self, query: KloostermanQuery, value: float, method: Method, term_count: int):
        self.query: KloostermanQuery = query
        self.value: float = value
        self.method: Method = method
        self.term_count: int = term_count

    def to_json(self) -> dict[str, JSON]:
        """Return a json friendly representation."""
        return {
            "m": self.query.m,
            "n": self.query.n,
            "c": self.query.c,
            "value": self.value,
            "method": self.method.value,
            "term_count": self.term_count,
        }

    def __float__(self) -> float:
        return self.value

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__}("
            f"query={self.query}, value={self.value!r}, method={self.method.value}, term_count={self.term_count}"
            f")>"
        )


class CompleteSumSeries:
    """Class that represents the partial sums T(m, n; y) for y = 1..X.

    partial[y - 1] holds T(m, n; y).
    """

    def __init__(self, m: int, n: int, X: int, partial: FloatArray):
        partial.setflags(write=False)
        self.m: int = m
        self.n: int = n
        self.X: int = X
        self.partial: FloatArray = partial

    def at(self, y: int) -> float:
        """Return T(m, n; y)."""
        if not 1 <= y <= self.X:
            raise PreconditionError(f"y must lie in [1, {self.X}], got {y}")
        return float(self.partial[y - 1])

    @property
    def final(self) -> float:
        """Return T(m, n; X)."""
        return float(self.partial[-1])

    def increments(self) -> FloatArray:
        """Return the recovered single sums S(m, n; y)."""
        return np.diff(self.partial, prepend=0.0)

    def __len__(self) -> int:
        return len(self.partial)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(m={self.m}, n={self.n}, X={self.X}, final={self.final!r})>"


class SumGrid:
    """Class that represents |T(m, n; X)| over the signed dyadic block M <= |m| < 2M, N <= |n| < 2N."""

    def __init__(self, M: int, N: int, X: int, entries: dict[Pair, float], total: float):
        self.M: int = M
        self.N: int = N
        self.X: int = X
        self.entries: dict[Pair, float] = entries
        self.total: float = total

    def __len__(self) -> int:
        return len(self.entries)

    def max_entry(self) -> float:
        """Return the largest single |T(m, n; X)|."""
        return max(self.entries.values())

    def __repr__(self) -> str:
        class_name = self.__class__.__name__
        return f"<{class_name}(M={self.M}, N={self.N}, X={self.X}, pairs={len(self)}, total={self.total!r})>"


class MomentResult:
    """Class that represents the second moments of complete sums.

    `value` sums |T(n, 1; X)|**2 over N <= |n| < 2N. `normalized` sums
    |sum_{X <= c < 2X} S(n, s; c) / c|**2 over N <= n < 2N and both signs s = +1, -1.
    """

    def __init__(self, N: int, X: int, value: float, normalized: float):
        self.N: int = N
        self.X: int = X
        self.value: float = value
        self.normalized: float = normalized

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__}(N={self.N}, X={self.X}, value={self.value!r}, "
            f"normalized={self.normalized!r})>"
        )


class BoundRatioRow:
    """Class that represents one measured quantity next to its decay envelope."""

    def __init__(self, M: int, N: int, X: int, kind: str, measured: float, envelope: float):
        self.M: int = M
        self.N: int = N
        self.X: int = X
        self.kind: str = kind
        self.measured: float = measured
        self.envelope: float = envelope

    @property
    def ratio(self) -> float:
        """Return measured / envelope."""
        return self.measured / self.envelope

    def as_row(self) -> tuple[int, int, int, str, float, float, float]:
        """Return the values in csv column order."""
        return self.M, self.N, self.X, self.kind, self.measured, self.envelope, self.ratio

    def __repr__(self) -> str:
        return (
            f"<{self.__class__.__name__}(M={self.M}, N={self.N}, X={self.X}, kind={self.kind}, "
            f"measured={self.measured!r}, envelope={self.envelope!r})>"
        )


class DyadicScan:
    """Class that represents the dyadic decomposition of the box discrepancy bound.

    `triple_part` is sum_{i,j <= ell} K(2**i, 2**j; X) 2**(-i-j) and `axis_part` is
    sum_{i <= ell} sum_{2**i <= m < 2**(i+1)} |sum_{c <= X} S(0, m; c)| 2**(-i).
    """

    def __init__(self, X: int, ell: int, triple_part: float, axis_part: float, point_count: int):
        self.X: int = X
        self.ell: int = ell
        self.triple_part: float = triple_part
        self.axis_part: float = axis_part
        self.point_count: int = point_count

    @property
    def bound(self) -> float:
        """Return 2**(-ell) + (triple_part + axis_part) / N(X)."""
        return 2.0**-self.ell + (self.triple_part + self.axis_part) / self.point_count

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(X={self.X}, ell={self.ell}, bound={self.bound!r})>"


class InversePair:
    """Class that represents one point (a/c, b/c) of the modular inverse set."""

    def __init__(self, a: int, b: int, c: int):
        self.a: int = int(a)
        self.b: int = int(b)
        self.c: int = int(c)
        if not (1 <= self.a <= self.c and 1 <= self.b <= self.c and (self.a * self.b - 1) % self.c == 0):
            raise PreconditionError(f"({a}, {b}, {c}) is not a pair of modular inverses with 1 <= a, b <= c")

    @property
    def x(self) -> Fraction:
        return Fraction(self.a, self.c)

    @property
    def y(self) -> Fraction:
        return Fraction(self.b, self.c)

    def as_tuple(self) -> tuple[int, int, int]:
        """Return (a, b, c)."""
        return self.a, self.b, self.c

    def __iter__(self):
        return iter(self.as_tuple())

    def __hash__(self) -> int:
        return hash(self.as_tuple())

    def __eq__(self, other) -> bool:
        if not isinstance(other, InversePair):
            raise TypeError(f"Can not compare other classes than {self.__class__.__name__}")
        return self.as_tuple() == other.as_tuple()

    def __lt__(self, other: "InversePair") -> bool:
        return (self.c, self.a) < (other.c, other.a)

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(a={self.a}, b={self.b}, c={self.c})>"
