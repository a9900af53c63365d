"""This file contains the modular arithmetic, factorization and sieve utilities."""

import functools
import itertools
import logging
import math

import numpy as np
import sympy

from kloos.core._types import FactorList, IntArray
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

TRIAL_DIVISION_BOUND = 10**6
FACTORIZE_LIMIT = 2**63


class Factorization:
    """Class that represents the prime factorization of a positive integer.

    The factors are (prime, exponent) pairs sorted by prime, the empty tuple stands for 1.
    """

    def __init__(self, value: int, factors: FactorList):
        self.value: int = value
        self.factors: FactorList = tuple(factors)

    @property
    def primes(self) -> tuple[int, ...]:
        """Return the distinct primes."""
        return tuple(p for p, _ in self.factors)

    @property
    def prime_powers(self) -> tuple[int, ...]:
        """Return the coprime prime power parts p**e."""
        return tuple(p**e for p, e in self.factors)

    def divisor_count(self) -> int:
        """Return tau(value)."""
        return math.prod(e + 1 for _, e in self.factors)

    def moebius(self) -> int:
        """Return mu(value)."""
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    def euler_phi(self) -> int:
        """Return phi(value)."""
        return math.prod((p - 1) * p ** (e - 1) for p, e in self.factors)

    def divisors(self) -> tuple[int, ...]:
        """Return all positive divisors in ascending order."""
        powers = [[p**k for k in range(e + 1)] for p, e in self.factors]
        return tuple(sorted(math.prod(combination) for combination in itertools.product(*powers)))

    def __iter__(self):
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def __hash__(self) -> int:
        return hash((self.value, self.factors))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Factorization):
            raise TypeError(f"Can not compare other classes than {self.__class__.__name__}")
        return self.value == other.value and self.factors == other.factors

    def __str__(self) -> str:
        """Return the factorization as a product string."""
        if not self.factors:
            return "1"
        return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)

    def __repr__(self) -> str:
        """Return a detailed string representation of the factorization."""
        return f"<{self.__class__.__name__}(value={self.value}, factors={list(self.factors)})>"


class TotientTable:
    """Class that represents phi(c) and its running sum N(y) for 1 <= c, y <= limit.

    Both arrays are indexed by c directly, index 0 holds 0. They are read only so one table
    can be shared between threads.
    """

    def __init__(self, limit: int, phi: IntArray, prefix: IntArray):
        phi.setflags(write=False)
        prefix.setflags(write=False)
        self.limit: int = limit
        self.phi: IntArray = phi
        self.prefix: IntArray = prefix

    def count(self, y: int) -> int:
        """Return N(y), the number of points of the modular inverse set with modulus at most y."""
        return int(self.prefix[y])

    def __repr__(self) -> str:
        """Return a detailed string representation of the table."""
        return f"<{self.__class__.__name__}(limit={self.limit}, N={self.count(self.limit)})>"


def primes_up_to(n: int) -> IntArray:
    """Return all primes p <= n with a numpy sieve of Eratosthenes."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    is_prime = np.ones(n + 1, dtype=np.bool_)
    is_prime[:2] = False
    is_prime[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if is_prime[p]:
            is_prime[p * p :: 2 * p] = False
    return np.flatnonzero(is_prime).astype(np.int64)


@functools.lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(primes_up_to(TRIAL_DIVISION_BOUND).tolist())


@functools.lru_cache(maxsize=65536)
def factorize(n: int) -> Factorization:
    """Factor a positive integer.

    Trial division by the primes up to 10**6 settles every input whose cofactor is below
    10**12, the remaining cofactor is handed to sympy.

    Args:
        n: holds the integer to factor, 1 <= n <= 2**63

    Returns:
        the factorization of n
    """
    if not 1 <= n <= FACTORIZE_LIMIT:
        raise PreconditionError(f"factorize expects 1 <= n <= 2**63, got {n}")
    factors: list[tuple[int, int]] = []
    remaining = n
    for p in _trial_primes():
        if p * p > remaining:
            break
        if remaining % p:
            continue
        exponent = 0
        while remaining % p == 0:
            remaining //= p
            exponent += 1
        factors.append((p, exponent))
    if remaining > 1:
        if remaining < TRIAL_DIVISION_BOUND**2:
            factors.append((remaining, 1))
        else:
            logger.debug(f"Factoring cofactor {remaining} of {n} with sympy")
            factors.extend(sorted((int(p), int(e)) for p, e in sympy.factorint(remaining).items()))
    return Factorization(n, tuple(sorted(factors)))


def divisor_count(n: int) -> int:
    """Return tau(n), the number of positive divisors of n."""
    return factorize(n).divisor_count()


def moebius(n: int) -> int:
    """Return mu(n) in {-1, 0, 1}."""
    return factorize(n).moebius()


def euler_phi(n: int) -> int:
    """Return phi(n)."""
    return factorize(n).euler_phi()


def divisors(n: int) -> tuple[int, ...]:
    """Return the positive divisors of n in ascending order."""
    return factorize(n).divisors()


def mod_inverse(a: int, c: int) -> int | None:
    """Return b in [1, c] with a * b = 1 (mod c), or None when gcd(a, c) > 1.

    Examples:
        >>> mod_inverse(3, 10)
        7
        >>> mod_inverse(4, 10) is None
        True
    """
    if c < 1:
        raise PreconditionError(f"The modulus must be positive, got {c}")
    if c == 1:
        return 1
    try:
        return pow(a, -1, c)
    except ValueError:
        return None


def totient_table(X: int, settings: Settings | None = None) -> TotientTable:
    """Build phi(c) and N(y) for all c, y <= X.

    A linear sieve: every composite m = i p with p its least prime factor is written once,
    from phi(i) times p when p divides i and times p - 1 otherwise. The multipliers i run in
    doubling blocks [lo, 2 lo), whose own values were all written by earlier blocks.

    Args:
        X: holds the table limit
        settings: holds the capacity settings

    Returns:
        the read only totient table
    """
    settings = resolve(settings)
    if X < 1:
        raise PreconditionError(f"totient_table expects X >= 1, got {X}")
    if X > settings.totient_cap:
        logger.warning(f"Refusing a totient table of size {X}")
        raise CapacityError("totient table", settings.totient_cap, X)
    primes = primes_up_to(X)
    phi = np.zeros(X + 1, dtype=np.int64)
    least = np.zeros(X + 1, dtype=np.int64)
    phi[1] = 1
    phi[primes] = primes - 1
    least[primes] = primes
    prime_list = primes.tolist()
    lo = 2
    while lo <= X // 2:
        hi = min(2 * lo, X // 2 + 1)
        block = np.arange(lo, hi, dtype=np.int64)
        ceiling = int(least[block].max())
        for p in prime_list:
            if p > ceiling or X // p < lo:
                break
            i = block[: min(hi, X // p + 1) - lo]
            i = i[least[i] >= p]
            least[i * p] = p
            phi[i * p] = phi[i] * np.where(least[i] == p, p, p - 1)
        lo = hi
    prefix = np.cumsum(phi)
    logger.debug(f"Built totient table up to {X}, N(X)={int(prefix[X])}")
    return TotientTable(X, phi, prefix)


@functools.lru_cache(maxsize=8)
def _cached_totient_table(X: int) -> TotientTable:
    return totient_table(X, Settings(totient_cap=max(X, 1)))


def point_count(X: int) -> int:
    """Return N(X) = sum of phi(c) over c <= X."""
    return _cached_totient_table(X).count(X)


def _extended_euclid(a: IntArray, c: IntArray) -> tuple[IntArray, IntArray]:
    """Run the extended Euclidean algorithm on all pairs at once.

    Returns:
        gcd(a, c) and the Bezout coefficient s with a * s = gcd (mod c)
    """
    old_r, r = a.copy(), c.copy()
    old_s, s = np.ones_like(a), np.zeros_like(a)
    while True:
        active = r != 0
        if not active.any():
            return old_r, old_s
        q = np.where(active, old_r // np.where(active, r, 1), 0)
        old_r, r = np.where(active, r, old_r), np.where(active, old_r - q * r, r)
        old_s, s = np.where(active, s, old_s), np.where(active, old_s - q * s, s)


def unit_pairs(c_lo: int, c_hi: int) -> tuple[IntArray, IntArray, IntArray]:
    """Return every (a, b, c) with c_lo <= c < c_hi, 1 <= a, b <= c and a * b = 1 (mod c).

    The triples are ordered by c and then by a.

    Returns:
        the arrays a, b and c
    """
    if c_lo < 1 or c_hi <= c_lo:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty.copy(), empty.copy()
    moduli = np.arange(c_lo, c_hi, dtype=np.int64)
    c = np.repeat(moduli, moduli)
    starts = np.cumsum(moduli) - moduli
    a = np.arange(len(c), dtype=np.int64) - np.repeat(starts, moduli) + 1
    units = np.gcd(a, c) == 1
    a, c = a[units], c[units]
    _, s = _extended_euclid(a, c)
    b = np.mod(s, c)
    b[b == 0] = c[b == 0]
    return a, b, c


@functools.lru_cache(maxsize=4096)
def inverse_table(c: int) -> tuple[IntArray, IntArray]:
    """Return the units a of Z/cZ in ascending order together with their inverses in [1, c].

    The arrays are cached per modulus and read only, so threads may share them.
    """
    if c < 1:
        raise PreconditionError(f"The modulus must be positive, got {c}")
    a, b, _ = unit_pairs(c, c + 1)
    a.setflags(write=False)
    b.setflags(write=False)
    return a, b
