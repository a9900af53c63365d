"""This file contains the evaluation of single Kloosterman sums and the facts quoted about them.

S(m, n; c) is the sum of e((m a + n a') / c) over the units a mod c, where a a' = 1 (mod c).
"""

import logging
import math

import numpy as np

from kloos.core._internal import row_fsum
from kloos.core._types import FloatArray, IntArray
from kloos.core.arith import divisor_count, divisors, factorize, inverse_table, mod_inverse, moebius
from kloos.core.exceptions import CapacityError, PreconditionError
from kloos.core.models import KloostermanQuery, KloostermanValue, Method
from kloos.core.settings import Settings, resolve

logger = logging.getLogger("kloos")

# upper bound on the number of phase entries materialised at once
CHUNK_ELEMENTS = 2**21

TWO_PI = 2.0 * math.pi


def _check_direct_cap(c: int, settings: Settings) -> None:
    if c > settings.direct_cap:
        logger.warning(f"Refusing a direct evaluation with modulus {c}")
        raise CapacityError("direct evaluation modulus", settings.direct_cap, c)


def phases(q: KloostermanQuery) -> IntArray:
    """Return (m a + n a') mod c for the units a in ascending order."""
    a, b = inverse_table(q.c)
    return ((q.m % q.c) * a + (q.n % q.c) * b) % q.c


def kloosterman_direct(q: KloostermanQuery, settings: Settings | None = None) -> KloostermanValue:
    """Evaluate S(m, n; c) straight from its definition.

    The cosines are accumulated in ascending a with `math.fsum`, so the value is the
    correctly rounded sum of the float terms and identical on every run.

    Args:
        q: holds the query
        settings: holds the direct evaluation cap

    Returns:
        the evaluated sum
    """
    _check_direct_cap(q.c, resolve(settings))
    value = modular_sums(q.c, np.array([q.m % q.c], dtype=np.int64), np.array([q.n % q.c], dtype=np.int64))[0]
    return KloostermanValue(q, float(value), Method.DIRECT, len(inverse_table(q.c)[0]))


def kloosterman_complex(q: KloostermanQuery, settings: Settings | None = None) -> complex:
    """Accumulate the defining sum with its imaginary part, which vanishes up to rounding."""
    _check_direct_cap(q.c, resolve(settings))
    angles = TWO_PI * phases(q) / q.c
    return complex(math.fsum(np.cos(angles)), math.fsum(np.sin(angles)))


def split_modulus(c: int) -> tuple[int, int] | None:
    """Split c into its first prime power q and the coprime cofactor r, None for prime powers."""
    factorization = factorize(c)
    if len(factorization) <= 1:
        return None
    head = factorization.prime_powers[0]
    return head, c // head


def kloosterman_fast(q: KloostermanQuery, settings: Settings | None = None) -> KloostermanValue:
    """Evaluate S(m, n; c) by splitting c into coprime prime powers.

    For c = q r with gcd(q, r) = 1 the sum factors as
    S(m, n; q r) = S(m r', n r'; q) S(m q', n q'; r) with r r' = 1 (mod q) and q q' = 1 (mod r).
    Prime power moduli are evaluated directly.

    Args:
        q: holds the query
        settings: holds the direct evaluation cap

    Returns:
        the evaluated sum
    """
    split = split_modulus(q.c)
    if split is None:
        return kloosterman_direct(q, settings)
    head, rest = split
    head_twist = mod_inverse(rest, head)
    rest_twist = mod_inverse(head, rest)
    left = kloosterman_direct(KloostermanQuery(q.m * head_twist, q.n * head_twist, head), settings)
    right = kloosterman_fast(KloostermanQuery(q.m * rest_twist, q.n * rest_twist, rest), settings)
    return KloostermanValue(q, left.value * right.value, Method.CRT_SPLIT, left.term_count * right.term_count)


def modular_sums(c: int, ms: IntArray, ns: IntArray) -> FloatArray:
    """Evaluate S(ms[k], ns[k]; c) for all k against one shared inverse table.

    The cosines of a row are accumulated in ascending a with `math.fsum`, so every value is
    the correctly rounded sum of its terms and never depends on the other rows.
    """
    a, b = inverse_table(c)
    m_mod = np.mod(ms, c)
    n_mod = np.mod(ns, c)
    out = np.empty(len(ms), dtype=np.float64)
    step = max(1, CHUNK_ELEMENTS // len(a))
    for start in range(0, len(ms), step):
        stop = start + step
        phase = (m_mod[start:stop, None] * a[None, :] + n_mod[start:stop, None] * b[None, :]) % c
        out[start:stop] = row_fsum(np.cos(TWO_PI * phase / c))
    return out


def tolerance(c: int, settings: Settings | None = None) -> float:
    """Return the absolute agreement tolerance for sums with modulus c."""
    return resolve(settings).tolerance * max(1.0, math.sqrt(c) * divisor_count(c))


def ramanujan(n: int, c: int) -> float:
    """Evaluate the Ramanujan sum S(0, n; c) as sum_{d | gcd(n, c)} mu(c/d) d.

    Examples:
        >>> ramanujan(1, 6)
        1.0
    """
    if c < 1:
        raise PreconditionError(f"The modulus must be positive, got {c}")
    return float(sum(moebius(c // d) * d for d in divisors(math.gcd(n, c))))


def weil_bound(q: KloostermanQuery) -> float:
    """Return gcd(m, n, c)**(1/2) c**(1/2) tau(c), with gcd(0, 0, c) = c."""
    return math.sqrt(math.gcd(q.m, q.n, q.c)) * math.sqrt(q.c) * divisor_count(q.c)


def selberg_rewrite(q: KloostermanQuery) -> list[tuple[int, KloostermanQuery]]:
    """Expand S(m, n; c) as sum_{d | gcd(m, n, c)} d S(m n / d**2, 1; c / d).

    Args:
        q: holds the query, m and n must be positive

    Returns:
        the (d, query) terms with d ascending
    """
    if q.m <= 0 or q.n <= 0:
        raise PreconditionError(f"The rewrite needs m, n >= 1, got m={q.m}, n={q.n}")
    return [
        (d, KloostermanQuery(q.m * q.n // (d * d), 1, q.c // d)) for d in divisors(math.gcd(q.m, q.n, q.c))
    ]
