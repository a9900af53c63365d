"""This file contains all summation backends."""

import abc
import logging

import numpy as np

from kloos.core._types import FloatArray, IntArray
from kloos.core.arith import inverse_table
from kloos.core.exceptions import PreconditionError
from kloos.core.kloosterman import (
    TWO_PI,
    kloosterman_direct,
    kloosterman_fast,
    modular_sums,
)
from kloos.core.models import KloostermanQuery, KloostermanValue, Method
from kloos.core.settings import Settings

logger = logging.getLogger("kloos")


class SumBackend(abc.ABC):
    """Abstract base class for all Kloosterman sum backends."""

    method: Method

    def __init__(self, settings: Settings | None = None):
        self.settings: Settings | None = settings

    @abc.abstractmethod
    def evaluate(self, query: KloostermanQuery) -> KloostermanValue:
        """Abstract method to evaluate a single sum on this backend.

        Args:
            query: holds the (m, n; c) arguments

        Returns:
            the evaluated sum
        """
        raise NotImplementedError

    def modular_sums(self, c: int, ms: IntArray, ns: IntArray) -> FloatArray:
        """Method to evaluate S(ms[k], ns[k]; c) for many pairs sharing the modulus c.

        Args:
            c: holds the shared modulus
            ms: holds the first arguments
            ns: holds the second arguments

        Returns:
            one value per pair
        """
        return np.array(
            [self.evaluate(KloostermanQuery(int(m), int(n), c)).value for m, n in zip(ms, ns)],
            dtype=np.float64,
        )

    def __repr__(self) -> str:
        return f"<{self.__class__.__name__}(method={self.method.value})>"


class DirectBackend(SumBackend):
    """The defining sum with one shared inverse table per modulus."""

    method = Method.DIRECT

    def evaluate(self, query: KloostermanQuery) -> KloostermanValue:
        return kloosterman_direct(query, self.settings)

    def modular_sums(self, c: int, ms: IntArray, ns: IntArray) -> FloatArray:
        return modular_sums(c, ms, ns)


class CrtBackend(SumBackend):
    """Twisted multiplicativity over the prime power parts of the modulus."""

    method = Method.CRT_SPLIT

    def evaluate(self, query: KloostermanQuery) -> KloostermanValue:
        return kloosterman_fast(query, self.settings)


class DftBackend(SumBackend):
    """All first arguments at once with one length c transform per second argument.

    With f[a mod c] = e(n a' / c) on the units and 0 elsewhere, S(m, n; c) = c ifft(f)[m mod c].
    """

    method = Method.DFT

    def evaluate(self, query: KloostermanQuery) -> KloostermanValue:
        value = self.modular_sums(query.c, np.array([query.m % query.c]), np.array([query.n % query.c]))
        return KloostermanValue(query, float(value[0]), self.method, len(inverse_table(query.c)[0]))

    def spectrum(self, c: int, n: int) -> FloatArray:
        """Return S(m, n; c) for m = 0..c-1."""
        a, b = inverse_table(c)
        weights = np.zeros(c, dtype=np.complex128)
        weights[a % c] = np.exp(1j * TWO_PI * ((n % c) * b % c) / c)
        return (c * np.fft.ifft(weights)).real

    def modular_sums(self, c: int, ms: IntArray, ns: IntArray) -> FloatArray:
        out = np.empty(len(ms), dtype=np.float64)
        n_mod = np.mod(ns, c)
        for n in np.unique(n_mod).tolist():
            rows = n_mod == n
            out[rows] = self.spectrum(c, n)[np.mod(ms[rows], c)]
        return out


BACKENDS: dict[str, type[SumBackend]] = {
    "direct": DirectBackend,
    "crt-split": CrtBackend,
    "crt": CrtBackend,
    "fast": CrtBackend,
    "dft": DftBackend,
}


def get_backend(name: str | Method, settings: Settings | None = None) -> SumBackend:
    """Return a backend instance by name.

    Args:
        name: holds one of direct, crt-split (alias crt, fast) or dft
        settings: holds the settings handed to the backend

    Returns:
        the backend
    """
    key = name.value if isinstance(name, Method) else str(name).lower()
    if key not in BACKENDS:
        raise PreconditionError(f"Unknown backend {name!r}, expected one of {sorted(BACKENDS)}")
    return BACKENDS[key](settings)


def kloosterman_sum(
    query: KloostermanQuery, method: str | Method = Method.DIRECT, settings: Settings | None = None
) -> KloostermanValue:
    """Evaluate S(m, n; c) with the named backend."""
    return get_backend(method, settings).evaluate(query)
