import math

import numpy as np
import pytest
import sympy

from kloos.core import CapacityError, PreconditionError, Settings, oracles
from kloos.core.arith import (
    Factorization,
    divisor_count,
    divisors,
    euler_phi,
    factorize,
    inverse_table,
    mod_inverse,
    moebius,
    point_count,
    primes_up_to,
    totient_table,
    unit_pairs,
)


# skipcq: PY-D0003
def test_primes_up_to():
    assert primes_up_to(1).tolist() == []
    assert primes_up_to(2).tolist() == [2]
    assert primes_up_to(30).tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert len(primes_up_to(10_000)) == 1229


# skipcq: PY-D0003
def test_factorize():
    assert factorize(1).factors == ()
    assert factorize(600).factors == ((2, 3), (3, 1), (5, 2))
    assert factorize(97).factors == ((97, 1),)
    assert str(factorize(600)) == "2^3 * 3 * 5^2"
    assert str(factorize(1)) == "1"


# skipcq: PY-D0003
def test_factorize_large_cofactor():
    p, q = 1_000_003, 1_000_033
    assert factorize(p * q).factors == ((p, 1), (q, 1))
    assert factorize(2**61 - 1).factors == ((2**61 - 1, 1),)


@pytest.mark.parametrize("value", [0, -5, 2**63 + 1])
# skipcq: PY-D0003
def test_factorize_out_of_range(value: int):
    with pytest.raises(PreconditionError):
        factorize(value)


# skipcq: PY-D0003
def test_factorization_model():
    factorization = factorize(12)
    assert factorization.primes == (2, 3)
    assert factorization.prime_powers == (4, 3)
    assert factorization.divisors() == (1, 2, 3, 4, 6, 12)
    assert len(factorization) == 2
    assert list(factorization) == [(2, 2), (3, 1)]
    assert factorization == Factorization(12, ((2, 2), (3, 1)))
    assert hash(factorization) == hash(Factorization(12, ((2, 2), (3, 1))))
    assert repr(factorization) == "<Factorization(value=12, factors=[(2, 2), (3, 1)])>"


# skipcq: PY-D0003
def test_factorization_eq_other_class():
    with pytest.raises(TypeError):
        _ = factorize(12) == 12


@pytest.mark.parametrize(
    "n,tau,mu,phi",
    [(1, 1, 1, 1), (4, 3, 0, 2), (6, 4, 1, 2), (12, 6, 0, 4), (30, 8, -1, 8), (97, 2, -1, 96)],
)
# skipcq: PY-D0003
def test_multiplicative_functions(n: int, tau: int, mu: int, phi: int):
    assert divisor_count(n) == tau
    assert moebius(n) == mu
    assert euler_phi(n) == phi
    assert len(divisors(n)) == tau


# skipcq: PY-D0003
def test_mod_inverse():
    assert mod_inverse(3, 10) == 7
    assert mod_inverse(4, 10) is None
    assert mod_inverse(5, 1) == 1
    assert mod_inverse(-3, 10) == 3
    with pytest.raises(PreconditionError):
        mod_inverse(1, 0)


# skipcq: PY-D0003
def test_totient_table():
    table = totient_table(600)
    assert table.phi[1:11].tolist() == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert table.count(10) == 32
    assert table.count(600) == 109500
    assert table.count(1) == 1
    assert all(table.phi[c] == euler_phi(c) for c in range(1, 601))
    assert repr(table) == "<TotientTable(limit=600, N=109500)>"


@pytest.mark.parametrize("X", [1, 2, 3, 4, 5, 17, 64, 1023, 5000])
# skipcq: PY-D0003
def test_totient_table_matches_sympy(X: int):
    table = totient_table(X)
    assert table.phi[1:].tolist() == [int(sympy.totient(c)) for c in range(1, X + 1)]
    assert table.count(X) == sum(int(sympy.totient(c)) for c in range(1, X + 1))


# skipcq: PY-D0003
def test_totient_table_is_read_only():
    table = totient_table(20)
    with pytest.raises(ValueError):
        table.phi[3] = 0


# skipcq: PY-D0003
def test_totient_table_capacity():
    with pytest.raises(CapacityError) as exc_info:
        totient_table(101, Settings(totient_cap=100))
    assert exc_info.value.limit == 100
    assert exc_info.value.requested == 101
    with pytest.raises(PreconditionError):
        totient_table(0)


# skipcq: PY-D0003
def test_point_count():
    assert point_count(1) == 1
    assert point_count(10) == 32
    assert point_count(100) == 3044


# skipcq: PY-D0003
def test_unit_pairs_match_brute_force():
    a, b, c = unit_pairs(1, 31)
    assert sorted(zip(a.tolist(), b.tolist(), c.tolist())) == sorted(oracles.inverse_points(30))
    assert np.all((a * b - 1) % c == 0)
    assert np.all((1 <= b) & (b <= c))


# skipcq: PY-D0003
def test_unit_pairs_order_and_empty_range():
    a, _, c = unit_pairs(5, 9)
    assert list(zip(c.tolist(), a.tolist())) == sorted(zip(c.tolist(), a.tolist()))
    assert all(len(array) == 0 for array in unit_pairs(9, 5))


# skipcq: PY-D0003
def test_inverse_table():
    a, b = inverse_table(10)
    assert a.tolist() == [1, 3, 7, 9]
    assert b.tolist() == [1, 7, 3, 9]
    assert inverse_table(1)[0].tolist() == [1]
    assert inverse_table(1)[1].tolist() == [1]
    assert all(math.gcd(unit, 10) == 1 for unit in a.tolist())
