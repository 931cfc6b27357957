import math
import random

import pytest
from hypothesis import given, strategies as st

from lfds_height.errors import UsageError
from lfds_height.factorize import (
    SMALL_PRIMES,
    Factorization,
    alpha_max,
    big_omega,
    factor,
    is_prime,
)


def trial_division(n):
    out, d = [], 2
    while d * d <= n:
        e = 0
        while n % d == 0:
            n //= d
            e += 1
        if e:
            out.append((d, e))
        d += 1
    if n > 1:
        out.append((n, 1))
    return tuple(out)


@pytest.mark.parametrize("n, expected", [
    (27720, ((2, 3), (3, 2), (5, 1), (7, 1), (11, 1))),
    (400827403, ((10333, 1), (38791, 1))),
    (210, ((2, 1), (3, 1), (5, 1), (7, 1))),
    (1960, ((2, 3), (5, 1), (7, 2))),
    (7560, ((2, 3), (3, 3), (5, 1), (7, 1))),
])
def test_known_factorizations(n, expected):
    assert factor(n).factors == expected
    assert trial_division(n) == expected


def test_big_omega():
    assert big_omega(factor(210)) == 4
    assert big_omega(factor(27720)) == 8
    assert big_omega(factor(32)) == 5


def test_alpha_max():
    assert alpha_max(factor(1960)) == 3
    assert alpha_max(factor(6)) == 1
    assert alpha_max(factor(7560)) == 3


def test_rejects_small_n():
    for n in (-3, 0, 1):
        with pytest.raises(UsageError):
            factor(n)
    with pytest.raises(UsageError):
        factor(2**62)


def test_invalid_factorization_rejected():
    with pytest.raises(UsageError):
        Factorization(12, ((2, 2), (3, 2)))
    with pytest.raises(UsageError):
        Factorization(12, ((3, 1), (2, 2)))
    with pytest.raises(UsageError):
        Factorization(16, ((4, 2),))


def test_is_prime_against_sieve():
    sieve = set(SMALL_PRIMES)
    assert all(is_prime(k) == (k in sieve) for k in range(10**4))
    assert is_prime(2**61 - 1)
    assert not is_prime(3215031751)  # strong pseudoprime to bases 2, 3, 5, 7
    assert not is_prime(3825123056546413051)  # spsp to bases 2..23


def test_hard_semiprimes():
    pairs = [(1073741827, 2147483659), (4294967291, 1000000007),
             (2147483647, 2147483629), (998244353, 3037000493)]
    for p, q in pairs:
        assert is_prime(p) and is_prime(q)
        assert factor(p * q).factors == tuple(sorted([(p, 1), (q, 1)]))
    assert factor(2147483647**2).factors == ((2147483647, 2),)


def _check(n):
    f = factor(n)
    assert math.prod(p**a for p, a in f.factors) == n
    assert all(is_prime(p) for p in f.primes)
    assert alpha_max(f) <= big_omega(f) <= math.log2(n) + 1e-9


def test_reconstruction_exhaustive():
    for n in range(2, 10**6 + 1):
        f = factor(n)
        prod = 1
        for p, a in f.factors:
            prod *= p**a
        assert prod == n, n


def test_reconstruction_random_62_bit():
    rng = random.Random(20240601)
    for _ in range(10**4):
        _check(rng.randrange(2, 2**62))


@given(st.integers(2, 2**62 - 1))
def test_reconstruction_property(n):
    _check(n)
