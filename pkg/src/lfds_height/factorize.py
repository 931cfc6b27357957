"""Integer factorization and the arithmetic functions omega, Omega and alpha_max.

Trial division by the primes below 10**4 strips small factors; the remaining
cofactor is split with Pollard's rho (Brent's cycle detection) and every
piece is certified with deterministic Miller-Rabin.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import UsageError

MAX_N = 2**62
_TRIAL_LIMIT = 10**4

# Deterministic for all n < 3.3e24, which covers every 64-bit input.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(range(i * i, limit, i)))
    return [i for i in range(limit) if sieve[i]]


SMALL_PRIMES = _small_primes(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    n = int(n)
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent(n: int, c: int) -> int:
    """One Pollard-Brent run with polynomial x^2 + c; may return n on failure."""
    y, r, q, g = 2, 1, 1, 1
    batch = 128
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(batch, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += batch
        r *= 2
    if g == n:
        # batched product hit zero; redo the last stretch one step at a time
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g


def _split(n: int) -> int:
    """A nontrivial divisor of the odd composite ``n``."""
    c = 1
    while True:
        d = _brent(n, c)
        if d != n:
            return d
        c += 1


def _factor_large(n: int, out: dict[int, int]) -> None:
    stack = [n]
    while stack:
        k = stack.pop()
        if k == 1:
            continue
        if is_prime(k):
            out[k] = out.get(k, 0) + 1
            continue
        root = math.isqrt(k)
        if root * root == k:
            stack.extend([root, root])
            continue
        d = _split(k)
        stack.extend([d, k // d])


@dataclass(frozen=True)
class Factorization:
    """``n = prod(p**alpha for p, alpha in factors)`` with primes increasing."""

    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        primes = [p for p, _ in self.factors]
        if primes != sorted(set(primes)):
            raise UsageError("primes must be strictly increasing")
        prod = 1
        for p, a in self.factors:
            if a < 1 or not is_prime(p):
                raise UsageError(f"invalid prime power {p}^{a}")
            prod *= p**a
        if prod != self.n:
            raise UsageError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    @property
    def omega(self) -> int:
        return len(self.factors)

    @property
    def big_omega(self) -> int:
        return big_omega(self)

    @property
    def alpha_max(self) -> int:
        return alpha_max(self)

    def prime_powers(self) -> list[int]:
        return [p**a for p, a in self.factors]

    def __str__(self):
        return "*".join(f"{p}^{a}" if a > 1 else str(p) for p, a in self.factors)


def factor(n: int) -> Factorization:
    """Complete prime factorization of ``2 <= n < 2**62``."""
    n = int(n)
    if n < 2:
        raise UsageError(f"cannot factor {n}: need n >= 2")
    if n >= MAX_N:
        raise UsageError(f"{n} exceeds the supported range (< 2**62)")
    found: dict[int, int] = {}
    rest = n
    for p in SMALL_PRIMES:
        if p * p > rest:
            break
        if rest % p == 0:
            e = 0
            while rest % p == 0:
                rest //= p
                e += 1
            found[p] = e
    if rest > 1:
        if rest < _TRIAL_LIMIT**2:
            # no factor below 10**4 means rest is prime
            found[rest] = found.get(rest, 0) + 1
        else:
            _factor_large(rest, found)
    return Factorization(n, tuple(sorted(found.items())))


def big_omega(f: Factorization) -> int:
    """Number of prime factors counted with multiplicity."""
    return sum(a for _, a in f.factors)


def alpha_max(f: Factorization) -> int:
    """Largest exponent in the factorization."""
    return max(a for _, a in f.factors)
