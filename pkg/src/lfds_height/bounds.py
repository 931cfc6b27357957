"""Upper bounds on the system height and the fixed-point-system test."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import UsageError
from .factorize import Factorization, alpha_max, big_omega, factor
from .height import height_mod_p
from .ring import mat_mul, mat_pow
from .system import SystemSpec

BOUND_NAMES = ("thm-b", "thm-a", "omega", "xu-zou")


@dataclass(frozen=True)
class PrimeTerm:
    """``alpha * s`` for one prime, with ``s`` the height of (Z_p^m, A mod p)."""

    p: int
    alpha: int
    s: int

    @property
    def product(self) -> int:
        return self.alpha * self.s


@dataclass(frozen=True)
class ThmBResult:
    thm_b: int
    per_prime: tuple[PrimeTerm, ...]


@dataclass(frozen=True)
class BoundsReport:
    thm_a: int
    thm_b: int
    omega_bound: int
    xu_zou: int
    per_prime: tuple[PrimeTerm, ...]

    def as_dict(self) -> dict:
        return {
            "thm_b": self.thm_b,
            "thm_a": self.thm_a,
            "m_omega": self.omega_bound,
            "xu_zou": self.xu_zou,
        }

    def select(self, name: str) -> int:
        """Look a bound up by its CLI name (``thm-b``, ``thm-a``, ``omega``, ``xu-zou``)."""
        table = {
            "thm-b": self.thm_b,
            "thm-a": self.thm_a,
            "omega": self.omega_bound,
            "xu-zou": self.xu_zou,
        }
        if name not in table:
            raise UsageError(f"unknown bound {name!r}; choose from {BOUND_NAMES}")
        return table[name]


def bound_thm_a(f: Factorization, m: int) -> int:
    """``m * alpha_max``: depends only on the module, not on A."""
    return m * alpha_max(f)


def bound_omega(f: Factorization, m: int) -> int:
    """``m * Omega(n)``, the length of the longest proper submodule chain."""
    return m * big_omega(f)


def bound_xu_zou(n: int, m: int) -> int:
    """``ceil(m * log2(n))`` as the least k with ``2**k >= n**m`` (exact)."""
    if n < 2 or m < 1:
        raise UsageError("need n >= 2 and m >= 1")
    size = n**m
    k = size.bit_length()
    # 2**(k-1) <= size < 2**k; size is a power of two iff it equals 2**(k-1)
    return k - 1 if size == 1 << (k - 1) else k


def bound_thm_b(sys: SystemSpec, f: Factorization) -> ThmBResult:
    """``max(alpha_i * s_i)`` over the distinct primes of n."""
    if f.n != sys.n:
        raise UsageError(f"factorization is of {f.n}, system modulus is {sys.n}")
    terms = tuple(PrimeTerm(p, a, height_mod_p(sys.a, p)) for p, a in f.factors)
    return ThmBResult(max(t.product for t in terms), terms)


def all_bounds(sys: SystemSpec, f: Factorization) -> BoundsReport:
    tb = bound_thm_b(sys, f)
    return BoundsReport(
        thm_a=bound_thm_a(f, sys.m),
        thm_b=tb.thm_b,
        omega_bound=bound_omega(f, sys.m),
        xu_zou=bound_xu_zou(sys.n, sys.m),
        per_prime=tb.per_prime,
    )


def is_fixed_point_system(sys: SystemSpec, k: Optional[int] = None,
                          f: Optional[Factorization] = None) -> bool:
    """True iff ``A^(k+1) == A^k``.

    Decides whether every state ends on a fixed point, provided ``k`` is at
    least the system height. ``k`` defaults to the function dependent bound.
    """
    if k is None:
        k = bound_thm_b(sys, f or factor(sys.n)).thm_b
    if k < 0:
        raise UsageError("k must be nonnegative")
    ak = mat_pow(sys.a, k)
    return mat_mul(ak, sys.a) == ak
