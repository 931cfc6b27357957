"""Exact heights of (Z_p^m, A), (Z_{p^r}^m, A) and (Z_n^m, A).

The height of a linear system is the index at which the descending image
chain ``im A^0 ⊇ im A^1 ⊇ ...`` stops shrinking. Over a field the chain is
tracked by ranks; over Z_{p^r} by image cardinalities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import UsageError
from .factorize import Factorization, is_prime
from .ring import MatrixModN, image_cardinality, mat_mul, rank_mod_p
from .system import PrimaryComponent, SystemSpec, primary_components


@dataclass(frozen=True)
class ComponentHeight:
    p: int
    alpha: int
    height: int
    image_chain: tuple[int, ...]


@dataclass(frozen=True)
class HeightReport:
    """Exact system height together with the per-component data it came from.

    ``image_chain`` of each component lists ``|im A^k|`` for
    ``k = 0 .. height + 1``; the last two entries coincide.
    """

    system_height: int
    per_component: tuple[ComponentHeight, ...]

    @property
    def image_chains(self) -> dict[int, tuple[int, ...]]:
        return {c.p: c.image_chain for c in self.per_component}


@dataclass(frozen=True)
class FittingSplit:
    """Sizes of the invertible part N = im A^s and nilpotent part T = ker A^s."""

    invertible_size: int
    nilpotent_size: int


def rank_chain(a: MatrixModN, p: int) -> list[int]:
    """Ranks of ``A^0, A^1, ...`` mod p up to and including the first repeat."""
    if not is_prime(p):
        raise UsageError(f"{p} is not prime")
    a = a.reduce(p)
    m = a.dim
    ranks = [m]
    power = MatrixModN.identity(m, p)
    for _ in range(m + 1):
        power = mat_mul(power, a)
        ranks.append(rank_mod_p(power, p))
        if ranks[-1] == ranks[-2]:
            return ranks
    raise AssertionError("rank chain failed to stabilize within m steps")


def height_mod_p(a: MatrixModN, p: int) -> int:
    """Height of (Z_p^m, A mod p): least k with rank A^(k+1) == rank A^k."""
    return len(rank_chain(a, p)) - 2


def image_chain(comp: PrimaryComponent) -> list[int]:
    """``|im A^k|`` over Z_{p^alpha} up to and including the first repeat."""
    a = comp.sys.a
    p, r, m = comp.p, comp.alpha, a.dim
    sizes = [comp.modulus**m]
    power = MatrixModN.identity(m, comp.modulus)
    # at most m*r proper drops are possible, so m*r + 1 steps always suffice
    for _ in range(m * r + 1):
        power = mat_mul(power, a)
        sizes.append(image_cardinality(power, p, r))
        if sizes[-1] == sizes[-2]:
            return sizes
    raise AssertionError("image chain failed to stabilize within m*alpha steps")


def height_mod_p_power(comp: PrimaryComponent) -> int:
    """Height of (Z_{p^alpha}^m, A mod p^alpha)."""
    return len(image_chain(comp)) - 2


def component_height(comp: PrimaryComponent) -> ComponentHeight:
    chain = image_chain(comp)
    return ComponentHeight(comp.p, comp.alpha, len(chain) - 2, tuple(chain))


def system_height(sys: SystemSpec, f: Factorization) -> HeightReport:
    """Height of (Z_n^m, A) as the largest height of its primary components."""
    comps = [component_height(c) for c in primary_components(sys, f)]
    return HeightReport(max(c.height for c in comps), tuple(comps))


def fitting_split(comp: PrimaryComponent) -> FittingSplit:
    """Sizes |N| and |T| of the Fitting decomposition of a component."""
    chain = image_chain(comp)
    total = comp.modulus**comp.sys.m
    return FittingSplit(chain[-1], total // chain[-1])
