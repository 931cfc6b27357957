"""Sampling experiments comparing the exact height with every bound.

Random matrices come from SplitMix64 (Steele, Lea & Flood 2014), chosen
because it is a few lines in any language: a port seeded identically
reproduces the same matrices. A residue in ``[0, n)`` is drawn by rejection:
draw ``u``, reject while ``u >= 2**64 - (2**64 % n)``, return ``u % n``.
Entries are drawn row by row.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

from .bounds import all_bounds
from .errors import ConfigError
from .factorize import factor
from .height import system_height
from .ring import MatrixModN, rank_mod_p
from .system import SystemSpec

_MASK64 = (1 << 64) - 1
MAX_REJECTIONS = 10**5
CSV_HEADER = ("index", "height", "thm_b", "thm_a", "m_omega", "xu_zou")
MODES = ("uniform", "non-invertible")


class SplitMix64:
    """64-bit SplitMix generator."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)``."""
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n


@dataclass(frozen=True)
class ExperimentConfig:
    n: int
    m: int
    count: int = 100
    seed: int = 0
    mode: str = "uniform"

    def __post_init__(self):
        if self.count < 1:
            raise ConfigError("sample count must be >= 1")
        if self.n < 2 or self.m < 1:
            raise ConfigError("need n >= 2 and m >= 1")
        if self.mode not in MODES:
            raise ConfigError(f"mode must be one of {MODES}")


# Presets for the two bound-comparison plots. The original sampling
# distribution is unknown, so these are defaults, not reconstructions.
PRESET_Z25 = ExperimentConfig(n=25, m=3, count=100, seed=1, mode="non-invertible")
PRESET_Z7560 = ExperimentConfig(n=7560, m=32, count=20, seed=2, mode="uniform")


@dataclass(frozen=True)
class SampleRow:
    index: int
    height: int
    thm_b: int
    thm_a: int
    m_omega: int
    xu_zou: int

    def as_tuple(self) -> tuple[int, ...]:
        return (self.index, self.height, self.thm_b, self.thm_a, self.m_omega, self.xu_zou)


def _is_singular_somewhere(a: MatrixModN, primes: Sequence[int]) -> bool:
    return any(rank_mod_p(a, p) < a.dim for p in primes)


def sample_matrices(cfg: ExperimentConfig) -> Iterator[SystemSpec]:
    """Yield ``cfg.count`` systems; deterministic in ``cfg``.

    In ``non-invertible`` mode a draw is rejected unless ``A mod p`` is
    singular for some prime ``p | n``.
    """
    rng = SplitMix64(cfg.seed)
    primes = factor(cfg.n).primes
    for _ in range(cfg.count):
        for _attempt in range(MAX_REJECTIONS):
            rows = [[rng.below(cfg.n) for _ in range(cfg.m)] for _ in range(cfg.m)]
            a = MatrixModN.from_rows(rows, cfg.n)
            if cfg.mode == "uniform" or _is_singular_somewhere(a, primes):
                yield SystemSpec(a)
                break
        else:
            raise ConfigError(f"no non-invertible matrix after {MAX_REJECTIONS} draws")


def evaluate(index: int, sys: SystemSpec) -> SampleRow:
    f = factor(sys.n)
    b = all_bounds(sys, f)
    h = system_height(sys, f).system_height
    return SampleRow(index, h, b.thm_b, b.thm_a, b.omega_bound, b.xu_zou)


def run_experiment(cfg: ExperimentConfig,
                   systems: Optional[Iterable[SystemSpec]] = None) -> list[SampleRow]:
    """One row per sampled system, sorted by exact height (ties by index).

    ``systems`` replaces the random draw, e.g. to inject a known matrix.
    """
    source = sample_matrices(cfg) if systems is None else systems
    rows = [evaluate(i, s) for i, s in enumerate(source)]
    rows.sort(key=lambda r: (r.height, r.index))
    return rows


def rows_to_csv(rows: Iterable[SampleRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.as_tuple())
    return buf.getvalue()
