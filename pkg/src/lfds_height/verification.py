"""Seeded instance generators and the lemma suites run by ``lfds verify``."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import UsageError
from .factorize import factor
from .harness import SplitMix64
from .oracle import (
    DEFAULT_CAP,
    LemmaReport,
    enumerate_system,
    graph_from_successor,
    verify_crt,
    verify_fitting,
    verify_reduction_lemmas,
    verify_sandwich,
)
from .system import PrimaryComponent, SystemSpec

ANY_MODULI = (2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 18, 25, 27)
COMPOSITE_MODULI = (6, 10, 12, 14, 15, 18, 20, 24, 28, 30, 36, 45, 72)
PRIME_POWER_MODULI = (4, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125)
STATE_LIMIT = 20000


def _max_dim(n: int, limit: int) -> int:
    m = 1
    while n ** (m + 1) <= limit:
        m += 1
    return m


def random_system(rng: SplitMix64, moduli, limit: int = STATE_LIMIT) -> SystemSpec:
    """A small random system; a third of draws are biased towards long transients.

    Biased draws are ``p*B + U`` with ``U`` strictly upper triangular, for
    ``p`` the smallest prime of ``n``, which makes ``A mod p`` nilpotent.
    """
    n = moduli[rng.below(len(moduli))]
    m = rng.below(_max_dim(n, limit)) + 1
    rows = [[rng.below(n) for _ in range(m)] for _ in range(m)]
    if rng.below(3) == 0:
        p = factor(n).primes[0]
        rows = [[(p * rows[i][j] if j <= i else rows[i][j]) for j in range(m)]
                for i in range(m)]
    return SystemSpec.from_rows(rows, n)


@dataclass
class SuiteResult:
    name: str
    instances: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, reports: list[LemmaReport], sys: SystemSpec) -> None:
        self.instances += 1
        bad = [r for r in reports if not r.passed]
        if bad:
            self.failures.append((sys, bad))
        else:
            self.passed += 1

    def summary(self) -> str:
        return f"{self.name}: {self.passed}/{self.instances} instances passed"


def run_verification(count: int = 200, seed: int = 0, cap: int = DEFAULT_CAP,
                     inject_fault: bool = False,
                     progress: Optional[Callable[[str], None]] = None) -> list[SuiteResult]:
    """Run every lemma suite on ``count`` generated instances each.

    ``inject_fault`` corrupts one successor in the first Fitting instance so
    the failure path can be exercised.
    """
    if count < 1:
        raise UsageError("count must be >= 1")
    rng = SplitMix64(seed)
    results = []

    fitting = SuiteResult("fitting")
    for i in range(count):
        sys = random_system(rng, ANY_MODULI)
        g = enumerate_system(sys, cap)
        if inject_fault and i == 0:
            succ = g.successor.copy()
            succ[0] = 1 % succ.size
            g = graph_from_successor(succ, g.n, g.m)
        fitting.record([verify_fitting(sys, g)], sys)
    results.append(fitting)

    crt = SuiteResult("crt")
    for _ in range(count):
        sys = random_system(rng, COMPOSITE_MODULI)
        crt.record([verify_crt(sys, factor(sys.n), cap)], sys)
    results.append(crt)

    reduction = SuiteResult("reduction-lemmas")
    sandwich = SuiteResult("sandwich")
    for _ in range(count):
        sys = random_system(rng, PRIME_POWER_MODULI)
        (p, a), = factor(sys.n).factors
        comp = PrimaryComponent(p, a, sys)
        reduction.record(verify_reduction_lemmas(comp, cap), sys)
        sandwich.record([verify_sandwich(comp, cap)], sys)
    results.extend([reduction, sandwich])

    if progress:
        for r in results:
            progress(r.summary())
    return results

