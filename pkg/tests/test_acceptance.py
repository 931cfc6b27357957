"""Exit criteria. Each test appends one PASS/FAIL line to the terminal summary."""

import itertools
import math
import time

import pytest

from lfds_height.bounds import all_bounds, bound_thm_a, is_fixed_point_system
from lfds_height.cli import main
from lfds_height.factorize import factor
from lfds_height.harness import PRESET_Z25, PRESET_Z7560, SplitMix64, run_experiment
from lfds_height.height import system_height
from lfds_height.oracle import all_reach_fixed_points, brute_height, enumerate_system
from lfds_height.system import SystemSpec
from lfds_height.verification import run_verification

from conftest import ACCEPTANCE_LINES, COMPANION_X3_MINUS_5, EXAMPLE_27720


def report(num, name, ok, detail=""):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {name}"
                            + (f" ({detail})" if detail else ""))
    return ok


def exhaustive(n, m):
    for entries in itertools.product(range(n), repeat=m * m):
        yield SystemSpec.from_rows([entries[i * m:(i + 1) * m] for i in range(m)], n)


def random_systems(count, seed, limit=10**5):
    rng = SplitMix64(seed)
    out = []
    while len(out) < count:
        n = 2 + rng.below(63)
        max_m = max(m for m in range(1, 18) if n**m <= limit)
        m = 1 + rng.below(max_m)
        rows = [[rng.below(n) for _ in range(m)] for _ in range(m)]
        if rng.below(3) == 0:
            # A mod p nilpotent for the smallest prime p | n: long transients
            p = factor(n).primes[0]
            rows = [[(p * rows[i][j] if j <= i else rows[i][j]) for j in range(m)]
                    for i in range(m)]
        out.append(SystemSpec.from_rows(rows, n))
    return out


@pytest.fixture(scope="module")
def sweep():
    """Criterion-3 systems with algebraic and brute-force results, plus elapsed time."""
    start = time.perf_counter()
    systems = list(exhaustive(6, 2)) + list(exhaustive(4, 2)) + list(exhaustive(9, 1)) \
        + list(exhaustive(8, 1)) + random_systems(1000, seed=3)
    rows = []
    for s in systems:
        f = factor(s.n)
        g = enumerate_system(s)
        rows.append((s, f, system_height(s, f).system_height, brute_height(g),
                     all_reach_fixed_points(g)))
    return rows, time.perf_counter() - start


def test_criterion_1_z27720_witness():
    start = time.perf_counter()
    s = SystemSpec.from_rows(EXAMPLE_27720, 27720)
    f = factor(27720)
    b = all_bounds(s, f)
    products = [t.product for t in b.per_prime]
    elapsed = time.perf_counter() - start
    ok = (f.factors == ((2, 3), (3, 2), (5, 1), (7, 1), (11, 1))
          and products == [9, 4, 0, 1, 0] and b.thm_b == 9 and elapsed < 1.0)
    report(1, "Z_27720^4 witness products {9,4,0,1,0}, thm_b 9", ok,
           f"products={products}, thm_b={b.thm_b}, {elapsed:.3f}s")
    assert ok


def test_criterion_2_thm_a_examples():
    start = time.perf_counter()
    got = {(n, m): bound_thm_a(factor(n), m)
           for n, m in [(210, 16), (1960, 4), (6, 3), (400827403, 3)]}
    fact = factor(400827403).factors
    elapsed = time.perf_counter() - start
    ok = (got == {(210, 16): 16, (1960, 4): 12, (6, 3): 3, (400827403, 3): 3}
          and fact == ((10333, 1), (38791, 1)) and elapsed < 1.0)
    report(2, "module bound m*alpha_max examples 16/12/3/3", ok, f"{got}, {elapsed:.3f}s")
    assert ok


def test_criterion_3_oracle_equivalence(sweep):
    rows, elapsed = sweep
    mismatches = [(s.to_json(), h, bh) for s, _, h, bh, _ in rows if h != bh]
    ok = not mismatches and len(rows) == 1296 + 256 + 9 + 8 + 1000 and elapsed < 60
    report(3, "algebraic height == brute-force height", ok,
           f"{len(rows)} systems, {len(mismatches)} mismatches, {elapsed:.1f}s")
    assert ok, mismatches[:5]


def test_criterion_4_bound_chain(sweep):
    rows, _ = sweep
    violations = []
    for s, f, h, _, _ in rows:
        b = all_bounds(s, f)
        if not h <= b.thm_b <= b.thm_a <= b.omega_bound <= b.xu_zou:
            violations.append(s.to_json())
    samples = run_experiment(PRESET_Z25) + run_experiment(PRESET_Z7560)
    violations += [r for r in samples
                   if not r.height <= r.thm_b <= r.thm_a <= r.m_omega <= r.xu_zou]
    checked = len(rows) + len(samples)
    ok = not violations and len(samples) == 120
    report(4, "height <= thm_b <= thm_a <= m*Omega <= xu_zou", ok,
           f"{checked} systems, {len(violations)} violations")
    assert ok


def test_criterion_5_tightness_witness():
    start = time.perf_counter()
    s = SystemSpec.from_rows(COMPANION_X3_MINUS_5, 25)
    f = factor(25)
    b = all_bounds(s, f)
    h = system_height(s, f).system_height
    g = enumerate_system(s)
    bh = brute_height(g)
    elapsed = time.perf_counter() - start
    ok = h == bh == b.thm_a == b.thm_b == 6 and g.size == 15625 and elapsed < 1.0
    report(5, "companion of x^3-5 over Z_25 has height 6 = thm_a = thm_b", ok,
           f"algebraic={h}, oracle={bh}, thm_a={b.thm_a}, thm_b={b.thm_b}, {elapsed:.3f}s")
    assert ok


def test_criterion_6_lemma_suites():
    start = time.perf_counter()
    results = run_verification(count=200, seed=0)
    elapsed = time.perf_counter() - start
    names = {r.name for r in results}
    ok = (names == {"fitting", "crt", "reduction-lemmas", "sandwich"}
          and all(r.instances >= 200 and r.ok for r in results) and elapsed < 120)
    report(6, "lemma suites (reduction, Fitting, CRT, height sandwich)", ok,
           "; ".join(r.summary() for r in results) + f", {elapsed:.1f}s")
    assert ok


def test_criterion_7_fps_equivalence(sweep):
    rows, _ = sweep
    wrong = [s.to_json() for s, f, _, _, fixed in rows
             if is_fixed_point_system(s, all_bounds(s, f).thm_b) != fixed]
    n_fixed = sum(r[4] for r in rows)
    ok = not wrong
    report(7, "A^(k+1)==A^k with k=thm_b matches oracle", ok,
           f"{len(rows)} systems ({n_fixed} fixed point systems), {len(wrong)} disagreements")
    assert ok


def _read_csv(path):
    lines = path.read_text().split("\n")
    assert lines[-1] == ""
    header = lines[0].split(",")
    return header, [dict(zip(header, map(int, ln.split(",")))) for ln in lines[1:-1]]


def test_criterion_8_preset_configs(tmp_path):
    p1, p2 = tmp_path / "z25.csv", tmp_path / "z7560.csv"
    assert main(["sample", "--preset", "z25", "--output", str(p1)]) == 0
    start = time.perf_counter()
    assert main(["sample", "--preset", "z7560", "--output", str(p2)]) == 0
    elapsed = time.perf_counter() - start
    h1, rows1 = _read_csv(p1)
    h2, rows2 = _read_csv(p2)
    sorted1 = [r["height"] for r in rows1] == sorted(r["height"] for r in rows1)
    sorted2 = [r["height"] for r in rows2] == sorted(r["height"] for r in rows2)
    ok = (h1 == h2 == ["index", "height", "thm_b", "thm_a", "m_omega", "xu_zou"]
          and PRESET_Z25.mode == "non-invertible" and len(rows1) == 100 and len(rows2) == 20
          and sorted1 and sorted2
          and {(r["thm_a"], r["xu_zou"]) for r in rows1} == {(6, 14)}
          and {(r["thm_a"], r["m_omega"], r["xu_zou"]) for r in rows2} == {(96, 256, 413)}
          and elapsed < 120)
    heights1 = sorted({r["height"] for r in rows1})
    report(8, "presets: z25 thm_a=6, xu_zou=14; z7560 96/256/413", ok,
           f"z25 heights {heights1}, z7560 {elapsed:.2f}s")
    assert ok
