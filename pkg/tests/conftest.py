import itertools

import numpy as np
import pytest
from hypothesis import strategies as st

from lfds_height.ring import MatrixModN
from lfds_height.system import SystemSpec

EXAMPLE_27720 = [
    [17453, 19126, 430, 13601],
    [3116, 18264, 19275, 26452],
    [22825, 2401, 22534, 173],
    [4496, 13083, 3885, 12974],
]
COMPANION_X3_MINUS_5 = [[0, 0, 5], [1, 0, 0], [0, 1, 0]]


@pytest.fixture
def example_system():
    return SystemSpec.from_rows(EXAMPLE_27720, 27720)


@pytest.fixture
def companion():
    return SystemSpec.from_rows(COMPANION_X3_MINUS_5, 25)


def naive_mul(a, b, n):
    m = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(m)) % n for j in range(m)] for i in range(m)]


def brute_image(a: MatrixModN) -> int:
    """Count distinct A x over every x in Z_n^m."""
    n, m = a.modulus, a.dim
    xs = np.array(list(itertools.product(range(n), repeat=m)), dtype=np.int64)
    images = (xs @ a.entries.T) % n
    return len({tuple(r) for r in images})


@st.composite
def small_systems(draw, moduli=(2, 3, 4, 5, 6, 8, 9, 10, 12), max_states=4096):
    n = draw(st.sampled_from(moduli))
    max_m = 1
    while n ** (max_m + 1) <= max_states:
        max_m += 1
    m = draw(st.integers(1, min(max_m, 4)))
    rows = draw(st.lists(st.lists(st.integers(0, n - 1), min_size=m, max_size=m),
                         min_size=m, max_size=m))
    return SystemSpec.from_rows(rows, n)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
