import numpy as np
import pytest

from jacobi_inverse.experiments import random_jacobi, trial_rng

# one line per acceptance criterion, echoed in the terminal summary
CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def jacobi_samples(count, n_lo, n_hi, seed):
    """Deterministic stream of random Jacobi matrices with n in [n_lo, n_hi]."""
    out = []
    for t in range(count):
        g = trial_rng(seed, t)
        n = int(g.integers(n_lo, n_hi + 1))
        out.append(random_jacobi(n, g))
    return out
