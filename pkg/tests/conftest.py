import itertools

import numpy as np
import pytest

from lipdense import catalog


def brute_triangle_ok(dist, tol=0.0):
    n = len(dist)
    for i, j, k in itertools.product(range(n), repeat=3):
        if dist[i][k] > dist[i][j] + dist[j][k] + tol:
            return False
    return True


def brute_lip(values, dist, lower=0.0, upper=float("inf")):
    """Pure-python pair scan over ordered pairs."""
    best = 0.0
    n = len(values)
    for i in range(n):
        for j in range(n):
            d = float(dist[i][j])
            if i != j and lower < d < upper:
                q = abs((float(values[i]) - float(values[j])) / d)
                best = max(best, q)
    return best


def random_space(seed, n=None, kind=None):
    rng = np.random.default_rng(seed)
    n = n if n is not None else int(rng.integers(8, 33))
    kind = kind or ("euclidean:2" if seed % 2 == 0 else "ultrametric")
    name = f"{kind}:{n}"
    return catalog.make_space(name, seed)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


# criterion id -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {key}: {detail}")
