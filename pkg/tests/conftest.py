import numpy as np
import pytest

_acceptance = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))
    elif report.when == "setup" and report.skipped and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], "skipped"))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = {"passed": "PASS", "failed": "FAIL"}.get(outcome, outcome.upper())
        terminalreporter.write_line(f"{mark:4s}  {name}")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def dense_dx(n, m):
    """Row-major matrix of the periodic column difference, from index arithmetic."""
    D = np.zeros((n * m, n * m))
    for i in range(n):
        for j in range(m):
            r = i * m + j
            D[r, r] -= 1.0
            D[r, i * m + (j + 1) % m] += 1.0
    return D


def dense_dy(n, m):
    D = np.zeros((n * m, n * m))
    for i in range(n):
        for j in range(m):
            r = i * m + j
            D[r, r] -= 1.0
            D[r, ((i + 1) % n) * m + j] += 1.0
    return D


def circconv(u, k):
    """Direct circular convolution, sum_{p,q} k[p,q] u[i-p, j-q]."""
    n, m = u.shape
    out = np.zeros_like(u)
    for p, q in zip(*np.nonzero(k)):
        for i in range(n):
            for j in range(m):
                out[i, j] += k[p, q] * u[(i - p) % n, (j - q) % m]
    return out
