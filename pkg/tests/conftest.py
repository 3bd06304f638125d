import numpy as np
import pytest

from nlamusic.geometry import ArrayGeometry, nonuniform_progressive, uniform_linear

_criteria = []


def record_criterion(label, passed, detail=""):
    _criteria.append((label, passed, detail))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in _criteria:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


def random_orthonormal(rng, M, k):
    z = rng.standard_normal((M, k)) + 1j * rng.standard_normal((M, k))
    q, _ = np.linalg.qr(z)
    return q


def random_geometry(rng):
    kind = rng.integers(4)
    M = int(rng.integers(3, 13))
    if kind == 0:
        return uniform_linear(M)
    if kind == 1:
        return nonuniform_progressive(M, rng.uniform(1, 6), "geometric", rng.uniform(1, 1.6))
    if kind == 2:
        return nonuniform_progressive(M, rng.uniform(1, 6), "arithmetic", rng.uniform(1, 4))
    pts = np.vstack([[0.0, 0.0], rng.uniform(-2, 2, size=(M - 1, 2))])
    return ArrayGeometry(pts)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


GEOMETRIES = [
    uniform_linear(11),
    nonuniform_progressive(8, 5.0, "geometric", 1.3),
    nonuniform_progressive(5, 5.0, "geometric", 1.3),
    uniform_linear(12),
    nonuniform_progressive(9, 5.5, "arithmetic", 2.0),
]
