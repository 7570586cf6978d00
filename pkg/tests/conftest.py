import numpy as np
import pytest
from scipy import integrate as sp_integrate

from onsfourier import cosine, double_system, haar


def ref_quad(f, a, b, points=None):
    """QUADPACK reference integral, independent of the package's Gauss-Legendre panels."""
    pts = None if points is None else [p for p in points if a < p < b]
    val, _ = sp_integrate.quad(lambda t: float(f(t)), a, b, points=pts or None,
                               limit=500, epsabs=1e-13, epsrel=1e-13)
    return val


@pytest.fixture(scope="session")
def families():
    c, h = cosine(), haar()
    return {
        "cosine": c,
        "haar": h,
        "doubled:cosine": double_system(c),
        "doubled:doubled:cosine": double_system(double_system(c)),
        "doubled:haar": double_system(h),
    }


@pytest.fixture(params=["cosine", "haar", "doubled:cosine", "doubled:doubled:cosine", "doubled:haar"])
def system(request, families):
    return families[request.param]


def dyadic_grid(level):
    return list(np.arange(1, 2**level) / 2**level)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
