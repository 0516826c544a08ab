import random

import pytest

from wildjet import Arc, LaurentSeries, field
from wildjet.arc import degree

RESULTS = {}


def record(n, ok, detail):
    """Remember one acceptance line; printed in the terminal summary."""
    RESULTS[n] = (ok, detail)
    return ok


def rand_poly(F, rnd, lo, hi, prec, coeff_range=None):
    """Random polynomial sum c_k X^k for lo <= k <= hi with c_lo != 0."""
    top = coeff_range or F.q
    coeffs = [rnd.randrange(1, top)] + [rnd.randrange(top) for _ in range(hi - lo)]
    return LaurentSeries(F, lo, coeffs, prec)


def rand_arc(F, rnd, prec=64, max_val=4, length=6, primitive=True, coeff_range=None):
    while True:
        a, b = rnd.randint(1, max_val), rnd.randint(1, max_val)
        t = rand_poly(F, rnd, a, a + rnd.randint(0, length), prec, coeff_range)
        u = rand_poly(F, rnd, b, b + rnd.randint(0, length), prec, coeff_range)
        c = Arc(t, u)
        if not primitive or degree(c) == 1:
            return c


def rand_regular_arc(F, rnd, prec=64, length=6):
    X = LaurentSeries.gen(F, prec)
    lo = 1 if rnd.random() < 0.3 else 2
    free = rand_poly(F, rnd, lo, lo + length, prec) if rnd.random() < 0.9 else LaurentSeries.zero(F, prec)
    return Arc(X, free) if rnd.random() < 0.5 else Arc(free, X) if not free.is_zero() else Arc(X, free)


@pytest.fixture
def rnd():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def F3():
    return field(3)


@pytest.fixture(scope="session")
def F5():
    return field(5)


@pytest.fixture(scope="session")
def F9():
    return field(3, 2)


def pytest_terminal_summary(terminalreporter):
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
