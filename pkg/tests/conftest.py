import random

import pytest

from chowring.k3model import K3Model
from chowring.polynomial import Dg, Lg, Polynomial, o


def random_bv_poly(rng, m, rho, max_codim, nterms=4, max_factors=4, fill=False):
    """Random polynomial in o(i), L(s,i), D(i,j) with coefficients in [-9, 9].

    With ``fill`` each term is grown to a random target codimension in
    [0, max_codim] instead of taking up to ``max_factors`` factors.
    """
    p = Polynomial()
    for _ in range(nterms):
        term = Polynomial.const(rng.randint(-9, 9))
        target = rng.randint(0, max_codim) if fill else max_codim
        codim = 0
        for _ in range(4 * max_codim + 4 if fill else rng.randint(0, max_factors)):
            if codim == target:
                break
            kind = rng.choice("oLD" if m >= 2 else "oL")
            if kind == "o":
                g, c = o(rng.randint(1, m)), 2
            elif kind == "L":
                g, c = Lg(rng.randint(1, rho), rng.randint(1, m)), 1
            else:
                i, j = rng.sample(range(1, m + 1), 2)
                g, c = Dg(i, j), 2
            if codim + c > target:
                continue
            term = term * g
            codim += c
        p = p + term
    return p


@pytest.fixture
def rng():
    return random.Random(20260418)


@pytest.fixture(scope="session")
def model_12():
    return K3Model(1, 2, [[2]], [[1, 0], [0, 1]])


@pytest.fixture(scope="session")
def model_23():
    return K3Model(2, 3, [[2, 1], [1, -2]], [[1, 0, 0], [0, 2, 0], [0, 0, -1]])


@pytest.fixture(scope="session")
def hyperbolic():
    return K3Model(1, 2, [[2]], [[0, 1], [1, 0]])


# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES = []


def record_criterion(number, title, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} | {detail}")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
