import random

import pytest

from starchains.groebner import QuotientRing

FERMAT = "x^3 + y^3 + z^3"


def make_rings():
    return {
        "R1": QuotientRing.from_strings(2, ["x", "y"], name="R1"),
        "R2": QuotientRing.from_strings(3, ["x", "y"], name="R2"),
        "R3": QuotientRing.from_strings(2, ["x", "y", "z"], [FERMAT], name="R3"),
        "R4": QuotientRing.from_strings(5, ["x", "y"], name="R4"),
    }


RINGS = make_rings()


@pytest.fixture
def R1():
    return RINGS["R1"]


@pytest.fixture
def R2():
    return RINGS["R2"]


@pytest.fixture
def R3():
    return RINGS["R3"]


@pytest.fixture
def R4():
    return RINGS["R4"]


def random_form(R, rng: random.Random, degree: int, terms: int = 2):
    """A random nonzero homogeneous element of the given degree."""
    S = R.ambient
    monos = S.monomials_of_degree(degree)
    while True:
        chosen = rng.sample(monos, min(terms, len(monos)))
        f = sum((S.monomial(m, rng.randrange(1, S.p)) for m in chosen), S.zero())
        if f:
            return f


def random_m_primary(R, rng: random.Random, max_degree: int = 3, extra: int = 2):
    """Pure powers of the first two variables plus a few random forms."""
    S = R.ambient
    x, y = S.gens()[0], S.gens()[1]
    gens = [x ** rng.randint(1, max_degree), y ** rng.randint(1, max_degree)]
    for _ in range(extra):
        gens.append(random_form(R, rng, rng.randint(1, max_degree)))
    return R.ideal(gens)


def pytest_terminal_summary(terminalreporter):
    import acceptance_log

    if not acceptance_log.LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(acceptance_log.LINES):
        for line in acceptance_log.LINES[number]:
            terminalreporter.write_line(line)
