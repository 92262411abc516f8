import pytest

from permc.ancestry import build_seed_tables
from permc.morphism import THUE_MORSE, Morphism

FORM_A = Morphism("011101", "100010")

# Extra class-Q morphisms (one FormB with l=3, FormA with l=7 and l=8).
MORE_Q = [Morphism("011", "100"), Morphism("0111001", "1000110"), Morphism("01110101", "10001010")]

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def tm():
    return THUE_MORSE


@pytest.fixture(scope="session")
def form_a():
    return FORM_A


@pytest.fixture(scope="session")
def tm_tables():
    return build_seed_tables(THUE_MORSE)


@pytest.fixture(scope="session")
def form_a_tables():
    return build_seed_tables(FORM_A)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
