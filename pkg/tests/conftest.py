import pytest

from toric_hartogs.lattice import hirzebruch, product_p1_p1, projective_space


@pytest.fixture(scope="session")
def P2():
    return projective_space(2)


@pytest.fixture(scope="session")
def P1P1():
    return product_p1_p1()


@pytest.fixture(scope="session")
def H1():
    return hirzebruch(1)


SURFACES = [projective_space(2), product_p1_p1()] + [hirzebruch(r) for r in range(4)]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
