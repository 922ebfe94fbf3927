import pytest

from kratzer2d import PhysicalConstants, PotentialSpec


@pytest.fixture
def units():
    return PhysicalConstants()


@pytest.fixture
def kratzer():
    return PotentialSpec.kratzer(1.0)


@pytest.fixture
def coulomb():
    return PotentialSpec.modified2(1.0, 0.0)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import VERDICTS

    if VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in VERDICTS:
            terminalreporter.write_line(line)
