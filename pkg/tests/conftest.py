import pytest

from logcut.graph import Graph

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def k2():
    return Graph(2, ((0, 1, 1.0),))


@pytest.fixture
def c4():
    return Graph(4, ((0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 0, 1)))


@pytest.fixture
def k4():
    return Graph(4, tuple((i, j, 1) for i in range(4) for j in range(i + 1, 4)))
