import random

import pytest

from eaqec.catalog import coffeepot_code
from eaqec.graphstate import Graph


@pytest.fixture(scope="session")
def coffeepot():
    return coffeepot_code()


@pytest.fixture
def star4():
    return Graph.star(4, pure=(0,))


def random_graph(rng: random.Random, max_vertices: int = 7, min_noisy: int = 1) -> Graph:
    n = rng.randint(max(2, min_noisy), max_vertices)
    density = rng.random()
    edges = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < density]
    pure = [v for v in range(n) if rng.random() < 0.25][: n - min_noisy]
    return Graph.from_edges(n, edges, pure)


# one "criterion N: PASS|FAIL ..." line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
