import pathlib
import random

import pytest

from kdpaths import Graph, load_edge_list

DATA = pathlib.Path(__file__).parent / "data"

# node ids in the running-example fixture
S, N1, N2, N3, N4, N5, T = range(7)


def load_running_example() -> Graph:
    with open(DATA / "running_example.txt", "rb") as fh:
        return load_edge_list(fh)


def random_graph(rng: random.Random, n_lo=8, n_hi=12, m_lo=14, m_hi=30, w_hi=10) -> Graph:
    """Directed graph without self-loops or parallel arcs, integer weights."""
    n = rng.randint(n_lo, n_hi)
    m = min(rng.randint(m_lo, m_hi), n * (n - 1))
    pairs = rng.sample([(u, v) for u in range(n) for v in range(n) if u != v], m)
    return Graph(n, [u for u, _ in pairs], [v for _, v in pairs],
                 [float(rng.randint(1, w_hi)) for _ in pairs])


@pytest.fixture
def running():
    return load_running_example()


@pytest.fixture
def diamond():
    # 0->1->3 (len 2), 0->2->3 (len 3), 0->3 (len 4)
    return Graph(4, [0, 1, 0, 2, 0], [1, 3, 2, 3, 3], [1.0, 1.0, 1.0, 2.0, 4.0])


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(RESULTS, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
