import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from simplicial_tsnet import (  # noqa: E402
    CliqueComplex,
    LogisticParams,
    VisibilityGraph,
    logistic_series,
    maximal_cliques,
)
from simplicial_tsnet.report import run_pipeline  # noqa: E402

PERIOD_16 = 3.566
EDGE_OF_CHAOS = 3.56995


@pytest.fixture
def two_triangles() -> CliqueComplex:
    g = VisibilityGraph.from_edges([(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], 4)
    return maximal_cliques(g)


@pytest.fixture
def k3() -> CliqueComplex:
    return maximal_cliques(VisibilityGraph.from_edges([(0, 1), (0, 2), (1, 2)], 3))


_cache: dict = {}


def logistic_run(mu: float, x0: float = 0.4, n: int = 10000, transient: int = 1000):
    """Full pipeline on a logistic orbit, memoised across the session."""
    key = (mu, x0, n, transient)
    if key not in _cache:
        ts = logistic_series(LogisticParams(mu=mu, x0=x0, n=n, transient=transient))
        _cache[key] = run_pipeline(ts, per_node=True)
    return _cache[key]


@pytest.fixture(scope="session")
def period16():
    return logistic_run(PERIOD_16)


@pytest.fixture(scope="session")
def edge_of_chaos():
    return logistic_run(EDGE_OF_CHAOS)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
