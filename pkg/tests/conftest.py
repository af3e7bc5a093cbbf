import random
import sys

import hypothesis
import hypothesis.strategies as st
import pytest

from spancsp.graph import Graph, generate_random_graph

hypothesis.settings.register_profile("default", max_examples=60, deadline=None)
hypothesis.settings.load_profile("default")


def graphs(max_nodes=4, max_edges=5):
    return st.integers(0, 2**32).map(lambda s: generate_random_graph(s, max_nodes, max_edges))


def rngs():
    return st.integers(0, 2**32).map(random.Random)


@pytest.fixture
def edge():
    """A single edge ``0 -> 1``."""
    return Graph.from_edges([0, 1], [(0, 1)])


@pytest.fixture
def loop():
    return Graph.from_edges([0], [(0, 0)])


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(module.RESULTS):
        terminalreporter.write_line(module.RESULTS[n])
