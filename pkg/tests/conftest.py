import math

import pytest
from hypothesis import strategies as st

from nilgraph.graph import build_graph
from nilgraph.ring import build_ring

ACCEPTANCE_LINES = []


@st.composite
def ring_specs(draw, max_order=200, max_factors=3):
    factors = []
    for _ in range(draw(st.integers(1, max_factors))):
        room = max_order // max(1, math.prod(factors))
        if room < 2:
            break
        factors.append(draw(st.integers(2, min(room, 40))))
    return "x".join(f"Z{m}" for m in factors)


@pytest.fixture
def graph_of():
    def make(text):
        return build_graph(build_ring(text))

    return make


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
