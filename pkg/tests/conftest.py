import pytest
from hypothesis import strategies as st

from mban.core import Digraph


@st.composite
def digraphs(draw, min_n=1, max_n=7, odd_only=False):
    n = draw(st.integers(min_n, max_n))
    if odd_only and n % 2 == 0:
        n = n + 1 if n < max_n else n - 1
    code = draw(st.integers(0, (1 << (n * n)) - 1))
    arcs = [(u, v) for u in range(n) for v in range(n) if (code >> (u * n + v)) & 1]
    return Digraph.from_arcs(n, arcs)


@pytest.fixture
def k3():
    return Digraph.from_arcs(3, [(u, v) for u in range(3) for v in range(3)])


@pytest.fixture
def c3():
    return Digraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


# one line per acceptance criterion, repeated in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
