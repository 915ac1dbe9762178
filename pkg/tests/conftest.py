import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from wlkit.graph import build_graph, cycle, disjoint_union  # noqa: E402

ACCEPTANCE: dict[int, tuple[str, bool, str]] = {}


@pytest.fixture
def triangles():
    return disjoint_union(cycle(3), cycle(3))


@pytest.fixture
def hexagon():
    return cycle(6)


@st.composite
def graphs(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return build_graph(n, [p for p, keep in zip(pairs, mask) if keep])


@st.composite
def graphs_with_permutation(draw, min_n=1, max_n=7):
    g = draw(graphs(min_n, max_n))
    p = draw(st.permutations(range(g.n)))
    return g, tuple(p)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        name, ok, detail = ACCEPTANCE[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {name}  {detail}")
