import pytest
from hypothesis import strategies as st

from graphinv.graph import build_graph, small_multigraphs
from graphinv.models import rose_graph


@pytest.fixture(scope="session")
def corpus():
    return small_multigraphs(3, 3)


@pytest.fixture
def p1():
    return rose_graph(1)


@pytest.fixture
def ab():
    return build_graph(["a", "b"], [("x", "a", "b")])


@pytest.fixture
def g_bad():
    return build_graph(["e", "f"], [("u", "e", "e"), ("x", "e", "f")])


@st.composite
def graphs(draw, max_vertices=4, max_edges=5):
    n = draw(st.integers(1, max_vertices))
    m = draw(st.integers(0, max_edges))
    verts = [f"v{i}" for i in range(n)]
    ends = st.sampled_from(verts)
    triples = [(f"e{j}", draw(ends), draw(ends)) for j in range(m)]
    return build_graph(verts, triples)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(mod.RESULTS):
            terminalreporter.write_line(mod.RESULTS[n])
