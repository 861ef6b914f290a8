import sys
from itertools import combinations, combinations_with_replacement
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from pattern_turan.pattern import Hypergraph, Pattern, example_pattern  # noqa: E402

ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture
def example():
    return example_pattern()


@pytest.fixture
def nonminimal():
    # k=2, E={{1,2},{1,3}}, R={}
    return Pattern(2, 3, [(1, 1, 0), (1, 0, 1)], frozenset())


def multisets(k, m):
    out = []
    for combo in combinations_with_replacement(range(m), k):
        Y = [0] * m
        for i in combo:
            Y[i] += 1
        out.append(tuple(Y))
    return out


@st.composite
def patterns(draw, ks=(2, 3), max_m=4, min_m=1):
    k = draw(st.sampled_from(ks))
    m = draw(st.integers(min_m, max_m))
    pool = multisets(k, m)
    E = draw(st.lists(st.sampled_from(pool), unique=True, max_size=min(len(pool), 6)))
    R = draw(st.sets(st.integers(0, m - 1)))
    return Pattern(k, m, E, frozenset(R))


@st.composite
def hypergraphs(draw, k=3, max_n=6, min_n=0):
    n = draw(st.integers(min_n, max_n))
    slots = list(combinations(range(n), k))
    edges = draw(st.sets(st.sampled_from(slots))) if slots else set()
    return Hypergraph(n, k, frozenset(edges))


@st.composite
def simplex_points(draw, m):
    w = draw(st.lists(st.floats(0.01, 1.0), min_size=m, max_size=m))
    s = sum(w)
    return [a / s for a in w]
