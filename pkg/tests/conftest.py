import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import strategies as st

from tolposet import Poset, from_label_cliques
from tolposet.figures import load_poset, load_relation

sys.path.insert(0, str(Path(__file__).parent))


@pytest.fixture
def fig1():
    return load_poset("fig1")


@pytest.fixture
def fig2():
    return load_poset("fig2")


@pytest.fixture
def fig4():
    return load_poset("fig4")


@pytest.fixture
def fig5():
    return load_poset("fig5")


@pytest.fixture
def rel():
    """``rel(p, "0abc", "bcd1")``: relation from cliques of single-character labels."""
    def make(p, *groups):
        return from_label_cliques(p, [list(g) if isinstance(g, str) else g for g in groups])
    return make


@pytest.fixture
def fx():
    return load_relation


@st.composite
def posets(draw, min_n=1, max_n=6):
    """Random posets: a random DAG on a random linear extension, closed and shuffled."""
    n = draw(st.integers(min_n, max_n))
    upper = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(i + 1, n):
            upper[i, j] = draw(st.booleans())
    leq = upper | np.eye(n, dtype=bool)
    for k in range(n):
        leq |= np.outer(leq[:, k], leq[k, :])
    perm = draw(st.permutations(range(n)))
    leq = leq[np.ix_(perm, perm)]
    return Poset([f"e{i}" for i in range(n)], leq)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.call_report = rep
