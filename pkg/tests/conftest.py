import os
import sys

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from daglca import Dag  # noqa: E402

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def dags(draw, max_n=12):
    """Random DAGs: a hidden permutation plus forward edges."""
    n = draw(st.integers(0, max_n))
    perm = draw(st.permutations(range(n)))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Dag(n, [(perm[i], perm[j]) for (i, j), k in zip(pairs, keep) if k])


@st.composite
def bool_matrices(draw, max_dim=10, rows=None, cols=None):
    r = draw(st.integers(0, max_dim)) if rows is None else rows
    c = draw(st.integers(0, max_dim)) if cols is None else cols
    import numpy as np

    flat = draw(st.lists(st.booleans(), min_size=r * c, max_size=r * c))
    return np.array(flat, dtype=bool).reshape(r, c)


@pytest.fixture
def chain():
    return Dag(3, [(0, 1), (1, 2)])


@pytest.fixture
def diamond():
    return Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def butterfly():
    return Dag(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.fixture
def isolated_pair():
    return Dag(2)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
