import os
import sys

import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from hodgerank.complex import build_complex  # noqa: E402
from hodgerank.operators import boundary_operators, hodge_laplacian  # noqa: E402

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

FIVE_NODE = [{1, 2, 3}, {2, 4}, {3, 4, 5}, {3, 5}, {4, 5}, {3, 4}]
WORKED_FLOW = np.array([3.0, 1.0, -1.0, 1.0, 2.0, 3.0, -2.0])

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def five_node():
    return build_complex(FIVE_NODE)


@pytest.fixture
def five_bundle(five_node):
    return hodge_laplacian(boundary_operators(five_node))


@st.composite
def complexes(draw, max_nodes=12, min_edges=1):
    """Random complexes: a random graph plus a random subset of its triangles filled."""
    n = draw(st.integers(2, max_nodes))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, k in zip(pairs, keep) if k]
    if len(edges) < min_edges:
        edges = pairs[:min_edges]
    es = set(edges)
    tris = [
        (u, v, w)
        for u, v in edges
        for w in range(v + 1, n)
        if (u, w) in es and (v, w) in es
    ]
    fill = draw(st.lists(st.booleans(), min_size=len(tris), max_size=len(tris)))
    records = [list(e) for e in edges] + [list(t) for t, f in zip(tris, fill) if f]
    return build_complex(records)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
