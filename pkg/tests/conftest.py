from __future__ import annotations

import pytest

from pseudotri.plane_graph import build_plane_graph

N4_EDGES = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)]
N4_ROTATIONS = [[1, 3, 2], [2, 3, 0], [0, 1], [0, 1]]
N4_COORDS = [(0, 0), (4, 0), (2, 3), (2, 1)]

K4_EDGES = [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)]
K4_ROTATIONS = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]


@pytest.fixture
def n4():
    """Triangle 0, 1, 2 with vertex 3 inside joined to 0 and 1."""
    return build_plane_graph(4, N4_EDGES, N4_ROTATIONS, [0, 1, 2])


@pytest.fixture
def k4():
    return build_plane_graph(4, K4_EDGES, K4_ROTATIONS, [0, 1, 2])


@pytest.fixture
def triangle():
    return build_plane_graph(3, [(0, 1), (1, 2), (0, 2)], [[1, 2], [2, 0], [0, 1]], [0, 1, 2])


# one line per acceptance criterion, printed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])
