from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotri.errors import DegenerateGraph, EmptySubset, InconsistentRotation, OuterFaceNotFound
from pseudotri.generate import generate_graph
from pseudotri.plane_graph import (
    build_plane_graph,
    components,
    fill_holes,
    from_coordinates,
    induced_boundary_cycles,
    induced_subgraph,
    is_simply_connected,
    trace_faces,
)

from .conftest import N4_COORDS, N4_EDGES


def _euler_ok(g):
    return sum(len(w) for w in g.faces) == 2 * g.m and g.order - g.m + len(g.faces) == 2


def test_triangle_faces(triangle):
    assert len(triangle.faces) == 2
    assert all(len(w) == 3 for w in triangle.faces)
    assert triangle.outer_cycle_ccw() == [0, 1, 2]


def test_k4_faces(k4):
    assert len(k4.faces) == 4
    assert all(len(w) == 3 for w in k4.faces)
    assert k4.outer_cycle_ccw() == [0, 1, 2]
    assert 3 not in k4.outer_vertices()


def test_missing_rotation_entry():
    with pytest.raises(InconsistentRotation):
        build_plane_graph(3, [(0, 1), (1, 2), (0, 2)], [[1], [2, 0], [0, 1]])


def test_bad_outer_hint(triangle):
    with pytest.raises(OuterFaceNotFound):
        build_plane_graph(3, [(0, 1), (1, 2), (0, 2)], [[1, 2], [2, 0], [0, 1]], [0, 1, 3])


@pytest.mark.parametrize(
    "n, edges, rot",
    [
        (1, [], [[]]),
        (3, [(0, 0)], [[0], [], []]),
        (2, [(0, 1), (1, 0)], [[1], [0]]),
        (4, [(0, 1), (2, 3)], [[1], [0], [3], [2]]),
    ],
)
def test_degenerate_inputs(n, edges, rot):
    with pytest.raises(DegenerateGraph):
        build_plane_graph(n, edges, rot)


def test_non_planar_rotation_rejected():
    # K4 with the rotation at the centre reversed has the wrong Euler characteristic
    with pytest.raises(InconsistentRotation):
        build_plane_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3), (2, 3)],
                          [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 2, 1]])


def test_n4_face_degrees(n4):
    degrees = sorted(len(w) for w in trace_faces(n4))
    assert degrees == [3, 3, 4]
    assert len(n4.faces[n4.outer_face]) == 3
    assert set(n4.faces[n4.outer_face]) == {0, 1, 2}
    quad = next(w for w in n4.faces if len(w) == 4)
    assert set(quad) == {0, 1, 2, 3}


def test_path_single_walk():
    g = build_plane_graph(3, [(0, 1), (1, 2)], [[1], [0, 2], [1]])
    assert len(g.faces) == 1
    assert len(g.faces[0]) == 4


def test_every_dart_once(n4):
    darts = [d for f in range(len(n4.faces)) for d in n4.face_darts(f)]
    assert len(darts) == len(set(darts)) == 2 * n4.m


def test_angle_per_occurrence():
    # star: centre 0 occurs three times on the single face
    g = build_plane_graph(4, [(0, 1), (0, 2), (0, 3)], [[1, 2, 3], [0], [0], [0]])
    assert len(g.faces) == 1
    assert len(g.vertex_angles(0)) == 3
    assert len({(a.face, a.pos) for a in g.angles()}) == 6


def test_rotation_equality_is_cyclic(n4):
    shifted = build_plane_graph(4, N4_EDGES, [[3, 2, 1], [0, 2, 3], [1, 0], [1, 0]], [0, 1, 2])
    assert shifted == n4
    assert hash(shifted) == hash(n4)


def test_from_coordinates_matches_rotations(n4):
    g = from_coordinates(N4_COORDS, N4_EDGES)
    assert g == n4


def test_boundary_cycle_whole_k4(k4):
    (cyc,) = induced_boundary_cycles(k4, range(4))
    assert cyc.b == cyc.b0 == 3
    assert set(cyc.walk) == {0, 1, 2}


def test_boundary_cycle_tree():
    g = generate_graph(12, 5)
    # a spanning path of three edges: every edge is walked twice
    for u, v in g.edges:
        w = next((x for x in g.neighbors(v) if x != u and not g.has_edge(x, u)), None)
        if w is not None:
            (cyc,) = induced_boundary_cycles(g, {u, v, w})
            assert cyc.b == 4
            assert cyc.b0 == 3
            return
    pytest.skip("no induced path found")


def test_two_disjoint_triangles():
    # two nested triangles joined by three edges; take the two triangles only
    edges = [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    pts = [(0, 0), (10, 0), (5, 9), (4, 2), (6, 2), (5, 4)]
    g = from_coordinates(pts, edges)
    cycles = induced_boundary_cycles(g, {0, 1, 2, 3, 4, 5} - set())
    assert len(cycles) == 1
    inner_outer = induced_boundary_cycles(g, {3, 4, 5}) + induced_boundary_cycles(g, {0, 1, 2})
    assert [c.b for c in inner_outer] == [3, 3]
    with pytest.raises(EmptySubset):
        induced_boundary_cycles(g, [])


def test_fill_holes_wheel():
    pts = [(0, 0), (4, 0), (4, 4), (0, 4), (2, 2)]
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)]
    g = from_coordinates(pts, edges)
    rim = {0, 1, 2, 3}
    assert not is_simply_connected(g, rim)
    assert fill_holes(g, rim) == frozenset(range(5))


def test_fill_holes_idempotent_on_simply_connected(k4):
    assert fill_holes(k4, {0, 1, 3}) == frozenset({0, 1, 3})


@settings(max_examples=40, deadline=None)
@given(st.integers(5, 30), st.integers(0, 10**6), st.integers(0, 10**6))
def test_fill_holes_random(n, seed, pick):
    g = generate_graph(n, seed)
    rng = random.Random(pick)
    s = {rng.randrange(n)}
    for _ in range(rng.randrange(1, n)):
        v = rng.choice(sorted(s))
        s.add(rng.choice(g.neighbors(v)))
    filled = fill_holes(g, s)
    assert filled >= s
    assert is_simply_connected(g, filled)
    assert fill_holes(g, filled) == filled
    sub, _ = induced_subgraph(g, filled)
    assert _euler_ok(sub)
    assert len(components(g, filled)) == 1


@settings(max_examples=30, deadline=None)
@given(st.integers(3, 60), st.integers(0, 10**6))
def test_euler_and_face_sums(n, seed):
    g = generate_graph(n, seed)
    assert _euler_ok(g)
    for s in (set(range(0, n, 2)), set(range(n))):
        for cyc in induced_boundary_cycles(g, s):
            assert cyc.b >= cyc.b0
