from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotri.errors import NotLaman, NotLamanPlusOne, OuterFaceTooSmall, PrescriptionInvalid, StepInconsistent
from pseudotri.generate import generate_graph
from pseudotri.henneberg import (
    HennebergStep,
    apply_step,
    augment_outer_triangle,
    intermediate_graphs,
    replay,
    reverse_sequence,
    reverse_sequence_plus_one,
    rigid_component_check,
    iter_rotations,
)
from pseudotri.plane_graph import build_plane_graph
from pseudotri.rigidity import Rigidity, classify, is_laman, is_laman_plus_one

from .conftest import K4_EDGES, K4_ROTATIONS


def _quad_graph():
    # the n = 4 example with the quadrilateral as outer face
    g = build_plane_graph(4, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 3)], [[1, 3, 2], [2, 3, 0], [0, 1], [0, 1]])
    quad = next(f for f, w in enumerate(g.faces) if len(w) == 4)
    return g.with_outer_face(quad)


def test_n4_sequence(n4):
    seq = reverse_sequence(n4)
    assert seq.base == (0, 1)
    assert [(s.kind, s.vertex) for s in seq.steps] == [("I", 2), ("I", 3)]
    assert replay(seq) == n4
    assert replay(seq).outer_face == n4.outer_face


def test_k4_not_laman(k4):
    with pytest.raises(NotLaman):
        reverse_sequence(k4)


def test_bad_prescription(n4):
    with pytest.raises(PrescriptionInvalid):
        reverse_sequence(n4, (0, 0))
    with pytest.raises(PrescriptionInvalid):
        reverse_sequence(n4, (0, 1, 2))  # vertices 0 and 1 have degree 3, 2 has degree 2


def test_augment_identity_on_triangle(n4):
    g, mapping = augment_outer_triangle(n4)
    assert g is n4
    assert mapping == {v: v for v in range(4)}


def test_augment_quadrilateral():
    g, mapping = augment_outer_triangle(_quad_graph())
    assert g.n == 7 and g.m == 11
    assert is_laman(g)
    assert len(g.faces[g.outer_face]) == 3
    assert set(g.faces[g.outer_face]) == {4, 5, 6}
    assert all(mapping[v] == v for v in range(4))


def test_augment_plus_one():
    k4 = build_plane_graph(4, K4_EDGES, K4_ROTATIONS, [0, 1, 2])
    plus = build_plane_graph(
        5, K4_EDGES + [(4, 0), (4, 1)],
        [[4, 1, 3, 2], [2, 3, 0, 4], [0, 3, 1], [0, 1, 2], [1, 0]],
    )
    outer = max(range(len(plus.faces)), key=lambda f: (len(plus.faces[f]), -f))
    plus = plus.with_outer_face(outer)
    assert classify(plus).kind is Rigidity.LAMAN_PLUS_ONE
    g, _ = augment_outer_triangle(plus)
    assert classify(g).kind is Rigidity.LAMAN_PLUS_ONE
    assert g.n == 8
    assert augment_outer_triangle(k4)[0] is k4


def test_augment_too_small():
    edge = build_plane_graph(2, [(0, 1)], [[1], [0]])
    with pytest.raises(OuterFaceTooSmall):
        augment_outer_triangle(edge)


def test_augmented_prescribed_triangle_is_interior_only():
    g, _ = augment_outer_triangle(_quad_graph())
    seq = reverse_sequence(g, (4, 5, 6))
    assert seq.base_is_triangle
    assert not any(s.on_outer for s in seq.steps)
    assert replay(seq) == g


def test_plus_one_k4(k4):
    seq = reverse_sequence_plus_one(k4)
    assert seq.steps == ()
    assert set(seq.base) == {0, 1, 2, 3}
    assert replay(seq) == k4


def test_plus_one_single_step():
    plus = build_plane_graph(
        5, K4_EDGES + [(4, 0), (4, 1)],
        [[4, 1, 3, 2], [2, 3, 0, 4], [0, 3, 1], [0, 1, 2], [1, 0]],
    )
    seq = reverse_sequence_plus_one(plus)
    assert [(s.kind, s.vertex) for s in seq.steps] == [("I", 4)]
    assert replay(seq) == plus


def test_plus_one_rejects_laman(n4):
    with pytest.raises(NotLamanPlusOne):
        reverse_sequence_plus_one(n4)


def test_only_first_kind_steps_leave_degree_two():
    g = generate_graph(12, 3)
    seq = reverse_sequence(g)
    if all(s.kind == "I" for s in seq.steps):
        assert min(g.degree(v) for v in g.vertices) == 2
    # the last inserted vertex of a type I step has degree 2 in the final graph
    last = seq.steps[-1]
    if last.kind == "I":
        assert g.degree(last.vertex) == 2


def test_step_inconsistent(n4):
    rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
    bad = HennebergStep("II", 3, (0, 1, 2), (0, 1, 2), (1, 2, 0), (0, 3))
    with pytest.raises(StepInconsistent):
        apply_step(rot, bad)
    with pytest.raises(StepInconsistent):
        apply_step(rot, HennebergStep("I", 0, (1, 2), (1, 2), (2, 0)))
    with pytest.raises(StepInconsistent):
        apply_step(rot, HennebergStep("I", 3, (1, 1), (1, 1), (2, 2)))


def test_replay_detects_absent_split_edge(n4):
    seq = reverse_sequence(n4)
    step = seq.steps[-1]
    broken = HennebergStep("II", step.vertex, (0, 1, 2), (0, 1, 2), (2, 0, 1), (1, 2))
    seq2 = type(seq)(seq.base, seq.base_rotations, seq.steps[:-1] + (broken,), seq.n, seq.outer_dart)
    with pytest.raises(StepInconsistent):
        replay(seq2)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 40), st.integers(0, 10**6))
def test_round_trip_laman(n, seed):
    g = generate_graph(n, seed)
    seq = reverse_sequence(g)
    assert replay(seq) == g
    for h in intermediate_graphs(seq):
        assert is_laman(h)
        assert h.order - h.m + len(h.faces) == 2
    rot = {v: list(r) for v, r in seq.base_rotations}
    for step in seq.steps:
        assert rigid_component_check(rot, step)
        apply_step(rot, step)


@settings(max_examples=30, deadline=None)
@given(st.integers(4, 30), st.integers(0, 10**6))
def test_round_trip_plus_one(n, seed):
    g = generate_graph(n, seed, "circuit")
    seq = reverse_sequence_plus_one(g)
    assert len(seq.base) == 4
    final = replay(seq)
    # the outer face may move (reported, not guaranteed)
    assert final.canonical_rotations() == g.canonical_rotations()
    assert final == g.with_outer_face(final.face_darts(final.outer_face)[0])
    for rot in iter_rotations(seq):
        n_v = len(rot)
        m = sum(len(r) for r in rot.values()) // 2
        assert m == 2 * n_v - 2


@settings(max_examples=20, deadline=None)
@given(st.integers(4, 30), st.integers(0, 10**6))
def test_prescribed_triangle_after_augmentation(n, seed):
    g = generate_graph(n, seed)
    outer = next(f for f in range(len(g.faces)) if f != g.outer_face and len(g.faces[f]) > 3) if any(
        len(w) > 3 for w in g.faces) else g.outer_face
    g = g.with_outer_face(outer)
    aug, _ = augment_outer_triangle(g, force=True)
    seq = reverse_sequence(aug, (g.n, g.n + 1, g.n + 2))
    assert not any(s.on_outer for s in seq.steps)
    assert replay(seq) == aug
    assert is_laman_plus_one(aug) is False
