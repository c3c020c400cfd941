from __future__ import annotations

import pytest

from pseudotri.errors import BadSize
from pseudotri.generate import generate_graph, generate_sequence
from pseudotri.plane_graph import build_plane_graph
from pseudotri.rigidity import Rigidity, classify, is_laman


def _check(g, kind):
    rebuilt = build_plane_graph(g.n, g.edges, g.rotations, g.outer_cycle_ccw())
    assert rebuilt == g
    assert len(g.faces[g.outer_face]) == 3
    expected = Rigidity.LAMAN if kind == "laman" else Rigidity.CIRCUIT
    assert classify(g).kind is expected


def test_triangle():
    g = generate_graph(3, 123)
    assert g.m == 3 and len(g.faces) == 2


def test_k4_base():
    g = generate_graph(4, 9, "circuit")
    assert g.m == 6
    assert all(len(w) == 3 for w in g.faces)


def test_fifty_seed_seven():
    g = generate_graph(50, 7)
    assert is_laman(g)
    _check(g, "laman")


def test_bad_sizes():
    with pytest.raises(BadSize):
        generate_sequence(2, 0)
    with pytest.raises(BadSize):
        generate_sequence(3, 0, "circuit")
    with pytest.raises(ValueError):
        generate_sequence(5, 0, "tree")


def test_deterministic(monkeypatch):
    monkeypatch.delenv("PSEUDOTRI_SEED", raising=False)
    assert generate_graph(30, 4) == generate_graph(30, 4)
    assert generate_graph(30, 4) != generate_graph(30, 5)


def test_env_seed_override(monkeypatch):
    monkeypatch.setenv("PSEUDOTRI_SEED", "17")
    a = generate_graph(20, 1)
    monkeypatch.delenv("PSEUDOTRI_SEED")
    assert a == generate_graph(20, 17)


def test_both_step_kinds_used():
    kinds = {s.kind for seed in range(5) for s in generate_sequence(30, seed).steps}
    assert kinds == {"I", "II"}


@pytest.mark.parametrize("kind", ["laman", "circuit"])
def test_generator_validity_sample(kind):
    for seed in range(30):
        for n in range(4, 51, 7):
            _check(generate_graph(n, seed, kind), kind)


@pytest.mark.slow
def test_generator_validity_full():
    for seed in range(1000):
        for n in range(4, 51):
            _check(generate_graph(n, seed), "laman")
