from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pseudotri.errors import NotIndependent
from pseudotri.generate import generate_graph
from pseudotri.rigidity import (
    Rigidity,
    brute_force_is_laman,
    brute_force_rigid_components,
    classify,
    is_laman,
    is_laman_plus_one,
    rigid_components,
)

K3 = (3, [(0, 1), (1, 2), (0, 2)])
K4 = (4, list(itertools.combinations(range(4), 2)))
K33 = (6, [(a, b) for a in range(3) for b in range(3, 6)])


@pytest.mark.parametrize("graph, expected", [(K3, True), (K33, True), (K4, False)])
def test_is_laman_examples(graph, expected):
    assert is_laman(graph) is expected
    assert brute_force_is_laman(graph) is expected


def test_classify_examples():
    assert classify(K4).kind is Rigidity.CIRCUIT
    assert classify(K3).kind is Rigidity.LAMAN
    plus = (5, K4[1] + [(4, 0), (4, 1)])
    cls = classify(plus)
    assert cls.kind is Rigidity.LAMAN_PLUS_ONE
    assert cls.circuit_vertices == frozenset(range(4))
    assert cls.circuit_edges == frozenset(K4[1])


def test_classify_flexible_and_overbraced():
    assert classify((4, [(0, 1), (1, 2), (2, 3)])).kind is Rigidity.FLEXIBLE
    k5 = (5, list(itertools.combinations(range(5), 2)))
    assert classify(k5).kind is Rigidity.OVERBRACED


def test_rigid_components_examples():
    bowtie = (5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    comps = [c.vertices for c in rigid_components(bowtie)]
    assert comps == [frozenset({0, 1, 2}), frozenset({2, 3, 4})]
    assert [c.vertices for c in rigid_components((2, [(0, 1)]))] == [frozenset({0, 1})]
    pendant = (4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    comps = [c.vertices for c in rigid_components(pendant)]
    assert comps == [c.vertices for c in brute_force_rigid_components(pendant)]
    assert comps == [frozenset({0, 1, 2}), frozenset({2, 3})]


def test_rigid_components_dependent():
    with pytest.raises(NotIndependent):
        rigid_components(K4)


def _random_graph(rng, n, m):
    pairs = list(itertools.combinations(range(n), 2))
    return (n, rng.sample(pairs, min(m, len(pairs))))


def test_random_independent_components_match_oracle():
    rng = random.Random(11)
    checked = 0
    while checked < 150:
        n = rng.randint(3, 8)
        g = _random_graph(rng, n, rng.randint(1, 2 * n - 3))
        try:
            comps = rigid_components(g)
        except NotIndependent:
            continue
        oracle = brute_force_rigid_components(g)
        # the oracle also lists isolated tight pairs only if they are edges
        assert sorted(map(sorted, (c.vertices for c in comps))) == sorted(map(sorted, (c.vertices for c in oracle)))
        for a, b in itertools.combinations(comps, 2):
            assert len(a.vertices & b.vertices) <= 1
        checked += 1


def test_exhaustive_small():
    for n in range(2, 6):
        pairs = list(itertools.combinations(range(n), 2))
        for edges in itertools.combinations(pairs, 2 * n - 3):
            g = (n, list(edges))
            assert is_laman(g) == brute_force_is_laman(g)


@settings(max_examples=60, deadline=None)
@given(st.integers(4, 40), st.integers(0, 10**6))
def test_laman_properties(n, seed):
    g = generate_graph(n, seed)
    assert is_laman(g)
    degrees = [g.degree(v) for v in g.vertices]
    assert sum(1 for d in degrees if d <= 3) >= 3
    # any k <= n - 2 vertices meet at least 2k edges
    rng = random.Random(seed)
    for _ in range(10):
        k = rng.randint(1, n - 2)
        s = set(rng.sample(range(n), k))
        assert sum(1 for u, v in g.edges if u in s or v in s) >= 2 * k


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 25), st.integers(0, 10**6))
def test_circuit_properties(n, seed):
    g = generate_graph(n, seed, "circuit")
    cls = classify(g)
    assert cls.kind is Rigidity.CIRCUIT
    assert is_laman_plus_one(g)
    assert min(g.degree(v) for v in g.vertices) >= 3
    edges = list(g.edges)
    for e in edges:
        assert is_laman((n, [f for f in edges if f != e]))
