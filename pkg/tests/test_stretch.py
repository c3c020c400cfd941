from __future__ import annotations

from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest

from pseudotri.cpt import assign_cpt
from pseudotri.errors import NotThreeConnected, RepeatedBoundaryVertex
from pseudotri.generate import generate_graph
from pseudotri.plane_graph import build_plane_graph
from pseudotri.stretch import (
    StretchConfig,
    build_aux_digraph,
    check_boundary_3connectivity,
    check_tutte,
    regular_polygon,
    stretch_cpt,
    tutte_embed,
)
from pseudotri.verify_geom import derive_labeling, geometric_report

BOUNDARY = {0: (0, 0), 1: (4, 0), 2: (2, 3)}


def test_n4_dissection(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    assert aux.diagonals == ((3, 2),)
    assert set(aux.out[3]) == {0, 1, 2}
    assert aux.out[3][2] == 2
    assert all(len(w) == 3 for w in aux.graph.faces)


def test_triangle_has_no_diagonals(triangle):
    aux = build_aux_digraph(triangle, assign_cpt(triangle))
    assert aux.diagonals == () and aux.interior == []


def test_diagonal_count_and_triangulation():
    seen_big_face = False
    for seed in range(8):
        g = generate_graph(25, seed)
        aux = build_aux_digraph(g, assign_cpt(g))
        expected = sum(len(g.faces[f]) - 3 for f in g.interior_faces())
        seen_big_face |= any(len(g.faces[f]) >= 6 for f in g.interior_faces())
        assert len(aux.diagonals) == expected
        assert all(len(aux.graph.faces[f]) == 3 for f in aux.graph.interior_faces())
        assert aux.graph.m == 3 * g.order - 6
    assert seen_big_face


def test_degree_six_face():
    # hexagon-like face: an outer triangle 0,1,2 with three inner pointed vertices
    from pseudotri.incremental import embed_plane_laman

    for seed in range(40):
        g = generate_graph(9, seed)
        six = [f for f in g.interior_faces() if len(g.faces[f]) == 6]
        if six:
            break
    else:
        pytest.skip("no degree-6 face in the sample")
    lab = assign_cpt(g)
    aux = build_aux_digraph(g, lab)
    w = g.faces[six[0]]
    inside = [d for d in aux.diagonals if d[0] in w and d[1] in w]
    assert len(inside) >= 3
    emb = stretch_cpt(g, lab)
    assert geometric_report(emb, g).pointed_pseudo_triangulation


def test_connectivity_ok(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    assert check_boundary_3connectivity(aux)


def test_connectivity_counterexample(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    bad = replace(aux, out={3: (0, 1)}, weights={(3, 0): 1.0, (3, 1): 1.0})
    res = check_boundary_3connectivity(bad)
    assert not res
    assert res.vertex == 3
    assert res.cut == (0, 1)
    with pytest.raises(NotThreeConnected):
        tutte_embed(bad, BOUNDARY)


def test_connectivity_via_interior_pair():
    # interior vertex 4 only points at interior vertices 3 and 5, which reach the boundary
    g = generate_graph(12, 2)
    aux = build_aux_digraph(g, assign_cpt(g))
    v = aux.interior[0]
    others = [u for u in aux.interior if u != v][:2]
    if len(others) < 2:
        pytest.skip("too few interior vertices")
    out = dict(aux.out)
    out[v] = tuple(others)
    bad = replace(aux, out=out, weights={**aux.weights, **{(v, u): 1.0 for u in others}})
    res = check_boundary_3connectivity(bad)
    assert not res and res.vertex == v
    assert len(res.cut) <= 2


def test_n4_exact_solution(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    emb = tutte_embed(aux, BOUNDARY, exact_arithmetic=True)
    assert emb.exact_coords[3] == (Fraction(2), Fraction(1))
    fl = tutte_embed(aux, BOUNDARY)
    assert np.allclose(fl.float_array[3], (2, 1), atol=1e-12)


def test_n4_weighted(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    w = {(3, 0): 2.0, (3, 1): 1.0, (3, 2): 1.0}
    emb = tutte_embed(replace(aux, weights=w), BOUNDARY, exact_arithmetic=True)
    # (2 * (0,0) + (4,0) + (2,3)) / 4
    assert emb.exact_coords[3] == (Fraction(3, 2), Fraction(3, 4))


def test_n4_stretch_labels(n4):
    lab = assign_cpt(n4)
    emb = stretch_cpt(n4, lab, boundary_positions=BOUNDARY)
    assert derive_labeling(emb, n4).big == lab.big
    quad = next(f for f, w in enumerate(n4.faces) if len(w) == 4)
    assert derive_labeling(emb, n4).big_face(3) == quad


def test_solution_independent_of_order():
    g = generate_graph(30, 5)
    aux = build_aux_digraph(g, assign_cpt(g), "random", 3)
    a = tutte_embed(aux).float_array
    b = tutte_embed(aux, order=list(reversed(aux.interior))).float_array
    assert np.allclose(a, b, atol=1e-12)


def test_exact_agrees_with_float():
    g = generate_graph(12, 1)
    aux = build_aux_digraph(g, assign_cpt(g))
    pos = {v: (i, i * i) for i, v in enumerate(aux.boundary)}
    pos = dict(zip(aux.boundary, [(0, 0), (10, 0), (5, 9)]))
    ex = tutte_embed(aux, pos, exact_arithmetic=True).float_array
    fl = tutte_embed(aux, pos).float_array
    assert np.allclose(ex, fl, atol=1e-9)


def test_tutte_checks():
    for seed in range(5):
        g = generate_graph(40, seed)
        aux = build_aux_digraph(g, assign_cpt(g))
        chk = check_tutte(aux, tutte_embed(aux))
        assert chk.ok()


def test_random_weights_deterministic():
    g = generate_graph(30, 2)
    lab = assign_cpt(g)
    cfg = StretchConfig(weights="random", seed=9)
    assert stretch_cpt(g, lab, cfg) == stretch_cpt(g, lab, cfg)
    assert stretch_cpt(g, lab, cfg) != stretch_cpt(g, lab, StretchConfig(weights="random", seed=10))


def test_circuit_stretch():
    for seed in range(10):
        g = generate_graph(15, seed, "circuit")
        v = next(x for x in g.vertices if x not in g.outer_vertices())
        lab = assign_cpt(g, v)
        rep = geometric_report(stretch_cpt(g, lab), g)
        assert rep.pseudo_triangulation and rep.non_pointed == [v]


def test_bad_boundary(n4):
    aux = build_aux_digraph(n4, assign_cpt(n4))
    with pytest.raises(ValueError):
        tutte_embed(aux, {0: (0, 0), 1: (2, 3), 2: (4, 0)})


def test_repeated_boundary_vertex():
    g = build_plane_graph(3, [(0, 1), (1, 2)], [[1], [2, 0], [1]])
    from pseudotri.cpt import CptLabeling

    with pytest.raises(RepeatedBoundaryVertex):
        build_aux_digraph(g, CptLabeling(g, frozenset()))


def test_regular_polygon():
    pts = regular_polygon(5)
    assert len(pts) == 5 and pts[0] == pytest.approx((0, 1))
