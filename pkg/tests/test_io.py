from __future__ import annotations

from fractions import Fraction

import pytest

from pseudotri.config import RunConfig
from pseudotri.cpt import assign_cpt
from pseudotri.errors import ParseError
from pseudotri.io import GraphDocument, dump, generate_plane_laman, load, parse, serialize
from pseudotri.rigidity import is_laman
from pseudotri.stretch import stretch_cpt

from .conftest import N4_COORDS

N4_DOC = """# the worked n = 4 example
n = 4
edges = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3]]
rotations = [[1, 3, 2], [2, 3, 0], [0, 1], [0, 1]]
outer_face = [0, 1, 2]
coords = [["0", "0"], ["4", "0"], ["2", "3"], ["2", "1"]]
"""


def test_round_trip_text():
    doc = parse(N4_DOC)
    assert serialize(doc) == N4_DOC
    assert parse(serialize(doc)) == doc


def test_layers(n4):
    doc = parse(N4_DOC)
    assert doc.graph() == n4
    emb = doc.embedding()
    assert emb.exact_coords == [(Fraction(x), Fraction(y)) for x, y in N4_COORDS]
    assert doc.labeling() is None


def test_whitespace_and_comments_tolerated():
    messy = "\n\n  n=4  \n# note\nedges=[[0,1],[0,2],[0,3],[1,2],[1,3]]\nrotations = [[1,3,2],[2,3,0],[0,1],[0,1]]\n"
    doc = parse(messy)
    assert doc.n == 4 and doc.outer_face is None
    assert parse(serialize(doc)) == doc


def test_rationals_exact():
    text = N4_DOC.replace('["2", "1"]', '["1/3", 0.5]')
    doc = parse(text)
    assert doc.coords[3] == (Fraction(1, 3), Fraction(1, 2))
    assert '["1/3", "1/2"]' in serialize(doc)


@pytest.mark.parametrize(
    "text, field",
    [
        (N4_DOC.replace("rotations = [[1, 3, 2], [2, 3, 0], [0, 1], [0, 1]]\n", ""), "rotations"),
        (N4_DOC.replace("n = 4", "n = four"), "n"),
        (N4_DOC.replace("outer_face = [0, 1, 2]", "outer_face = [0, 1, 3, 2, 1]"), "outer_face"),
        (N4_DOC.replace('["2", "1"]]', '["2", "x"]]'), "coords"),
        (N4_DOC.replace("[[1, 3, 2]", "[[1, 2]"), "rotations"),
        (N4_DOC + "colour = 3\n", "colour"),
        (N4_DOC + "coords = []\n", "coords"),
    ],
)
def test_parse_errors(text, field):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.field == field


def test_parse_error_has_line():
    with pytest.raises(ParseError) as info:
        parse("n = 4\nedges = [[0, 1]\n")
    assert info.value.line == 2


def test_cpt_layer_round_trip(n4):
    lab = assign_cpt(n4)
    doc = GraphDocument.from_graph(n4, labeling=lab)
    back = parse(serialize(doc))
    assert back.labeling().big == lab.big


def test_invalid_cpt_rejected(n4):
    lab = assign_cpt(n4)
    labels = [(v, f, not big) if i == 0 else (v, f, big) for i, (v, f, big) in enumerate(lab.labels())]
    doc = GraphDocument.from_graph(n4).with_layers(cpt=tuple(labels))
    with pytest.raises(ParseError) as info:
        parse(serialize(doc))
    assert info.value.field == "cpt"


def test_full_document_round_trip(tmp_path):
    doc = generate_plane_laman(12, 3)
    g = doc.graph()
    lab = assign_cpt(g)
    emb = stretch_cpt(g, lab)
    full = GraphDocument.from_graph(g, emb, lab, comments=doc.comments)
    path = tmp_path / "doc.txt"
    dump(full, path)
    again = load(path)
    assert again == full
    assert again.embedding() == emb
    assert serialize(again) == path.read_text()


def test_generate_documents():
    tri = generate_plane_laman(3, 5)
    assert tri.edges == ((0, 1), (0, 2), (1, 2))
    k4 = generate_plane_laman(4, 5, "circuit")
    assert len(k4.edges) == 6
    big = generate_plane_laman(50, 7)
    assert is_laman(big.graph())
    assert len(big.outer_face) == 3


def test_run_config_validation(monkeypatch):
    with pytest.raises(ValueError):
        RunConfig(tolerance=0)
    with pytest.raises(ValueError):
        RunConfig(weights="heavy")
    with pytest.raises(ValueError):
        RunConfig(method="magic")
    monkeypatch.setenv("PSEUDOTRI_SEED", "42")
    assert RunConfig(seed=1).effective_seed == 42
    assert RunConfig(seed=1).stretch_config().seed == 42
