from __future__ import annotations

import json

import pytest

from pseudotri.cli import main
from pseudotri.io import load

from .test_io import N4_DOC

K4_DOC = """n = 4
edges = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]
rotations = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]]
outer_face = [0, 1, 2]
"""


@pytest.fixture
def n4_file(tmp_path):
    p = tmp_path / "n4.txt"
    p.write_text(N4_DOC)
    return p


@pytest.fixture
def k4_file(tmp_path):
    p = tmp_path / "k4.txt"
    p.write_text(K4_DOC)
    return p


def test_check(n4_file, capsys):
    assert main(["check", str(n4_file)]) == 0
    assert json.loads(capsys.readouterr().out)["class"] == "Laman"


def test_check_circuit(k4_file, capsys):
    assert main(["check", str(k4_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["class"] == "Circuit" and out["circuit_vertices"] == [0, 1, 2, 3]


def test_check_flexible(tmp_path, capsys):
    p = tmp_path / "path.txt"
    p.write_text("n = 3\nedges = [[0, 1], [1, 2]]\nrotations = [[1], [2, 0], [1]]\n")
    assert main(["check", str(p)]) == 1


def test_henneberg(n4_file, capsys):
    assert main(["henneberg", str(n4_file)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["base"] == [0, 1]
    assert [s["kind"] for s in out["steps"]] == ["I", "I"]


def test_henneberg_not_laman(k4_file, tmp_path):
    p = tmp_path / "path.txt"
    p.write_text("n = 3\nedges = [[0, 1], [1, 2]]\nrotations = [[1], [2, 0], [1]]\n")
    assert main(["henneberg", str(p)]) == 1


def test_cpt_and_stretch(n4_file, tmp_path):
    out = tmp_path / "cpt.txt"
    assert main(["cpt", str(n4_file), "-o", str(out)]) == 0
    doc = load(out)
    assert doc.cpt is not None
    st = tmp_path / "st.txt"
    assert main(["stretch", str(out), "-o", str(st)]) == 0
    assert main(["verify", str(st)]) == 0


def test_cpt_prescribed(k4_file, tmp_path, capsys):
    out = tmp_path / "k4c.txt"
    assert main(["cpt", str(k4_file), "--nonpointed", "3", "-o", str(out)]) == 0
    assert load(out).prescribed_nonpointed == 3
    assert main(["cpt", str(k4_file)]) == 1  # no cpt with this edge count
    assert main(["cpt", str(k4_file), "--nonpointed", "0"]) == 2


def test_embed_both_methods(tmp_path):
    gen = tmp_path / "g.txt"
    assert main(["gen", "--n", "20", "--seed", "3", "-o", str(gen)]) == 0
    for method in ("tutte", "henneberg"):
        out = tmp_path / f"{method}.txt"
        assert main(["embed", str(gen), "--method", method, "-o", str(out)]) == 0
        assert main(["verify", str(out)]) == 0


def test_stretch_random_weights(tmp_path):
    gen = tmp_path / "g.txt"
    main(["gen", "--n", "15", "--seed", "2", "-o", str(gen)])
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    main(["stretch", str(gen), "--weights", "random", "--seed", "4", "-o", str(a)])
    main(["stretch", str(gen), "--weights", "random", "--seed", "4", "-o", str(b)])
    assert a.read_text() == b.read_text()


def test_gen_circuit(capsys):
    assert main(["gen", "--n", "6", "--kind", "circuit"]) == 0
    assert "n = 6" in capsys.readouterr().out


def test_gen_bad_size():
    assert main(["gen", "--n", "2"]) == 2


def test_verify_without_coords(n4_file, tmp_path):
    p = tmp_path / "nc.txt"
    p.write_text(N4_DOC.replace('coords = [["0", "0"], ["4", "0"], ["2", "3"], ["2", "1"]]\n', ""))
    assert main(["verify", str(p)]) == 2


def test_verify_bad_drawing(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text(N4_DOC.replace('["2", "1"]]', '["2", "-1"]]'))
    assert main(["verify", str(p)]) == 1
    assert json.loads(capsys.readouterr().out)["pseudo_triangulation"] is False


def test_svg(n4_file, capsys):
    assert main(["svg", str(n4_file)]) == 0
    out = capsys.readouterr().out
    assert out.startswith("<?xml") and out.count("<line") == 5


def test_usage_errors(tmp_path):
    assert main([]) == 2
    assert main(["check", str(tmp_path / "missing.txt")]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("n = 3\n")
    assert main(["check", str(bad)]) == 2
    assert main(["stretch", str(bad), "--tolerance", "0"]) == 2
