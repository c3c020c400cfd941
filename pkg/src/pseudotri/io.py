"""Line-oriented graph documents.

Grammar (UTF-8, one field per line)::

    document := { line }
    line     := blank | comment | field
    comment  := "#" any-text
    field    := key "=" json-value
    key      := "n" | "edges" | "rotations" | "outer_face" | "coords"
              | "cpt" | "prescribed_nonpointed"

``n`` is an integer, ``edges`` a list of ``[u, v]`` pairs, ``rotations`` the
ccw neighbour list of every vertex and ``outer_face`` the outer boundary
read ccw as drawn.  ``coords`` holds one ``[x, y]`` per vertex with every
number an exact rational string ``"p/q"`` (plain integers and JSON numbers
are accepted on input).  ``cpt`` lists ``[vertex, face, big]`` triples where
``face`` indexes the faces traced from the rotations and angles of a vertex
repeated on a face follow walk order.  ``n``, ``edges`` and ``rotations`` are
required; fields are written back in the order above.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .cpt import CptLabeling, validate_cpt
from .errors import ParseError, PseudoTriError
from .generate import generate_sequence
from .henneberg import replay
from .plane_graph import PlaneGraph, build_plane_graph
from .verify_geom import Embedding

FIELDS = ("n", "edges", "rotations", "outer_face", "coords", "cpt", "prescribed_nonpointed")
REQUIRED = ("n", "edges", "rotations")


@dataclass(frozen=True)
class GraphDocument:
    n: int
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    outer_face: tuple[int, ...] | None = None
    coords: tuple[tuple[Fraction, Fraction], ...] | None = None
    cpt: tuple[tuple[int, int, bool], ...] | None = None
    prescribed_nonpointed: int | None = None
    comments: tuple[str, ...] = field(default=(), compare=False)

    # -- layers ------------------------------------------------------------

    def graph(self) -> PlaneGraph:
        return build_plane_graph(self.n, self.edges, self.rotations, self.outer_face)

    def embedding(self) -> Embedding | None:
        if self.coords is None:
            return None
        return Embedding(self.coords)

    def labeling(self, g: PlaneGraph | None = None) -> CptLabeling | None:
        if self.cpt is None:
            return None
        return CptLabeling.from_labels(g or self.graph(), self.cpt)

    @classmethod
    def from_graph(
        cls,
        g: PlaneGraph,
        embedding: Embedding | None = None,
        labeling: CptLabeling | None = None,
        prescribed_nonpointed: int | None = None,
        comments: Sequence[str] = (),
    ) -> "GraphDocument":
        coords = None
        if embedding is not None:
            coords = tuple(embedding.exact_coords)
        cpt = tuple(labeling.labels()) if labeling is not None else None
        return cls(
            n=g.n,
            edges=g.edges,
            rotations=g.rotations,
            outer_face=tuple(g.outer_cycle_ccw()),
            coords=coords,
            cpt=cpt,
            prescribed_nonpointed=prescribed_nonpointed,
            comments=tuple(comments),
        )

    def with_layers(self, **kw) -> "GraphDocument":
        return replace(self, **kw)


# -- parsing -------------------------------------------------------------------


def _rational(x, line: int, key: str) -> Fraction:
    try:
        if isinstance(x, bool):
            raise ValueError
        if isinstance(x, float):
            return Fraction(*x.as_integer_ratio())
        if isinstance(x, (int, str)):
            return Fraction(x)
    except (ValueError, ZeroDivisionError):
        pass
    raise ParseError(f"not an exact rational: {x!r}", line, key)


def _int_list(value, line: int, key: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ParseError("expected a list of integers", line, key)
    return tuple(value)


def parse(text: str) -> GraphDocument:
    """Parse and validate a document; every layer present is checked."""
    raw: dict[str, tuple[object, int]] = {}
    comments: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        s = line.strip()
        if not s:
            continue
        if s.startswith("#"):
            comments.append(s[1:].strip())
            continue
        if "=" not in s:
            raise ParseError("expected 'key = value'", lineno)
        key, _, value = s.partition("=")
        key = key.strip()
        if key not in FIELDS:
            raise ParseError("unknown field", lineno, key)
        if key in raw:
            raise ParseError("duplicate field", lineno, key)
        try:
            raw[key] = (json.loads(value), lineno)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON ({exc.msg})", lineno, key) from None
    for key in REQUIRED:
        if key not in raw:
            raise ParseError("missing required field", None, key)

    n, ln = raw["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("n must be a positive integer", ln, "n")
    edges_raw, ln = raw["edges"]
    if not isinstance(edges_raw, list):
        raise ParseError("expected a list of pairs", ln, "edges")
    edges = []
    for e in edges_raw:
        pair = _int_list(e, ln, "edges")
        if len(pair) != 2:
            raise ParseError(f"edge {e} is not a pair", ln, "edges")
        edges.append((pair[0], pair[1]))
    rot_raw, ln = raw["rotations"]
    if not isinstance(rot_raw, list):
        raise ParseError("expected a list of neighbour lists", ln, "rotations")
    rotations = tuple(_int_list(r, ln, "rotations") for r in rot_raw)
    outer = None
    if "outer_face" in raw:
        value, ln = raw["outer_face"]
        outer = _int_list(value, ln, "outer_face")
    doc = GraphDocument(n, tuple(edges), rotations, outer, comments=tuple(comments))
    try:
        g = doc.graph()
    except PseudoTriError as exc:
        key = "outer_face" if type(exc).__name__ == "OuterFaceNotFound" else "rotations"
        raise ParseError(str(exc), raw[key][1] if key in raw else None, key) from None

    coords = None
    if "coords" in raw:
        value, ln = raw["coords"]
        if not isinstance(value, list) or len(value) != n:
            raise ParseError(f"expected {n} points", ln, "coords")
        pts = []
        for p in value:
            if not isinstance(p, list) or len(p) != 2:
                raise ParseError(f"point {p!r} is not a pair", ln, "coords")
            pts.append((_rational(p[0], ln, "coords"), _rational(p[1], ln, "coords")))
        coords = tuple(pts)
    cpt = None
    if "cpt" in raw:
        value, ln = raw["cpt"]
        if not isinstance(value, list):
            raise ParseError("expected a list of [vertex, face, big]", ln, "cpt")
        triples = []
        for t in value:
            if (
                not isinstance(t, list) or len(t) != 3
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in t[:2])
                or not isinstance(t[2], bool)
            ):
                raise ParseError(f"bad label {t!r}", ln, "cpt")
            triples.append((t[0], t[1], t[2]))
        cpt = tuple(triples)
        try:
            lab = CptLabeling.from_labels(g, cpt)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), ln, "cpt") from None
        if len(cpt) != len(g.angles()) or lab.labels() != list(cpt):
            raise ParseError("labels must list every angle in face/walk order", ln, "cpt")
        report = validate_cpt(g, lab)
        if not report.ok:
            raise ParseError("labeling is not a valid cpt: " + "; ".join(report.failures), ln, "cpt")
    prescribed = None
    if "prescribed_nonpointed" in raw:
        value, ln = raw["prescribed_nonpointed"]
        if value is not None and (not isinstance(value, int) or isinstance(value, bool) or not 0 <= value < n):
            raise ParseError("expected a vertex id", ln, "prescribed_nonpointed")
        prescribed = value
    return replace(doc, coords=coords, cpt=cpt, prescribed_nonpointed=prescribed)


def _dump(value) -> str:
    return json.dumps(value, separators=(", ", ": "))


def serialize(doc: GraphDocument) -> str:
    lines = [f"# {c}" if c else "#" for c in doc.comments]
    lines.append(f"n = {doc.n}")
    lines.append(f"edges = {_dump([list(e) for e in doc.edges])}")
    lines.append(f"rotations = {_dump([list(r) for r in doc.rotations])}")
    if doc.outer_face is not None:
        lines.append(f"outer_face = {_dump(list(doc.outer_face))}")
    if doc.coords is not None:
        lines.append(f"coords = {_dump([[str(Fraction(x)), str(Fraction(y))] for x, y in doc.coords])}")
    if doc.cpt is not None:
        lines.append(f"cpt = {_dump([[v, f, bool(b)] for v, f, b in doc.cpt])}")
    if doc.prescribed_nonpointed is not None:
        lines.append(f"prescribed_nonpointed = {doc.prescribed_nonpointed}")
    return "\n".join(lines) + "\n"


def load(path) -> GraphDocument:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: GraphDocument, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(doc))


def generate_plane_laman(n: int, seed: int = 0, kind: str = "laman") -> GraphDocument:
    """Deterministic random plane Laman graph (or circuit) with a triangular outer face."""
    seq = generate_sequence(n, seed, kind)
    g = replay(seq, validate=False).with_outer_face(seq.outer_dart)
    return GraphDocument.from_graph(g, comments=(f"generated kind={kind} n={n} seed={seq.meta['seed']}",))
