"""Geometric Henneberg construction of pointed pseudo-triangulations.

Each step places the new point inside an interior face ``F`` so that the
new edges run inside ``F``, every anchor stays pointed and the new point
is pointed.  All these conditions change only when the point crosses a
line through two of the relevant points (face vertices and anchors), so
the feasible region is a union of cells of that line arrangement.  Cells
are split exactly and classified by one interior point each.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import AnchorNotOnFace, NoPlacement, SequenceNotInteriorOnly
from .henneberg import HennebergSequence, HennebergStep, apply_step
from .plane_graph import PlaneGraph
from .predicates import cross, exact, exact_point, segments_intersect
from .verify_geom import Embedding, geometric_report

Point = tuple[Fraction, Fraction]
Line = tuple[int, int, int]  # a x + b y + c = 0 with integer coefficients


# -- exact planar helpers ---------------------------------------------------------------


def _sub(p, q):
    return (p[0] - q[0], p[1] - q[1])


def line_through(p: Point, q: Point) -> Line:
    a = q[1] - p[1]
    b = p[0] - q[0]
    c = -(a * p[0] + b * p[1])
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    den = math.lcm(a.denominator, b.denominator, c.denominator)
    ai, bi, ci = int(a * den), int(b * den), int(c * den)
    g = math.gcd(math.gcd(abs(ai), abs(bi)), abs(ci)) or 1
    ai, bi, ci = ai // g, bi // g, ci // g
    # canonical sign so a line and its reverse coincide
    if ai < 0 or (ai == 0 and bi < 0):
        ai, bi, ci = -ai, -bi, -ci
    return (ai, bi, ci)


def side(line: Line, p) -> int:
    v = line[0] * p[0] + line[1] * p[1] + line[2]
    return (v > 0) - (v < 0)


def _split(poly: list[Point], line: Line) -> tuple[list[Point] | None, list[Point] | None]:
    """Cut a convex polygon by a line; returns (negative part, positive part)."""
    vals = [line[0] * x + line[1] * y + line[2] for x, y in poly]
    if all(v >= 0 for v in vals):
        return None, poly
    if all(v <= 0 for v in vals):
        return poly, None
    neg: list[Point] = []
    pos: list[Point] = []
    k = len(poly)
    for i in range(k):
        p, q = poly[i], poly[(i + 1) % k]
        vp, vq = vals[i], vals[(i + 1) % k]
        if vp <= 0:
            neg.append(p)
        if vp >= 0:
            pos.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            t = vp / (vp - vq)
            x = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            neg.append(x)
            pos.append(x)
    return (neg if len(neg) >= 3 else None), (pos if len(pos) >= 3 else None)


def polygon_area2(poly: Sequence[Point]) -> Fraction:
    k = len(poly)
    return sum((poly[i][0] * poly[(i + 1) % k][1] - poly[(i + 1) % k][0] * poly[i][1] for i in range(k)), Fraction(0))


def polygon_centroid(poly: Sequence[Point]) -> Point:
    a2 = polygon_area2(poly)
    if a2 == 0:
        n = len(poly)
        return (sum(p[0] for p in poly) / n, sum(p[1] for p in poly) / n)
    cx = cy = Fraction(0)
    k = len(poly)
    for i in range(k):
        (x0, y0), (x1, y1) = poly[i], poly[(i + 1) % k]
        c = x0 * y1 - x1 * y0
        cx += (x0 + x1) * c
        cy += (y0 + y1) * c
    return (cx / (3 * a2), cy / (3 * a2))


def point_in_polygon(p, poly: Sequence) -> int:
    """+1 strictly inside, 0 on the boundary, -1 outside (winding number, exact)."""
    wn = 0
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        o = cross(_sub(b, a), _sub(p, a))
        if o == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]):
            return 0
        if a[1] <= p[1]:
            if b[1] > p[1] and o > 0:
                wn += 1
        elif b[1] <= p[1] and o < 0:
            wn -= 1
    return 1 if wn != 0 else -1


# -- placement predicates ----------------------------------------------------------------


def _wedge_contains(e1, e2, d) -> bool:
    """Direction d strictly inside the ccw wedge from e1 to e2."""
    c12 = cross(e1, e2)
    if c12 > 0:
        return cross(e1, d) > 0 and cross(d, e2) > 0
    if c12 < 0:
        return not (cross(e2, d) >= 0 and cross(d, e1) >= 0)
    if e1[0] * e2[0] + e1[1] * e2[1] < 0:
        return cross(e1, d) > 0
    return not (cross(e1, d) == 0 and d[0] * e1[0] + d[1] * e1[1] > 0)


def is_reflex_corner(poly: Sequence[Point], i: int) -> bool:
    """The interior angle of the ccw polygon at position ``i`` exceeds pi."""
    k = len(poly)
    a = poly[i]
    return cross(_sub(poly[(i + 1) % k], a), _sub(poly[i - 1], a)) < 0


def anchor_ok(poly: Sequence[Point], i: int, p) -> bool:
    """Segment from vertex ``i`` to ``p`` runs inside the face and keeps the anchor pointed."""
    k = len(poly)
    a = poly[i]
    d = _sub(p, a)
    if d == (0, 0):
        return False
    e1, e2 = _sub(poly[(i + 1) % k], a), _sub(poly[i - 1], a)
    if not _wedge_contains(e1, e2, d):
        return False
    c12 = cross(e1, e2)
    if c12 < 0 or (c12 == 0 and e1[0] * e2[0] + e1[1] * e2[1] < 0):
        # reflex (or straight) anchor: both face edges strictly on one side of the new edge
        s1, s2 = cross(d, e1), cross(d, e2)
        if s1 == 0 or s2 == 0 or (s1 > 0) != (s2 > 0):
            return False
    elif c12 == 0 and e1[0] * e2[0] + e1[1] * e2[1] > 0 and cross(d, e1) == 0:
        # degree-one anchor: the new edge may not continue the old one straight
        return False
    for j in range(k):
        if j == i or (j + 1) % k == i:
            continue
        q, r = poly[j], poly[(j + 1) % k]
        if q == a or r == a:
            # another occurrence of the anchor: only an overlap counts
            x = _sub(r if q == a else q, a)
            if cross(d, x) == 0 and d[0] * x[0] + d[1] * x[1] > 0:
                return False
            continue
        if segments_intersect(a, p, q, r):
            return False
    return True


def new_vertex_ok(anchors: Sequence[Point], p) -> bool:
    """The new point is pointed and no two of its edges are collinear."""
    dirs = [_sub(a, p) for a in anchors]
    for x in range(len(dirs)):
        for y in range(x + 1, len(dirs)):
            if cross(dirs[x], dirs[y]) == 0:
                return False
    if len(anchors) == 3:
        a, b, c = anchors
        o = cross(_sub(b, a), _sub(c, a))
        s = [cross(_sub(b, a), _sub(p, a)), cross(_sub(c, b), _sub(p, b)), cross(_sub(a, c), _sub(p, c))]
        if o != 0 and all((x > 0) == (o > 0) for x in s):
            return False
    return True


def placement_ok(poly: Sequence[Point], anchors: Sequence[int], p) -> bool:
    """Every condition for putting the new vertex at ``p`` (exact)."""
    if point_in_polygon(p, poly) != 1:
        return False
    if not all(anchor_ok(poly, i, p) for i in anchors):
        return False
    return new_vertex_ok([poly[i] for i in anchors], p)


# -- regions ---------------------------------------------------------------------------------


@dataclass
class Cell:
    polygon: list[Point]
    signs: tuple[int, ...] | None = None  # filled on demand by the region

    @property
    def area2(self) -> Fraction:
        return polygon_area2(self.polygon)

    @property
    def centroid(self) -> Point:
        return polygon_centroid(self.polygon)


@dataclass
class FeasibleRegion:
    """Cells of the face where the new vertex may go.

    ``wedge_cells`` satisfy the anchor conditions; ``cells`` additionally
    make the new vertex pointed (the pointed-feasible region).
    """

    polygon: list[Point]
    anchors: tuple[int, ...]
    lines: list[Line]
    wedge_cells: list[Cell]
    cells: list[Cell]
    extra: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.cells

    def sign_vector(self, p) -> tuple[int, ...]:
        return tuple(side(ln, p) for ln in self.lines)

    def contains(self, p) -> bool:
        """Exact membership in the open feasible cells."""
        s = self.sign_vector(p)
        return 0 not in s and s in self._signs

    def contains_many(self, points) -> np.ndarray:
        """Vectorised :meth:`contains` for float points (taken at face value).

        Signs come from a float filter with a forward error bound; points
        whose sign is in doubt on some line are decided exactly.
        """
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        if not self.lines:
            return np.zeros(len(pts), dtype=bool)
        L = np.array([[float(a), float(b), float(c)] for a, b, c in self.lines])
        vals = pts @ L[:, :2].T + L[:, 2]
        bound = (np.abs(pts) @ np.abs(L[:, :2]).T + np.abs(L[:, 2])) * 1e-14
        signs = np.sign(vals).astype(np.int8)
        doubtful = np.any(np.abs(vals) <= bound, axis=1)
        feasible = self._signs
        out = np.zeros(len(pts), dtype=bool)
        for i, row in enumerate(signs):
            if doubtful[i]:
                out[i] = self.contains((Fraction(pts[i, 0]), Fraction(pts[i, 1])))
            else:
                out[i] = tuple(int(x) for x in row) in feasible
        return out

    def on_arrangement(self, p) -> bool:
        return 0 in self.sign_vector(p)

    @property
    def _signs(self) -> set[tuple[int, ...]]:
        if "signs" not in self.extra:
            self.extra["signs"] = {self.cell_signs(c) for c in self.cells}
        return self.extra["signs"]

    def cell_signs(self, cell: Cell) -> tuple[int, ...]:
        if cell.signs is None:
            cell.signs = self.sign_vector(cell.centroid)
        return cell.signs

    def area2(self) -> Fraction:
        return sum((c.area2 for c in self.cells), Fraction(0))


def _bbox(poly: Sequence[Point]) -> list[Point]:
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    return [(x0, y0), (x1, y0), (x1, y1), (x0, y1)]


def _refine(cells: list[list[Point]], lines: Sequence[Line]) -> list[list[Point]]:
    for ln in lines:
        nxt = []
        for c in cells:
            a, b = _split(c, ln)
            if a is not None and polygon_area2(a) != 0:
                nxt.append(a)
            if b is not None and polygon_area2(b) != 0:
                nxt.append(b)
        cells = nxt
    return cells


def _dedupe(lines: list[Line], seen: set[Line]) -> list[Line]:
    out = []
    for ln in lines:
        if ln not in seen and (ln[0] or ln[1]):
            seen.add(ln)
            out.append(ln)
    return out


def feasible_region(poly: Sequence, anchors: Sequence[int]) -> FeasibleRegion:
    """Pointed-feasible region for a new vertex joined to the given face positions."""
    poly = [exact_point(p) for p in poly]
    k = len(poly)
    for i in anchors:
        if not 0 <= i < k:
            raise AnchorNotOnFace(f"position {i} is not on the face")
    seen: set[Line] = set()
    lines: list[Line] = []
    edge_lines = _dedupe([line_through(poly[i], poly[(i + 1) % k]) for i in range(k)], seen)
    lines += edge_lines
    cells = _refine([_bbox(poly)], edge_lines)
    cells = [c for c in cells if point_in_polygon(polygon_centroid(c), poly) == 1]
    for i in anchors:
        new = _dedupe([line_through(poly[i], poly[j]) for j in range(k) if poly[j] != poly[i]], seen)
        lines += new
        cells = _refine(cells, new)
        cells = [c for c in cells if anchor_ok(poly, i, polygon_centroid(c))]
    wedge = list(cells)
    pair_lines = _dedupe(
        [line_through(poly[a], poly[b]) for x, a in enumerate(anchors) for b in anchors[x + 1:] if poly[a] != poly[b]],
        seen,
    )
    lines += pair_lines
    wedge_cells = [Cell(c) for c in _refine(wedge, pair_lines)]
    anchor_pts = [poly[i] for i in anchors]
    good = [c for c in wedge_cells if new_vertex_ok(anchor_pts, c.centroid)]
    return FeasibleRegion(poly, tuple(anchors), lines, wedge_cells, good)


def tangency_wedge(poly: Sequence, anchor: int) -> FeasibleRegion:
    """Points of the face from which an edge to ``anchor`` runs inside the face
    and is tangent to the boundary there (keeps the anchor pointed)."""
    return feasible_region(poly, (anchor,))


# -- choosing a point -------------------------------------------------------------------------


def _snap_inside(region: FeasibleRegion, cell: Cell, p: Point) -> Point | None:
    """The coarsest dyadic point near ``p`` still inside ``cell``."""
    xs = [q[0] for q in cell.polygon]
    ys = [q[1] for q in cell.polygon]
    size = max(max(xs) - min(xs), max(ys) - min(ys))
    if size <= 0:
        return None
    k0 = max(0, -math.floor(math.log2(size)) + 2)
    for k in range(k0, k0 + 64):
        scale = 1 << k
        q = (Fraction(round(p[0] * scale), scale), Fraction(round(p[1] * scale), scale))
        if _strictly_inside_convex(cell.polygon, q):
            return q
    return None


def _strictly_inside_convex(poly: Sequence[Point], q) -> bool:
    k = len(poly)
    return all(cross(_sub(poly[(i + 1) % k], poly[i]), _sub(q, poly[i])) > 0 for i in range(k))


def choose_point(
    region: FeasibleRegion, rng: random.Random | None = None, prefer_line: Line | None = None
) -> Point:
    """A point of the largest cell (preferring cells touching ``prefer_line``), kept short in bits."""
    if region.empty:
        raise NoPlacement("feasible region is empty")
    cells = sorted(region.cells, key=lambda c: -c.area2)
    if prefer_line is not None:
        touching = [c for c in cells if any(side(prefer_line, q) == 0 for q in c.polygon)]
        cells = touching + [c for c in cells if c not in touching]
    rng = rng or random.Random(0)
    anchors = region.anchors
    for cell in cells[:4]:
        cen = cell.centroid
        candidates = [_snap_inside(region, cell, cen), cen]
        for _ in range(8):
            w = [rng.random() + 1e-3 for _ in cell.polygon]
            s = sum(w)
            q = (
                sum(Fraction(wi) * v[0] for wi, v in zip(w, cell.polygon)) / Fraction(s),
                sum(Fraction(wi) * v[1] for wi, v in zip(w, cell.polygon)) / Fraction(s),
            )
            candidates.append(_snap_inside(region, cell, q) or q)
        for q in candidates:
            if q is not None and placement_ok(region.polygon, anchors, q):
                return q
    raise NoPlacement("no candidate point passed verification")


# -- steps on embedded graphs --------------------------------------------------------------


def _face_from_wedge(rot: Mapping[int, Sequence[int]], v: int, start: int) -> list[int]:
    """Vertex walk of the face containing the angle at ``v`` that starts at ``start``."""
    walk = []
    a, b = v, start
    while True:
        walk.append(a)
        r = rot[b]
        a, b = b, r[(list(r).index(a) - 1) % len(r)]
        if (a, b) == (v, start):
            return walk


def _anchor_positions(walk: list[int], attach: Sequence[int], slots: Sequence[int]) -> list[int]:
    k = len(walk)
    out = []
    for a, s in zip(attach, slots):
        pos = [i for i in range(k) if walk[i] == a and walk[(i + 1) % k] == s]
        if not pos:
            raise AnchorNotOnFace(f"vertex {a} (wedge at {s}) is not on the face {walk}")
        out.append(pos[0])
    return out


def place_henneberg1(
    emb: Embedding | Mapping[int, Sequence], g: PlaneGraph, face: int, v1: int, v2: int, seed: int = 0
) -> Point:
    """Position for a new vertex in interior face ``face`` joined to ``v1`` and ``v2``."""
    coords = _coord_map(emb)
    walk = list(g.faces[face])
    if face == g.outer_face:
        raise SequenceNotInteriorOnly("insertion into the outer face")
    pos = []
    for v in (v1, v2):
        if v not in walk:
            raise AnchorNotOnFace(f"vertex {v} is not on face {face}")
        pos.append(walk.index(v))
    region = feasible_region([coords[v] for v in walk], pos)
    return choose_point(region, random.Random(seed))


def place_henneberg2(
    emb: Embedding | Mapping[int, Sequence], g: PlaneGraph, removed_edge: tuple[int, int], vk: int,
    seed: int = 0,
) -> Point:
    """Position for a new vertex replacing edge ``removed_edge``, joined to its ends and ``vk``."""
    coords = _coord_map(emb)
    i, j = removed_edge
    if not g.has_edge(i, j):
        raise AnchorNotOnFace(f"{i}-{j} is not an edge")
    rot = {v: [u for u in g.rotations[v] if {u, v} != {i, j}] for v in g.vertices}
    # the merged wedge at i runs ccw from the neighbour before j
    walk = _face_from_wedge(rot, i, g.pred(i, j))
    if vk not in walk:
        raise AnchorNotOnFace(f"vertex {vk} is not on the merged face")
    pos = [walk.index(i), walk.index(j), walk.index(vk)]
    region = feasible_region([coords[v] for v in walk], pos)
    line = line_through(exact_point(coords[i]), exact_point(coords[j]))
    return choose_point(region, random.Random(seed), prefer_line=line)


def _coord_map(emb) -> dict[int, Point]:
    if isinstance(emb, Embedding):
        return {v: p for v, p in enumerate(emb.exact_coords)}
    return {v: exact_point(p) for v, p in emb.items()}


def step_region(rot: Mapping[int, Sequence[int]], coords: Mapping[int, Point], step: HennebergStep) -> tuple[list[int], FeasibleRegion]:
    """Face walk and feasible region for one forward step on the current drawing."""
    if step.kind == "II":
        a, b = step.split_edge  # type: ignore[misc]
        rot = {v: [u for u in r if {u, v} != {a, b}] for v, r in rot.items()}
    walk = _face_from_wedge(rot, step.attach[0], step.slots[0])
    poly = [coords[v] for v in walk]
    if polygon_area2(poly) <= 0:
        raise SequenceNotInteriorOnly(f"vertex {step.vertex} is inserted into the outer face")
    pos = _anchor_positions(walk, step.attach, step.slots)
    return walk, feasible_region(poly, pos)


def embed_incremental(
    seq: HennebergSequence,
    base_coords: Sequence | Mapping[int, Sequence] = ((0, 0), (4, 0), (2, 3)),
    *,
    seed: int = 0,
    verify_prefixes: bool = False,
) -> Embedding:
    """Realise a triangle-based Henneberg sequence with interior insertions only."""
    if not seq.base_is_triangle:
        raise SequenceNotInteriorOnly("the sequence must start from a triangle")
    bad = [s.vertex for s in seq.steps if s.on_outer]
    if bad:
        raise SequenceNotInteriorOnly(f"vertices {bad[:5]} are inserted into the outer face")
    if isinstance(base_coords, Mapping):
        coords = {v: exact_point(base_coords[v]) for v in seq.base}
    else:
        coords = {v: exact_point(p) for v, p in zip(seq.base, base_coords)}
    rot: dict[int, list[int]] = {v: list(r) for v, r in seq.base_rotations}
    b0 = seq.base[0]
    inner = _face_from_wedge(rot, b0, rot[b0][0])
    if polygon_area2([coords[v] for v in inner]) <= 0:
        inner = _face_from_wedge(rot, b0, rot[b0][1])
    if polygon_area2([coords[v] for v in inner]) <= 0:
        raise ValueError("base coordinates do not realise the base triangle")
    rng = random.Random(seed)
    for step in seq.steps:
        _, region = step_region(rot, coords, step)
        prefer = None
        if step.kind == "II":
            a, b = step.split_edge  # type: ignore[misc]
            prefer = line_through(coords[a], coords[b])
        coords[step.vertex] = choose_point(region, rng, prefer)
        apply_step(rot, step)
        if verify_prefixes:
            _check_prefix(rot, coords, step.vertex)
    emb = Embedding(tuple(_simplify(coords[v]) for v in range(seq.n)), "henneberg")
    return emb


def _simplify(p: Point) -> tuple:
    """Dyadic rationals become floats (exactly); others stay Fractions."""
    out = []
    for c in p:
        f = float(c)
        out.append(f if Fraction(f) == c else c)
    return tuple(out)


def _prefix_report(rot: Mapping[int, Sequence[int]], pts: Mapping[int, Point] | Sequence[Point]):
    present = sorted(rot)
    index = {v: i for i, v in enumerate(present)}
    g = PlaneGraph([[index[u] for u in rot[v]] for v in present], 0)
    sub = Embedding(tuple(pts[v] for v in present))
    # the outer face is the one walked clockwise
    outer = min(range(len(g.faces)), key=lambda f: polygon_area2([sub.exact_coords[u] for u in g.faces[f]]))
    return geometric_report(sub, g.with_outer_face(outer))


def _check_prefix(rot, coords, v) -> None:
    rep = _prefix_report(rot, coords)
    if not rep.pointed_pseudo_triangulation:
        raise NoPlacement(f"prefix after vertex {v} is not a pointed pseudo-triangulation: {rep.notes}")


def prefix_reports(seq: HennebergSequence, emb: Embedding):
    """Geometric report of every prefix of the construction drawn with ``emb``."""
    from .henneberg import iter_rotations

    pts = emb.exact_coords
    for rot in iter_rotations(seq):
        yield _prefix_report(rot, pts)


def embed_plane_laman(g: PlaneGraph, seed: int = 0) -> Embedding:
    """Pointed pseudo-triangulation of a plane Laman graph by the incremental path.

    The graph is enclosed in an auxiliary triangle whose three vertices have
    degree three, so a backward construction keeping that triangle inserts
    every vertex into an interior face.  The auxiliary vertices are dropped
    afterwards; the remaining drawing stays pointed with ``2n - 3`` edges.
    """
    from .henneberg import augment_outer_triangle, reverse_sequence

    aug, _ = augment_outer_triangle(g, force=True)
    tri = tuple(range(g.n, g.n + 3))
    seq = reverse_sequence(aug, prescribed=tri)
    ccw = list(reversed(aug.outer_walk()))
    base = {v: p for v, p in zip(ccw, ((0, 0), (4, 0), (2, 3)))}
    emb = embed_incremental(seq, base, seed=seed)
    return Embedding(tuple(emb.coords[: g.n]), "henneberg")
