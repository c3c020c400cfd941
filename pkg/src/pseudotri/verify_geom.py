"""Exact verification of straight-line drawings.

All predicates are exact: coordinates (floats or rationals) are moved onto
a common integer grid, and a float filter is used only when it provably
returns the right sign.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

import numpy as np

from .cpt import CptLabeling
from .errors import FacesMismatch, IsolatedVertex
from .plane_graph import PlaneGraph
from .predicates import (
    Number,
    ccw_angle_exceeds_pi,
    compare_directions,
    direction_key,
    exact,
    orientation as _orientation,
    orientation_batch,
    segments_intersect,
    to_integer_grid,
)


class Orientation(enum.IntEnum):
    RIGHT = -1
    COLLINEAR = 0
    LEFT = 1


def orientation(p, q, r) -> Orientation:
    """Exact orientation of the triple (floats are taken at face value)."""
    return Orientation(_orientation(*(tuple(exact(c) for c in x) for x in (p, q, r))))


@dataclass(frozen=True, eq=False)
class Embedding:
    """Point per vertex.  ``provenance`` is ``tutte``, ``henneberg`` or ``external``."""

    coords: tuple[tuple[Number, Number], ...]
    provenance: str = "external"

    def __post_init__(self) -> None:
        object.__setattr__(self, "coords", tuple((x, y) for x, y in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, v: int):
        return self.coords[v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Embedding):
            return NotImplemented
        return self.exact_coords == other.exact_coords

    def __hash__(self) -> int:
        return hash(tuple(self.exact_coords))

    @cached_property
    def exact_coords(self) -> list[tuple[Fraction, Fraction]]:
        return [(exact(x), exact(y)) for x, y in self.coords]

    @cached_property
    def grid(self) -> list[tuple[int, int]]:
        return to_integer_grid(self.exact_coords)

    @cached_property
    def float_array(self) -> np.ndarray:
        return np.array([[float(x), float(y)] for x, y in self.exact_coords], dtype=float).reshape(-1, 2)

    @cached_property
    def float_exact(self) -> np.ndarray | None:
        """The float array when it represents every coordinate exactly, else None."""
        arr = self.float_array
        for (x, y), (fx, fy) in zip(self.exact_coords, arr):
            if Fraction(float(fx)) != x or Fraction(float(fy)) != y:
                return None
        return arr

    @classmethod
    def from_floats(cls, arr, provenance: str = "external") -> "Embedding":
        return cls(tuple((float(x), float(y)) for x, y in np.asarray(arr, dtype=float)), provenance)


# -- angles -----------------------------------------------------------------------


def _direction(emb: Embedding, v: int, u: int) -> tuple[int, int]:
    (x0, y0), (x1, y1) = emb.grid[v], emb.grid[u]
    return (x1 - x0, y1 - y0)


def geometric_rotation(emb: Embedding, g: PlaneGraph, v: int) -> list[int]:
    """Neighbours of ``v`` sorted ccw by exact direction, starting at the rotation's first entry."""
    nbrs = list(g.rotations[v])
    if not nbrs:
        return []
    order = sorted(nbrs, key=lambda u: direction_key(_direction(emb, v, u)))
    i = order.index(nbrs[0])
    return order[i:] + order[:i]


def _rotation_ok(emb: Embedding, g: PlaneGraph, v: int) -> bool:
    nbrs = g.rotations[v]
    if len(nbrs) <= 2:
        # a zero direction means two coincident points
        return all(_direction(emb, v, u) != (0, 0) for u in nbrs)
    dirs = [_direction(emb, v, u) for u in nbrs]
    if any(d == (0, 0) for d in dirs):
        return False
    ordered = sorted(dirs, key=direction_key)
    if any(compare_directions(ordered[i], ordered[i + 1]) == 0 for i in range(len(ordered) - 1)):
        # two edges on the same ray
        return False
    return geometric_rotation(emb, g, v) == list(nbrs)


def wedge_class(emb: Embedding, v: int, a: int, b: int) -> int:
    """Compare the ccw wedge at ``v`` from ``a`` to ``b`` with pi (+1 reflex, 0 straight, -1 convex)."""
    if a == b:
        return 1
    return ccw_angle_exceeds_pi(_direction(emb, v, a), _direction(emb, v, b))


def is_pointed(emb: Embedding, g: PlaneGraph, v: int) -> bool:
    """Some pair of ccw-consecutive edges at ``v`` spans an angle larger than pi."""
    rot = geometric_rotation(emb, g, v)
    if not rot:
        raise IsolatedVertex(f"vertex {v} has no edges")
    d = len(rot)
    return any(wedge_class(emb, v, rot[i], rot[(i + 1) % d]) > 0 for i in range(d))


def straight_angles(emb: Embedding, g: PlaneGraph, v: int) -> list[tuple[int, int]]:
    rot = geometric_rotation(emb, g, v)
    d = len(rot)
    return [(rot[i], rot[(i + 1) % d]) for i in range(d) if d > 1 and wedge_class(emb, v, rot[i], rot[(i + 1) % d]) == 0]


# -- crossings ---------------------------------------------------------------------


def _candidate_pairs(emb: Embedding, edges: np.ndarray, chunk: int = 2048) -> np.ndarray:
    """Edge index pairs (i < j) whose bounding boxes overlap."""
    pts = emb.float_array
    a, b = pts[edges[:, 0]], pts[edges[:, 1]]
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    # float bboxes are widened slightly so rounding never hides a contact
    pad = 1e-9 * (np.abs(lo) + np.abs(hi)) + 1e-300
    lo -= pad
    hi += pad
    order = np.argsort(lo[:, 0], kind="stable")
    lo_s, hi_s = lo[order], hi[order]
    out = []
    m = len(edges)
    for start in range(0, m, chunk):
        idx = np.arange(start, min(start + chunk, m))
        # candidates j > i in x-sorted order whose xmin does not exceed xmax_i
        stop = np.searchsorted(lo_s[:, 0], hi_s[idx, 0], side="right")
        for k, i in enumerate(idx):
            j = np.arange(i + 1, stop[k])
            if not len(j):
                continue
            ok = (lo_s[j, 1] <= hi_s[i, 1]) & (hi_s[j, 1] >= lo_s[i, 1])
            j = j[ok]
            if len(j):
                out.append(np.column_stack([np.full(len(j), order[i]), order[j]]))
    if not out:
        return np.zeros((0, 2), dtype=np.int64)
    return np.concatenate(out)


def crossing_pairs(emb: Embedding, g: PlaneGraph, limit: int | None = None) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Edge pairs that meet improperly: non-adjacent edges sharing a point, or
    adjacent edges overlapping along a segment."""
    edges = np.array(g.edges, dtype=np.int64).reshape(-1, 2)
    if len(edges) < 2:
        return []
    pairs = _candidate_pairs(emb, edges)
    if not len(pairs):
        return []
    e1, e2 = edges[pairs[:, 0]], edges[pairs[:, 1]]
    adjacent = (
        (e1[:, 0] == e2[:, 0]) | (e1[:, 0] == e2[:, 1]) | (e1[:, 1] == e2[:, 0]) | (e1[:, 1] == e2[:, 1])
    )
    ints, fl = emb.grid, emb.float_exact
    bad = []
    na = np.nonzero(~adjacent)[0]
    if len(na):
        a, b, c, d = e1[na, 0], e1[na, 1], e2[na, 0], e2[na, 1]
        o1 = orientation_batch(ints, fl, a, b, c)
        o2 = orientation_batch(ints, fl, a, b, d)
        o3 = orientation_batch(ints, fl, c, d, a)
        o4 = orientation_batch(ints, fl, c, d, b)
        proper = (o1 * o2 < 0) & (o3 * o4 < 0)
        touch = (o1 == 0) | (o2 == 0) | (o3 == 0) | (o4 == 0)
        for k in np.nonzero(proper | touch)[0]:
            i = na[k]
            u, v = e1[i]
            x, y = e2[i]
            if proper[k] or segments_intersect(ints[u], ints[v], ints[x], ints[y]):
                bad.append(((int(u), int(v)), (int(x), int(y))))
                if limit and len(bad) >= limit:
                    return bad
    for i in np.nonzero(adjacent)[0]:
        (u, v), (x, y) = e1[i], e2[i]
        s = u if u in (x, y) else v
        p = v if s == u else u
        q = y if s == x else x
        dp, dq = _direction(emb, s, p), _direction(emb, s, q)
        if dp[0] * dq[1] - dp[1] * dq[0] == 0 and dp[0] * dq[0] + dp[1] * dq[1] > 0:
            bad.append(((int(u), int(v)), (int(x), int(y))))
            if limit and len(bad) >= limit:
                return bad
    return bad


def is_noncrossing(emb: Embedding, g: PlaneGraph) -> bool:
    if len(set(emb.grid)) != len(emb.grid):
        return False
    return not crossing_pairs(emb, g, limit=1)


# -- labels and reports --------------------------------------------------------------


def derive_labeling(emb: Embedding, g: PlaneGraph) -> CptLabeling:
    """Big exactly at the geometrically reflex angles (a straight angle counts as small)."""
    bad = [v for v in g.vertices if not _rotation_ok(emb, g, v)]
    if bad:
        raise FacesMismatch(f"coordinates do not realise the rotation at vertices {bad[:10]}")
    big = set()
    for v in g.vertices:
        rot = g.rotations[v]
        d = len(rot)
        for i in range(d):
            if wedge_class(emb, v, rot[i], rot[(i + 1) % d]) > 0:
                big.add((v, rot[i]))
    return CptLabeling(g, frozenset(big))


@dataclass(frozen=True)
class GeometricReport:
    non_crossing: bool
    rotation_consistent: bool
    pointed: tuple[bool, ...]
    face_convex_counts: tuple[int, ...]
    labeling: CptLabeling | None
    outer_convex: bool
    degenerate_vertices: tuple[int, ...]
    simple_faces: bool
    edge_count_ok: bool
    notes: tuple[str, ...] = field(default=())

    @property
    def non_pointed(self) -> list[int]:
        return [v for v, p in enumerate(self.pointed) if not p]

    @property
    def pseudo_triangulation(self) -> bool:
        if not (self.non_crossing and self.rotation_consistent and self.outer_convex and self.simple_faces):
            return False
        if self.degenerate_vertices or self.labeling is None:
            return False
        g = self.labeling.graph
        return all(self.face_convex_counts[f] == 3 for f in g.interior_faces())

    @property
    def pointed_pseudo_triangulation(self) -> bool:
        g = self.labeling.graph if self.labeling else None
        return self.pseudo_triangulation and g is not None and all(self.pointed[v] for v in g.vertices)


def geometric_report(emb: Embedding, g: PlaneGraph) -> GeometricReport:
    # embeddings are immutable; remember the last report per graph object
    cached = emb.__dict__.get("_report")
    if cached is not None and cached[0] is g:
        return cached[1]
    rep = _geometric_report(emb, g)
    emb.__dict__["_report"] = (g, rep)
    return rep


def _geometric_report(emb: Embedding, g: PlaneGraph) -> GeometricReport:
    notes = []
    if len(emb) != g.n:
        raise FacesMismatch(f"{len(emb)} points for {g.n} vertices")
    non_crossing = is_noncrossing(emb, g)
    if not non_crossing:
        notes.append("edges cross or vertices coincide")
    try:
        lab = derive_labeling(emb, g)
        rot_ok = True
    except FacesMismatch as exc:
        notes.append(str(exc))
        return GeometricReport(
            non_crossing, False, tuple(False for _ in range(g.n)), tuple(0 for _ in g.faces),
            None, False, (), False, g.m == 2 * g.order - 3, tuple(notes),
        )
    degenerate = tuple(v for v in g.vertices if g.degree(v) > 1 and straight_angles(emb, g, v))
    if degenerate:
        notes.append(f"straight angles at {list(degenerate[:10])}")
    pointed = tuple(lab.is_pointed(v) if g.rotations[v] else False for v in range(g.n))
    counts = tuple(len(lab.corners(f)) for f in range(len(g.faces)))
    outer = g.outer_walk()
    outer_convex = counts[g.outer_face] == 0 and len(set(outer)) == len(outer)
    simple = all(len(set(w)) == len(w) for w in g.faces)
    return GeometricReport(
        non_crossing, rot_ok, pointed, counts, lab, outer_convex, degenerate, simple,
        g.m == 2 * g.order - 3, tuple(notes),
    )


def verify_embedding(emb: Embedding, g: PlaneGraph) -> GeometricReport:
    return geometric_report(emb, g)


def signed_face_areas2(emb: Embedding, g: PlaneGraph) -> list[Fraction]:
    """Twice the exact signed area of every face walk."""
    pts = emb.exact_coords
    out = []
    for w in g.faces:
        s = Fraction(0)
        k = len(w)
        for i in range(k):
            x0, y0 = pts[w[i]]
            x1, y1 = pts[w[(i + 1) % k]]
            s += x0 * y1 - x1 * y0
        out.append(s)
    return out


def convex_position(points: Sequence) -> bool:
    """Points listed in ccw order form a strictly convex polygon."""
    k = len(points)
    if k < 3:
        return False
    pts = [tuple(exact(c) for c in p) for p in points]
    if not all(_orientation(pts[i], pts[(i + 1) % k], pts[(i + 2) % k]) > 0 for i in range(k)):
        return False
    # left turns everywhere; the edge directions must also wind around exactly once
    keys = [direction_key((pts[(i + 1) % k][0] - pts[i][0], pts[(i + 1) % k][1] - pts[i][1])) for i in range(k)]
    return sum(1 for i in range(k) if keys[i] < keys[i - 1]) == 1
