"""Plane graphs given by rotation systems.

A :class:`PlaneGraph` stores, for each vertex, the ccw cyclic order of its
neighbours (y axis up).  Faces are traced with the face on the left of
each dart: the dart following ``(u, v)`` is ``(v, w)`` where ``w`` precedes
``u`` in the rotation at ``v``.  With this convention bounded faces are
walked ccw and the outer face is walked cw.

An angle is identified by its position in a facial walk.  The angle at
position ``i`` of face ``f`` sits at ``walk[i]`` and is the ccw wedge swept
from the direction towards ``walk[i + 1]`` to the direction towards
``walk[i - 1]``; those two neighbours are consecutive in the rotation, so
the same wedge is also named by ``(vertex, start_neighbour)``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    DegenerateGraph,
    DisconnectedSubset,
    EmptySubset,
    InconsistentRotation,
    OuterFaceNotFound,
)
from .predicates import direction_key, exact_point, signed_area2

Dart = tuple[int, int]


@dataclass(frozen=True)
class Angle:
    face: int
    pos: int
    vertex: int
    next: int  # neighbour where the ccw wedge starts
    prev: int  # neighbour where it ends


@dataclass(frozen=True)
class BoundaryCycle:
    """Outer boundary walk of one connected component of an induced subgraph."""

    component: frozenset[int]
    darts: tuple[Dart, ...]

    @property
    def walk(self) -> tuple[int, ...]:
        if not self.darts:
            return tuple(self.component)
        return tuple(u for u, _ in self.darts)

    @property
    def b(self) -> int:
        return len(self.darts)

    @property
    def b0(self) -> int:
        # an isolated vertex has an empty walk
        return len({u for u, _ in self.darts})


class PlaneGraph:
    """Immutable connected plane graph (rotation system plus outer face)."""

    __slots__ = ("n", "rotations", "vertices", "edges", "faces", "outer_face", "_pos", "_dart_face")

    def __init__(self, rotations: Sequence[Sequence[int]], outer_face: int | Dart = 0):
        self.n = len(rotations)
        self.rotations: tuple[tuple[int, ...], ...] = tuple(tuple(r) for r in rotations)
        self._pos = [{u: i for i, u in enumerate(r)} for r in self.rotations]
        # intermediate graphs of a construction keep absent ids with empty rotations
        self.vertices: tuple[int, ...] = (
            tuple(v for v in range(self.n) if self.rotations[v]) if self.n > 1 else (0,)
        )
        self.edges: tuple[tuple[int, int], ...] = tuple(
            sorted((u, v) for u, r in enumerate(self.rotations) for v in r if u < v)
        )
        faces: list[tuple[int, ...]] = []
        dart_face: dict[Dart, tuple[int, int]] = {}
        for u in range(self.n):
            for v in self.rotations[u]:
                if (u, v) in dart_face:
                    continue
                fid = len(faces)
                walk = []
                a, b = u, v
                while (a, b) not in dart_face:
                    dart_face[(a, b)] = (fid, len(walk))
                    walk.append(a)
                    a, b = b, self._pred(b, a)
                faces.append(tuple(walk))
        if self.n == 1:
            faces.append((0,))
        self.faces: tuple[tuple[int, ...], ...] = tuple(faces)
        self._dart_face = dart_face
        if isinstance(outer_face, tuple):
            outer_face = dart_face[outer_face][0]
        self.outer_face: int = outer_face

    # -- rotation helpers ---------------------------------------------------

    def _pred(self, v: int, u: int) -> int:
        r = self.rotations[v]
        return r[(self._pos[v][u] - 1) % len(r)]

    def succ(self, v: int, u: int) -> int:
        """Neighbour following ``u`` ccw around ``v``."""
        r = self.rotations[v]
        return r[(self._pos[v][u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        """Neighbour preceding ``u`` ccw around ``v``."""
        return self._pred(v, u)

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotations[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._pos[u]

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def order(self) -> int:
        """Number of present vertices."""
        return len(self.vertices)

    # -- faces and angles ---------------------------------------------------

    def dart_face(self, u: int, v: int) -> tuple[int, int]:
        """(face, position) of the dart ``u -> v``."""
        return self._dart_face[(u, v)]

    def face_darts(self, f: int) -> list[Dart]:
        w = self.faces[f]
        return [(w[i], w[(i + 1) % len(w)]) for i in range(len(w))] if self.n > 1 else []

    def face_degree(self, f: int) -> int:
        return len(self.faces[f])

    def interior_faces(self) -> list[int]:
        return [f for f in range(len(self.faces)) if f != self.outer_face]

    def angle(self, f: int, pos: int) -> Angle:
        w = self.faces[f]
        k = len(w)
        return Angle(f, pos, w[pos], w[(pos + 1) % k], w[(pos - 1) % k])

    def angles(self) -> list[Angle]:
        return [self.angle(f, i) for f in range(len(self.faces)) for i in range(len(self.faces[f]))]

    def wedge_angle(self, v: int, start: int) -> Angle:
        """The angle at ``v`` whose ccw wedge starts at neighbour ``start``."""
        f, i = self._dart_face[(v, start)]
        return self.angle(f, i)

    def vertex_angles(self, v: int) -> list[Angle]:
        return [self.wedge_angle(v, u) for u in self.rotations[v]]

    def outer_walk(self) -> tuple[int, ...]:
        return self.faces[self.outer_face]

    def outer_cycle_ccw(self) -> list[int]:
        """Outer boundary vertices in ccw order, starting at the smallest id."""
        w = list(reversed(self.outer_walk()))
        i = w.index(min(w))
        return w[i:] + w[:i]

    def outer_vertices(self) -> frozenset[int]:
        return frozenset(self.outer_walk())

    def faces_around(self, v: int) -> list[int]:
        return [self._dart_face[(v, u)][0] for u in self.rotations[v]]

    # -- misc -----------------------------------------------------------------

    def with_outer_face(self, outer_face: int | Dart) -> "PlaneGraph":
        return PlaneGraph(self.rotations, outer_face)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(_component(self, self.vertices[0], self.vertices)) == len(self.vertices)

    def canonical_rotations(self) -> tuple[tuple[int, ...], ...]:
        """Rotations as cyclic sequences, each rotated to start at its smallest neighbour."""
        out = []
        for r in self.rotations:
            if r:
                i = r.index(min(r))
                r = r[i:] + r[:i]
            out.append(r)
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return (
            self.canonical_rotations() == other.canonical_rotations()
            and set(self.face_darts(self.outer_face)) == set(other.face_darts(other.outer_face))
        )

    def __hash__(self) -> int:
        return hash(self.canonical_rotations())

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m}, faces={len(self.faces)}, outer={self.outer_walk()})"


def _component(g: PlaneGraph, start: int, allowed: Iterable[int]) -> set[int]:
    allowed = set(allowed)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.rotations[u]:
            if v in allowed and v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


def match_outer_face(g: PlaneGraph, hint: Sequence[int]) -> int:
    """Index of the face whose boundary, read ccw as drawn, is ``hint``."""
    hint = list(hint)
    k = len(hint)
    for f, walk in enumerate(g.faces):
        if len(walk) != k:
            continue
        ccw = list(reversed(walk))
        for s in range(k):
            if ccw[s:] + ccw[:s] == hint:
                return f
    raise OuterFaceNotFound(f"no face has ccw boundary {hint}")


def build_plane_graph(
    n: int,
    edges: Iterable[Sequence[int]],
    rotations: Sequence[Sequence[int]],
    outer_face_hint: Sequence[int] | None = None,
) -> PlaneGraph:
    """Validate a rotation system and return the traced plane graph.

    ``outer_face_hint`` lists the outer boundary in ccw order as drawn; when
    omitted the first traced face is taken as outer.
    """
    if n < 2:
        raise DegenerateGraph("need at least two vertices")
    edge_set: set[tuple[int, int]] = set()
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise DegenerateGraph(f"edge {u}-{v} out of range")
        if u == v:
            raise DegenerateGraph(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in edge_set:
            raise DegenerateGraph(f"multi-edge {key}")
        edge_set.add(key)
    if len(rotations) != n:
        raise InconsistentRotation(f"expected {n} rotations, got {len(rotations)}")
    incident: list[set[int]] = [set() for _ in range(n)]
    for u, v in edge_set:
        incident[u].add(v)
        incident[v].add(u)
    for v, rot in enumerate(rotations):
        if len(rot) != len(set(rot)) or set(rot) != incident[v]:
            missing = sorted(incident[v] - set(rot))
            extra = sorted(set(rot) - incident[v])
            raise InconsistentRotation(
                f"rotation at {v} is {list(rot)}; missing {missing}, unexpected {extra}"
            )
    g = PlaneGraph(rotations, 0)
    if not g.is_connected():
        raise DegenerateGraph("graph is disconnected")
    if g.n - g.m + len(g.faces) != 2:
        raise InconsistentRotation("rotation system is not planar (Euler characteristic != 2)")
    if outer_face_hint is not None:
        g = g.with_outer_face(match_outer_face(g, outer_face_hint))
    return g


def trace_faces(g: PlaneGraph) -> tuple[tuple[int, ...], ...]:
    return g.faces


def from_coordinates(
    points: Sequence[Sequence], edges: Iterable[Sequence[int]]
) -> PlaneGraph:
    """Plane graph realised by a straight-line drawing.

    Rotations come from the exact angular order of the edges; the outer face
    is the one walked clockwise with the most negative area.  The drawing is
    assumed to be non-crossing.
    """
    pts = [exact_point(p) for p in points]
    n = len(pts)
    adj: list[list[int]] = [[] for _ in range(n)]
    edges = [tuple(e) for e in edges]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    rotations = []
    for v in range(n):
        px, py = pts[v]
        rotations.append(
            sorted(adj[v], key=lambda u: direction_key((pts[u][0] - px, pts[u][1] - py)))
        )
    g = build_plane_graph(n, edges, rotations)
    areas = [signed_area2([pts[u] for u in w]) for w in g.faces]
    return g.with_outer_face(min(range(len(areas)), key=lambda f: (areas[f], f)))


# -- induced subgraphs ---------------------------------------------------------


def _induced_edges(g: PlaneGraph, s: frozenset[int]) -> set[tuple[int, int]]:
    return {(u, v) for u, v in g.edges if u in s and v in s}


def outer_region(g: PlaneGraph, edge_set: set[tuple[int, int]]) -> set[int]:
    """Faces of ``g`` lying in the unbounded region of the drawing of ``edge_set``."""
    region = {g.outer_face}
    queue = deque([g.outer_face])
    while queue:
        f = queue.popleft()
        for u, v in g.face_darts(f):
            if (min(u, v), max(u, v)) in edge_set:
                continue
            h = g.dart_face(v, u)[0]
            if h not in region:
                region.add(h)
                queue.append(h)
    return region


def components(g: PlaneGraph, s: Iterable[int]) -> list[frozenset[int]]:
    s = set(s)
    out = []
    for v in sorted(s):
        if any(v in c for c in out):
            continue
        out.append(frozenset(_component(g, v, s)))
    return out


def _boundary_of_component(g: PlaneGraph, comp: frozenset[int]) -> BoundaryCycle:
    if len(comp) == 1:
        return BoundaryCycle(comp, ())
    e_c = _induced_edges(g, comp)
    region = outer_region(g, e_c)
    rot = {v: [u for u in g.rotations[v] if u in comp] for v in comp}
    pos = {v: {u: i for i, u in enumerate(r)} for v, r in rot.items()}
    start = None
    for u in sorted(comp):
        for v in rot[u]:
            if g.dart_face(u, v)[0] in region:
                start = (u, v)
                break
        if start:
            break
    assert start is not None
    darts = []
    a, b = start
    while True:
        darts.append((a, b))
        r = rot[b]
        a, b = b, r[(pos[b][a] - 1) % len(r)]
        if (a, b) == start:
            break
    return BoundaryCycle(comp, tuple(darts))


def induced_boundary_cycles(g: PlaneGraph, s: Iterable[int]) -> list[BoundaryCycle]:
    """One outer boundary walk per connected component of the subgraph induced by ``s``."""
    s = frozenset(s)
    if not s:
        raise EmptySubset("subset is empty")
    return [_boundary_of_component(g, c) for c in components(g, s)]


def fill_holes(g: PlaneGraph, s: Iterable[int]) -> frozenset[int]:
    """Add every vertex enclosed by the outer boundary of the connected subgraph ``s``."""
    s = frozenset(s)
    if not s:
        raise EmptySubset("subset is empty")
    if len(components(g, s)) != 1:
        raise DisconnectedSubset("subset does not induce a connected subgraph")
    region = outer_region(g, _induced_edges(g, s))
    extra = {
        v for v in range(g.n) if v not in s and g.dart_face(v, g.rotations[v][0])[0] not in region
    }
    return s | extra


def is_simply_connected(g: PlaneGraph, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return bool(s) and len(components(g, s)) == 1 and fill_holes(g, s) == s


def induced_subgraph(g: PlaneGraph, s: Iterable[int]) -> tuple[PlaneGraph, list[int]]:
    """Induced plane subgraph on ``s`` (connected), relabelled 0..k-1.

    Returns the subgraph and the list mapping new ids to old ids.  Its outer
    face is the one containing the outer face of ``g``.
    """
    s = sorted(set(s))
    index = {v: i for i, v in enumerate(s)}
    rots = [[index[u] for u in g.rotations[v] if u in index] for v in s]
    sub = PlaneGraph(rots, 0)
    if len(s) > 1:
        cyc = _boundary_of_component(g, frozenset(s))
        u, v = cyc.darts[0]
        sub = sub.with_outer_face((index[u], index[v]))
    return sub, s
