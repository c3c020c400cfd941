"""Plane Henneberg constructions.

A construction is computed backwards: repeatedly remove a vertex of
degree 2 (type I) or degree 3 (type II, putting back one edge between two
of its neighbours).  The put-back edge is routed through the slot the
removed vertex occupied, so every intermediate graph stays plane and the
forward step simply re-inserts the vertex into the same rotation slots.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .errors import (
    NotLaman,
    NotLamanPlusOne,
    OuterFaceTooSmall,
    PrescriptionInvalid,
    StepInconsistent,
)
from .plane_graph import Dart, PlaneGraph, match_outer_face
from .rigidity import PebbleGame, classify, is_laman, is_laman_plus_one

Rotations = dict[int, list[int]]


@dataclass(frozen=True)
class HennebergStep:
    kind: str  # "I" or "II"
    vertex: int
    attach: tuple[int, ...]
    rotation: tuple[int, ...]  # ccw neighbours of the new vertex
    slots: tuple[int, ...]  # per attach vertex, the neighbour preceding the new vertex
    split_edge: tuple[int, int] | None = None
    face: tuple[int, ...] = ()  # walk of the insertion face, starting at attach[0]
    on_outer: bool = False


@dataclass(frozen=True)
class HennebergSequence:
    base: tuple[int, ...]  # 2 (edge), 3 (triangle) or 4 (K4) vertices
    base_rotations: tuple[tuple[int, tuple[int, ...]], ...]
    steps: tuple[HennebergStep, ...]
    n: int
    outer_dart: Dart  # a dart on the outer face of the final graph
    plus_one: bool = False
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def base_is_triangle(self) -> bool:
        return len(self.base) == 3


# -- mutable rotation helpers ------------------------------------------------


def _rotations_of(g: PlaneGraph) -> Rotations:
    return {v: list(g.rotations[v]) for v in g.vertices}


def _pred(rot: Rotations, v: int, u: int) -> int:
    r = rot[v]
    return r[(r.index(u) - 1) % len(r)]


def _face_walk(rot: Rotations, dart: Dart) -> list[Dart]:
    walk = []
    a, b = dart
    while True:
        walk.append((a, b))
        a, b = b, _pred(rot, b, a)
        if (a, b) == dart:
            return walk


def _count_faces(rot: Rotations) -> int:
    seen: set[Dart] = set()
    faces = 0
    for u, r in rot.items():
        for v in r:
            if (u, v) not in seen:
                faces += 1
                seen.update(_face_walk(rot, (u, v)))
    return faces


def _is_plane(rot: Rotations) -> bool:
    n = len(rot)
    m = sum(len(r) for r in rot.values()) // 2
    return n - m + _count_faces(rot) == 2


def _edges(rot: Rotations) -> list[tuple[int, int]]:
    return [(u, v) for u, r in rot.items() for v in r if u < v]


def _relabelled(rot: Rotations, extra: Sequence[tuple[int, int]] = ()) -> tuple[int, list[tuple[int, int]]]:
    index = {v: i for i, v in enumerate(sorted(rot))}
    edges = [(index[u], index[v]) for u, v in _edges(rot)]
    edges += [(index[u], index[v]) for u, v in extra]
    return len(index), edges


def to_plane_graph(rot: Rotations, n: int, outer_dart: Dart | None = None) -> PlaneGraph:
    rots = [tuple(rot.get(v, ())) for v in range(n)]
    g = PlaneGraph(rots, 0)
    if outer_dart is not None:
        g = g.with_outer_face(outer_dart)
    return g


def _outer_dart_avoiding(rot: Rotations, outer: Dart, v: int) -> Dart:
    if v not in outer:
        return outer
    for a, b in _face_walk(rot, outer):
        if a != v and b != v:
            return (a, b)
    raise StepInconsistent("outer face consists only of darts at the removed vertex")


def _remove_vertex(rot: Rotations, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Delete ``v``; return its rotation and, per neighbour, the preceding neighbour."""
    rotation = tuple(rot[v])
    slots = []
    for a in rotation:
        slots.append(_pred(rot, a, v))
    for a in rotation:
        rot[a].remove(v)
    del rot[v]
    return rotation, tuple(slots)


def _insert_after(rot: Rotations, a: int, pred: int, v: int) -> None:
    r = rot[a]
    r.insert(r.index(pred) + 1, v)


def _removal_step(
    rot: Rotations, v: int, pair: tuple[int, int] | None, outer: Dart
) -> tuple[HennebergStep, Dart]:
    """Remove ``v`` (and add back ``pair``); return the forward step and new outer dart."""
    outer = _outer_dart_avoiding(rot, outer, v)
    # slots are taken in the graph that still contains v
    rotation, slots = _remove_vertex(rot, v)
    attach = rotation
    a0, s0 = attach[0], slots[0]
    walk = _face_walk(rot, (a0, s0))
    face = tuple(x for x, _ in walk)
    on_outer = outer in walk
    if pair is not None:
        a, b = pair
        # route the new edge through v's old slot
        for x, y in ((a, b), (b, a)):
            i = rotation.index(x)
            _insert_after(rot, x, slots[i], y)
    step = HennebergStep(
        kind="I" if pair is None else "II",
        vertex=v,
        attach=attach,
        rotation=rotation,
        slots=slots,
        split_edge=None if pair is None else (min(pair), max(pair)),
        face=face,
        on_outer=on_outer,
    )
    return step, outer


def _laman_pair(rot: Rotations, v: int) -> tuple[int, int] | None:
    """First neighbour pair of ``v`` whose edge restores the Laman counts after removing ``v``."""
    others = {u: list(r) for u, r in rot.items() if u != v}
    for u in rot[v]:
        others[u] = [w for w in others[u] if w != v]
    n, edges = _relabelled(others)
    index = {x: i for i, x in enumerate(sorted(others))}
    game = PebbleGame(n)
    for e in edges:
        game.add_edge(*e)
    if game.redundant:
        return None
    for a, b in combinations(sorted(rot[v]), 2):
        if b in rot[a]:
            continue
        if game.collect(index[a], index[b]):
            return (a, b)
    return None


def _plus_one_pair(rot: Rotations, v: int) -> tuple[int, int] | None:
    """First neighbour pair keeping the Laman-plus-one counts after removing ``v``."""
    others = {u: [w for w in r if w != v] for u, r in rot.items() if u != v}
    n, edges = _relabelled(others)
    index = {x: i for i, x in enumerate(sorted(others))}
    game = PebbleGame(n)
    for e in edges:
        game.add_edge(*e)
    rank = len(game.independent)
    for a, b in combinations(sorted(rot[v]), 2):
        if b in rot[a]:
            continue
        gain = 1 if game.collect(index[a], index[b]) else 0
        if rank + gain == 2 * n - 3:
            return (a, b)
    return None


def _finish(
    rot: Rotations, steps: list[HennebergStep], g: PlaneGraph, plus_one: bool, meta: dict
) -> HennebergSequence:
    base = tuple(sorted(rot))
    base_rot = tuple((v, tuple(rot[v])) for v in base)
    final_outer = g.face_darts(g.outer_face)[0]
    return HennebergSequence(
        base=base,
        base_rotations=base_rot,
        steps=tuple(reversed(steps)),
        n=g.n,
        outer_dart=final_outer,
        plus_one=plus_one,
        meta=meta,
    )


def _triangle_face(g: PlaneGraph, tri: Sequence[int]) -> int | None:
    for f, w in enumerate(g.faces):
        if len(w) == 3 and set(w) == set(tri):
            return f
    return None


def reverse_sequence(g: PlaneGraph, prescribed: Sequence[int] | None = None) -> HennebergSequence:
    """Plane Henneberg construction of a plane Laman graph, found backwards.

    ``prescribed`` is either a vertex pair kept as the base edge (default
    ``(0, 1)``) or a triangular face of degree-3 vertices kept as the base
    triangle.  Among removable vertices the largest id is taken, which undoes
    a forward construction in reverse order.
    """
    if not is_laman(g):
        raise NotLaman("graph is not Laman")
    keep = tuple(prescribed) if prescribed is not None else tuple(sorted(g.vertices)[:2])
    if len(set(keep)) != len(keep) or len(keep) not in (2, 3) or any(v not in g.vertices for v in keep):
        raise PrescriptionInvalid(f"cannot prescribe {keep}")
    if len(keep) == 3:
        if any(g.degree(v) != 3 for v in keep) or _triangle_face(g, keep) is None:
            raise PrescriptionInvalid("prescribed triangle must be a face of degree-3 vertices")
    keep_set = set(keep)
    rot = _rotations_of(g)
    outer = g.face_darts(g.outer_face)[0]
    steps: list[HennebergStep] = []
    while len(rot) > len(keep):
        chosen = None
        for v in sorted(rot, reverse=True):
            if v in keep_set or len(rot[v]) > 3:
                continue
            if len(rot[v]) == 2:
                chosen = (v, None)
                break
            pair = _laman_pair(rot, v)
            if pair is not None:
                chosen = (v, pair)
                break
        if chosen is None:
            raise PrescriptionInvalid(f"no removable vertex outside {keep} at size {len(rot)}")
        step, outer = _removal_step(rot, chosen[0], chosen[1], outer)
        steps.append(step)
    return _finish(rot, steps, g, False, {"prescribed": keep})


def reverse_sequence_plus_one(g: PlaneGraph) -> HennebergSequence:
    """Plane Henneberg construction of a plane Laman-plus-one graph from a K4."""
    if not is_laman_plus_one(g):
        raise NotLamanPlusOne("graph is not Laman-plus-one")
    rot = _rotations_of(g)
    outer = g.face_darts(g.outer_face)[0]
    steps: list[HennebergStep] = []
    while len(rot) > 4:
        chosen = None
        for v in sorted(rot, reverse=True):
            d = len(rot[v])
            if d == 2:
                chosen = (v, None)
                break
            if d == 3:
                pair = _plus_one_pair(rot, v)
                if pair is not None:
                    chosen = (v, pair)
                    break
        if chosen is None:
            raise NotLamanPlusOne(f"no removable vertex at size {len(rot)}")
        step, outer = _removal_step(rot, chosen[0], chosen[1], outer)
        steps.append(step)
    return _finish(rot, steps, g, True, {})


# -- forward direction ------------------------------------------------------------


def apply_step(rot: Rotations, step: HennebergStep) -> None:
    """Apply one forward step in place, raising StepInconsistent on mismatch."""
    v = step.vertex
    if v in rot:
        raise StepInconsistent(f"vertex {v} already present")
    if sorted(step.rotation) != sorted(step.attach) or len(step.slots) != len(step.attach):
        raise StepInconsistent(f"step for {v} has inconsistent attachment data")
    expected = 2 if step.kind == "I" else 3
    if len(step.attach) != expected or len(set(step.attach)) != expected:
        raise StepInconsistent(f"type {step.kind} step needs {expected} distinct neighbours")
    for a in step.attach:
        if a not in rot:
            raise StepInconsistent(f"attachment {a} not present")
    if step.kind == "II":
        if step.split_edge is None:
            raise StepInconsistent("type II step without split edge")
        a, b = step.split_edge
        if a not in step.attach or b not in step.attach:
            raise StepInconsistent("split edge endpoints must be attachments")
        if a not in rot or b not in rot.get(a, ()):
            raise StepInconsistent(f"split edge {a}-{b} absent")
        rot[a].remove(b)
        rot[b].remove(a)
    for a, pred in zip(step.attach, step.slots):
        if pred not in rot[a]:
            raise StepInconsistent(f"slot neighbour {pred} not adjacent to {a}")
    for a, pred in zip(step.attach, step.slots):
        _insert_after(rot, a, pred, v)
    rot[v] = list(step.rotation)


def iter_rotations(seq: HennebergSequence) -> Iterator[Rotations]:
    """Yield the rotation system after the base and after every step."""
    rot: Rotations = {v: list(r) for v, r in seq.base_rotations}
    yield {v: list(r) for v, r in rot.items()}
    for step in seq.steps:
        apply_step(rot, step)
        yield {v: list(r) for v, r in rot.items()}


def replay(seq: HennebergSequence, validate: bool = True) -> PlaneGraph:
    """Run a sequence forward; every intermediate graph is checked plane and tight."""
    rot: Rotations = {v: list(r) for v, r in seq.base_rotations}
    check = is_laman_plus_one if seq.plus_one else is_laman

    def _validate() -> None:
        if not _is_plane(rot):
            raise StepInconsistent("intermediate graph is not plane")
        if not check(_relabelled(rot)):
            raise StepInconsistent("intermediate graph violates the counts")

    if validate:
        _validate()
    for step in seq.steps:
        apply_step(rot, step)
        if validate:
            _validate()
    if len(rot) != seq.n:
        raise StepInconsistent(f"sequence builds {len(rot)} vertices, expected {seq.n}")
    try:
        return to_plane_graph(rot, seq.n, seq.outer_dart)
    except KeyError as exc:
        raise StepInconsistent(f"outer dart {seq.outer_dart} missing") from exc


def intermediate_graphs(seq: HennebergSequence) -> Iterator[PlaneGraph]:
    """Plane graphs after the base and each step (absent ids have empty rotations).

    The outer face of each intermediate graph is tracked backwards from the
    final one, so a graph containing the final outer dart keeps it.
    """
    rots = list(iter_rotations(seq))
    outer = seq.outer_dart
    darts: list[Dart] = [outer] * len(rots)
    for i in range(len(rots) - 1, 0, -1):
        step = seq.steps[i - 1]
        outer = _outer_dart_avoiding(rots[i], outer, step.vertex)
        darts[i - 1] = outer
    for rot, d in zip(rots, darts):
        yield to_plane_graph(rot, seq.n, d)


# -- outer face reduction ----------------------------------------------------------


def augment_outer_triangle(g: PlaneGraph, force: bool = False) -> tuple[PlaneGraph, dict[int, int]]:
    """Enclose ``g`` in a new triangle joined to three outer vertices.

    Returns the new graph and the map from new ids to original ids.  A graph
    whose outer face is already a triangle is returned unchanged unless
    ``force`` is set.
    """
    walk = g.outer_walk()
    identity = {v: v for v in g.vertices}
    if len(walk) < 3:
        raise OuterFaceTooSmall("outer face has fewer than three vertices")
    if len(walk) == 3 and len(set(walk)) == 3 and not force:
        return g, identity
    ccw = list(reversed(walk))
    h = len(ccw)
    picks = [0, h // 3, (2 * h) // 3]
    xs = [ccw[i] for i in picks]
    if len(set(xs)) < 3:
        distinct = list(dict.fromkeys(ccw))
        if len(distinct) < 3:
            raise OuterFaceTooSmall("outer face has fewer than three distinct vertices")
        xs = distinct[:3]
    n = g.n
    a, b, c = n, n + 1, n + 2
    rot = {v: list(g.rotations[v]) for v in range(n)}
    for x, new in zip(xs, (a, b, c)):
        # new edge enters the outer angle at x: after x's successor on the cw outer walk
        i = walk.index(x)
        succ = walk[(i + 1) % h]
        _insert_after(rot, x, succ, new)
    rot[a] = [b, xs[0], c]
    rot[b] = [c, xs[1], a]
    rot[c] = [a, xs[2], b]
    new_graph = to_plane_graph(rot, n + 3)
    new_graph = new_graph.with_outer_face(match_outer_face(new_graph, [a, b, c]))
    return new_graph, identity


def outer_triangle(g: PlaneGraph) -> tuple[int, int, int]:
    w = g.outer_walk()
    if len(w) != 3:
        raise PrescriptionInvalid("outer face is not a triangle")
    return tuple(reversed(w))  # type: ignore[return-value]


def rigid_component_check(rot_before: Rotations, step: HennebergStep) -> bool:
    """For a type II step, the split edge's endpoints lie in distinct rigid components
    of the graph without the new vertex and without the split edge."""
    from .rigidity import rigid_components

    if step.kind != "II":
        return True
    a, b = step.split_edge  # type: ignore[misc]
    reduced = {u: [w for w in r if not {u, w} == {a, b}] for u, r in rot_before.items()}
    index = {x: i for i, x in enumerate(sorted(reduced))}
    n, edges = _relabelled(reduced)
    comps = rigid_components((n, edges))
    return not any(index[a] in c.vertices and index[b] in c.vertices for c in comps)


__all__ = [
    "HennebergStep",
    "HennebergSequence",
    "augment_outer_triangle",
    "reverse_sequence",
    "reverse_sequence_plus_one",
    "replay",
    "apply_step",
    "iter_rotations",
    "intermediate_graphs",
    "outer_triangle",
    "rigid_component_check",
    "classify",
]
