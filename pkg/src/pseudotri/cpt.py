"""Combinatorial pseudo-triangulations (cpt).

A labeling marks some angles *big*; every other angle is *small*.  Angles
are named by wedges ``(vertex, start)`` (see :mod:`pseudotri.plane_graph`),
so a labeling is just the set of big wedges.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import (
    BadEdgeCount,
    NoPerfectMatching,
    NotSimplyConnected,
    NoValidExtension,
    PrescribedVertexOnOuterFace,
    TooLarge,
)
from .henneberg import HennebergStep
from .plane_graph import Angle, PlaneGraph, components, fill_holes, outer_region

Wedge = tuple[int, int]


@dataclass(frozen=True)
class CptLabeling:
    graph: PlaneGraph
    big: frozenset[Wedge]

    @classmethod
    def from_assignment(cls, g: PlaneGraph, face_of: dict[int, int]) -> "CptLabeling":
        """Labeling with the big angle of ``v`` in face ``face_of[v]`` (first occurrence)."""
        big = set()
        for v, f in face_of.items():
            w = g.faces[f]
            i = w.index(v)
            big.add((v, w[(i + 1) % len(w)]))
        return cls(g, frozenset(big))

    def is_big(self, a: Angle) -> bool:
        return (a.vertex, a.next) in self.big

    def big_angles(self, v: int) -> list[Angle]:
        return [a for a in self.graph.vertex_angles(v) if (v, a.next) in self.big]

    def big_face(self, v: int) -> int | None:
        b = self.big_angles(v)
        return b[0].face if b else None

    def is_pointed(self, v: int) -> bool:
        return bool(self.big_angles(v))

    @property
    def non_pointed(self) -> list[int]:
        return [v for v in self.graph.vertices if not self.is_pointed(v)]

    def corners(self, f: int) -> list[int]:
        """Vertices at the small angles of face ``f`` in walk order."""
        g = self.graph
        return [a.vertex for a in (g.angle(f, i) for i in range(len(g.faces[f]))) if not self.is_big(a)]

    def labels(self) -> list[tuple[int, int, bool]]:
        """``(vertex, face, big)`` for every angle, in face/walk order."""
        return [(a.vertex, a.face, self.is_big(a)) for a in self.graph.angles()]

    def canonical(self) -> frozenset[tuple[int, int]]:
        """Pairs ``(vertex, face)`` of big angles."""
        return frozenset((v, self.graph.dart_face(v, s)[0]) for v, s in self.big)

    @classmethod
    def from_labels(cls, g: PlaneGraph, labels: Iterable[tuple[int, int, bool]]) -> "CptLabeling":
        """Inverse of :meth:`labels`; angles are matched by face and walk occurrence."""
        big = set()
        seen: dict[tuple[int, int], int] = {}
        for v, f, flag in labels:
            occ = seen.get((v, f), 0)
            seen[(v, f)] = occ + 1
            w = g.faces[f]
            positions = [i for i, x in enumerate(w) if x == v]
            if occ >= len(positions):
                raise ValueError(f"vertex {v} does not occur {occ + 1} times on face {f}")
            i = positions[occ]
            if flag:
                big.add((v, w[(i + 1) % len(w)]))
        return cls(g, frozenset(big))


# -- validation ------------------------------------------------------------------


@dataclass(frozen=True)
class CptReport:
    interior_three_small: bool
    outer_all_big: bool
    at_most_one_big: bool
    low_degree_pointed: bool
    non_pointed_count: int
    expected_non_pointed: int
    failures: tuple[str, ...] = field(default=())

    @property
    def count_ok(self) -> bool:
        return self.non_pointed_count == self.expected_non_pointed

    @property
    def ok(self) -> bool:
        return (
            self.interior_three_small
            and self.outer_all_big
            and self.at_most_one_big
            and self.low_degree_pointed
            and self.count_ok
        )

    def __bool__(self) -> bool:
        return self.ok


def validate_cpt(g: PlaneGraph, lab: CptLabeling) -> CptReport:
    failures = []
    big_count = {v: 0 for v in g.vertices}
    for v, s in lab.big:
        if v not in big_count or s not in g.rotations[v]:
            failures.append(f"big wedge ({v}, {s}) is not an angle of the graph")
            continue
        big_count[v] += 1
    i_ok = True
    o_ok = True
    for f, w in enumerate(g.faces):
        small = sum(1 for i in range(len(w)) if not lab.is_big(g.angle(f, i)))
        if f == g.outer_face:
            if small:
                o_ok = False
                failures.append(f"outer face has {small} small angles")
        elif small != 3:
            i_ok = False
            failures.append(f"face {f} has {small} small angles")
    iii = all(c <= 1 for c in big_count.values())
    if not iii:
        failures.append("vertices with several big angles: " + str([v for v, c in big_count.items() if c > 1]))
    # a degree-1 vertex has a single angle, which counts as big
    iv = all(big_count[v] == 1 for v in g.vertices if g.degree(v) <= 2)
    if not iv:
        failures.append("vertex of degree <= 2 without exactly one big angle")
    non_pointed = sum(1 for c in big_count.values() if c == 0)
    expected = g.m - (2 * g.order - 3)
    return CptReport(i_ok, o_ok, iii, iv, non_pointed, expected, tuple(failures))


def is_valid_cpt(g: PlaneGraph, lab: CptLabeling) -> bool:
    return validate_cpt(g, lab).ok


# -- matching ----------------------------------------------------------------------


@dataclass(frozen=True)
class MatchingGraph:
    left: tuple[int, ...]  # graph vertices
    right: tuple[tuple[int, int], ...]  # (face, copy)
    adjacency: tuple[tuple[int, ...], ...]  # per left node, indices into ``right``

    def capacity(self, f: int) -> int:
        return sum(1 for g, _ in self.right if g == f)


def face_capacity(g: PlaneGraph, f: int) -> int:
    d = len(g.faces[f])
    return d if f == g.outer_face else d - 3


def build_matching_graph(g: PlaneGraph, prescribed_nonpointed: int | None = None) -> MatchingGraph:
    n, m = g.order, g.m
    if prescribed_nonpointed is None:
        if m != 2 * n - 3:
            raise BadEdgeCount(f"need m = 2n - 3 = {2 * n - 3}, got {m}")
    else:
        if m != 2 * n - 2:
            raise BadEdgeCount(f"prescribing a non-pointed vertex needs m = 2n - 2 = {2 * n - 2}, got {m}")
        if prescribed_nonpointed not in g.vertices:
            raise ValueError(f"vertex {prescribed_nonpointed} not in graph")
        if prescribed_nonpointed in g.outer_vertices():
            raise PrescribedVertexOnOuterFace(f"vertex {prescribed_nonpointed} lies on the outer face")
    right = []
    first: dict[int, int] = {}
    for f in range(len(g.faces)):
        first[f] = len(right)
        right.extend((f, c) for c in range(face_capacity(g, f)))
    left = tuple(v for v in g.vertices if v != prescribed_nonpointed)
    adjacency = []
    for v in left:
        faces = sorted(set(g.faces_around(v)))
        adjacency.append(tuple(first[f] + c for f in faces for c in range(face_capacity(g, f))))
    return MatchingGraph(left, tuple(right), tuple(adjacency))


def maximum_matching(H: MatchingGraph) -> dict[int, int]:
    """Maximum matching of ``H`` as ``{left index: right index}`` (Hopcroft-Karp via scipy)."""
    if not H.left or not H.right:
        return {}
    rows, cols = [], []
    for i, adj in enumerate(H.adjacency):
        rows.extend([i] * len(adj))
        cols.extend(adj)
    mat = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(len(H.left), len(H.right)))
    match = maximum_bipartite_matching(mat, perm_type="column")
    return {i: int(j) for i, j in enumerate(match) if j >= 0}


def assign_cpt(g: PlaneGraph, prescribed_nonpointed: int | None = None) -> CptLabeling:
    """A cpt from a perfect matching of the vertex/face-copy bipartite graph."""
    H = build_matching_graph(g, prescribed_nonpointed)
    if len(H.left) != len(H.right):
        raise NoPerfectMatching(f"|V| = {len(H.left)} but |W| = {len(H.right)}")
    match = maximum_matching(H)
    if len(match) != len(H.left):
        unmatched = [H.left[i] for i in range(len(H.left)) if i not in match]
        raise NoPerfectMatching(f"maximum matching misses vertices {unmatched}")
    face_of = {H.left[i]: H.right[j][0] for i, j in match.items()}
    return CptLabeling.from_assignment(g, face_of)


def iter_perfect_matchings(H: MatchingGraph) -> Iterator[dict[int, int]]:
    """Every perfect matching of ``H`` (exponential; for small graphs)."""
    if len(H.left) != len(H.right):
        return
    order = sorted(range(len(H.left)), key=lambda i: len(H.adjacency[i]))
    used: set[int] = set()
    cur: dict[int, int] = {}

    def rec(k: int) -> Iterator[dict[int, int]]:
        if k == len(order):
            yield dict(cur)
            return
        i = order[k]
        for j in H.adjacency[i]:
            if j not in used:
                used.add(j)
                cur[i] = j
                yield from rec(k + 1)
                used.discard(j)
                del cur[i]

    yield from rec(0)


def matching_labelings(g: PlaneGraph, prescribed_nonpointed: int | None = None) -> set[frozenset[tuple[int, int]]]:
    """Canonical labelings coming from perfect matchings (copies of a face are interchangeable)."""
    H = build_matching_graph(g, prescribed_nonpointed)
    return {
        frozenset((H.left[i], H.right[j][0]) for i, j in m.items()) for m in iter_perfect_matchings(H)
    }


def iter_cpt_labelings(g: PlaneGraph) -> Iterator[CptLabeling]:
    """Every valid cpt of ``g`` by exhaustive search over big-angle choices.

    Branches are pruned as soon as a face has more big angles than axiom
    (i) or (ii) allows; every yielded labeling is re-checked in full.
    """
    verts = list(g.vertices)
    room = [len(w) if f == g.outer_face else len(w) - 3 for f, w in enumerate(g.faces)]
    pick: list[Wedge | None] = []

    def rec(i: int) -> Iterator[CptLabeling]:
        if i == len(verts):
            lab = CptLabeling(g, frozenset(w for w in pick if w is not None))
            r = validate_cpt(g, lab)
            if r.interior_three_small and r.outer_all_big:
                yield lab
            return
        v = verts[i]
        opts: list[Wedge | None] = [(v, s) for s in g.rotations[v]]
        if g.degree(v) > 2:
            opts.append(None)
        for w in opts:
            f = g.dart_face(*w)[0] if w is not None else None
            if f is not None:
                if room[f] == 0:
                    continue
                room[f] -= 1
            pick.append(w)
            yield from rec(i + 1)
            pick.pop()
            if f is not None:
                room[f] += 1

    yield from rec(0)


# -- corners of induced subgraphs ------------------------------------------------


@dataclass(frozen=True)
class SubgraphCornerStats:
    m: int
    k: int
    l: int
    b: int
    b0: int
    c1: int
    c2: int
    c1_formula: int

    @property
    def corners(self) -> int:
        return self.c1 + self.c2


def _subgraph_corners(g: PlaneGraph, lab: CptLabeling, s: frozenset[int]) -> tuple[int, int, set[int]]:
    edges = {(u, v) for u, v in g.edges if u in s and v in s}
    region = outer_region(g, edges)
    c1 = c2 = 0
    for v in s:
        if not any(f in region for f in g.faces_around(v)):
            continue
        if lab.is_pointed(v):
            if lab.big_face(v) in region:
                c1 += 1
            continue
        # two consecutive small G-angles inside one outer wedge of G_S
        rot = g.rotations[v]
        d = len(rot)
        run = 0
        best = 0
        inside = [u in s for u in rot]
        if any(inside):
            start = inside.index(True)
            for t in range(1, d + 1):
                u = rot[(start + t) % d]
                prev = rot[(start + t - 1) % d]
                if g.dart_face(v, prev)[0] in region:
                    run += 1
                    best = max(best, run)
                if u in s:
                    run = 0
        else:
            best = d
        if best >= 2:
            c2 += 1
    return c1, c2, region


def corner_stats(g: PlaneGraph, lab: CptLabeling, s: Iterable[int]) -> SubgraphCornerStats:
    """Corner counts of the induced subgraph on ``s``, counted directly and by formula."""
    from .plane_graph import induced_boundary_cycles

    s = frozenset(s)
    if len(components(g, s)) != 1 or fill_holes(g, s) != s:
        raise NotSimplyConnected("subset must induce a connected subgraph without holes")
    m = sum(1 for u, v in g.edges if u in s and v in s)
    k = sum(1 for v in s if lab.is_pointed(v))
    l = len(s) - k
    (cyc,) = induced_boundary_cycles(g, s)
    b, b0 = (cyc.b, cyc.b0) if len(s) > 1 else (0, 1)
    c1, c2, _ = _subgraph_corners(g, lab, s)
    return SubgraphCornerStats(m, k, l, b, b0, c1, c2, m + 3 - 2 * k - 3 * l + b)


def connected_subsets(g: PlaneGraph, min_size: int = 1) -> Iterator[frozenset[int]]:
    """Every vertex set inducing a connected subgraph (each reported once)."""
    verts = sorted(g.vertices)
    adj = {v: set(g.rotations[v]) for v in verts}

    def grow(cur: frozenset[int], frontier: frozenset[int], banned: frozenset[int]) -> Iterator[frozenset[int]]:
        if len(cur) >= min_size:
            yield cur
        banned = set(banned)
        for u in sorted(frontier):
            nf = (frontier | adj[u]) - cur - {u} - banned
            yield from grow(cur | {u}, frozenset(nf), frozenset(banned))
            banned.add(u)

    for i, v in enumerate(verts):
        banned = frozenset(verts[:i])
        yield from grow(frozenset({v}), frozenset(adj[v] - banned), banned)


def subgraph_corner_count(g: PlaneGraph, lab: CptLabeling, s: Iterable[int]) -> int:
    c1, c2, _ = _subgraph_corners(g, lab, frozenset(s))
    return c1 + c2


def check_all_subgraph_corners(g: PlaneGraph, lab: CptLabeling, n_limit: int = 12) -> bool:
    """Every connected induced subgraph on at least three vertices has at least three corners.

    Subsets are hole-filled first; filling never changes the number of corners.
    """
    if g.order > n_limit:
        raise TooLarge(f"{g.order} vertices exceeds the limit of {n_limit}")
    return find_weak_subgraph(g, lab) is None


def find_weak_subgraph(g: PlaneGraph, lab: CptLabeling) -> frozenset[int] | None:
    """A connected, hole-filled subset of >= 3 vertices with fewer than 3 corners, if any."""
    seen: set[frozenset[int]] = set()
    for s in connected_subsets(g, 3):
        t = fill_holes(g, s)
        if t in seen:
            continue
        seen.add(t)
        if subgraph_corner_count(g, lab, t) < 3:
            return t
    return None


# -- extension along a Henneberg step ------------------------------------------


def base_labeling(g: PlaneGraph) -> CptLabeling:
    """Labeling of a base graph (edge, triangle or K4): outer angles big, K4 centre non-pointed."""
    outer = set(g.outer_walk())
    big = set()
    for f, i in ((g.outer_face, i) for i in range(len(g.outer_walk()))):
        a = g.angle(f, i)
        big.add((a.vertex, a.next))
    lab = CptLabeling(g, frozenset(big))
    if not is_valid_cpt(g, lab):
        raise NoValidExtension(f"no base labeling for outer face {sorted(outer)}")
    return lab


def extend_cpt_step(lab: CptLabeling, step: HennebergStep, new_graph: PlaneGraph) -> CptLabeling:
    """Labeling of ``new_graph`` (the result of ``step``) extending ``lab``.

    Labels of untouched angles are kept; split angles follow the insertion
    rules and merged angles are big if either part was.  Among the valid
    extensions the lexicographically first on (vertex, face, big) is chosen.
    """
    old = lab.graph
    v = step.vertex
    keep = {w for w in lab.big if w[0] not in step.attach}
    options: list[list[Wedge | None]] = []
    for a, pred in zip(step.attach, step.slots):
        cur = next((w for w in lab.big if w[0] == a), None)
        if step.kind == "II" and a in step.split_edge:  # type: ignore[operator]
            other = step.split_edge[0] if step.split_edge[1] == a else step.split_edge[1]  # type: ignore[index]
            # merge the two wedges around the removed edge
            if cur is not None and cur[1] == other:
                cur = (a, old.pred(a, other))
        if cur is None:
            options.append([None])
        elif cur[1] == pred:
            # v lands inside this wedge: either part may stay big
            options.append([(a, pred), (a, v)])
        else:
            options.append([cur])
    options.append([(v, u) for u in step.rotation])
    found = []
    for pick in product(*options):
        cand = CptLabeling(new_graph, frozenset(keep | {w for w in pick if w is not None}))
        if is_valid_cpt(new_graph, cand):
            key = tuple(
                sorted((w[0], new_graph.dart_face(*w)[0], True) for w in pick if w is not None)
            )
            found.append((key, cand))
    if not found:
        raise NoValidExtension(f"no valid labeling after inserting vertex {v}")
    found.sort(key=lambda t: t[0])
    return found[0][1]


def labelings_along(seq, graphs: list[PlaneGraph] | None = None) -> list[CptLabeling]:
    """Labeling of every prefix of a Henneberg sequence, extended step by step."""
    from .henneberg import intermediate_graphs

    gs = graphs if graphs is not None else list(intermediate_graphs(seq))
    labs = [base_labeling(gs[0])]
    for step, g in zip(seq.steps, gs[1:]):
        labs.append(extend_cpt_step(labs[-1], step, g))
    return labs
