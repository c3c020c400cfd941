"""Stretching a combinatorial pseudo-triangulation with directed Tutte embeddings.

Each interior face is dissected into triangles by diagonals from vertices
with big angles to the opposite corner.  Every interior vertex then gets
out-edges (pointed: its two extreme edges plus the diagonal through its
big angle; non-pointed: all its graph neighbours) and is placed at a
positive weighted average of its out-neighbours, with the outer face
pinned to a convex polygon.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from .cpt import CptLabeling, validate_cpt
from .errors import LabelMismatch, NotThreeConnected, RepeatedBoundaryVertex, SolverFailure
from .plane_graph import PlaneGraph
from .predicates import ccw_angle_exceeds_pi, direction_key, exact
from .verify_geom import Embedding, convex_position, geometric_report

log = logging.getLogger(__name__)

DENSE_FALLBACK_LIMIT = 2000


@dataclass(frozen=True)
class StretchConfig:
    weights: str = "unit"  # or "random"
    seed: int = 0
    tolerance: float = 1e-10
    retries: int = 5
    check_connectivity: bool = True
    verify: bool = True


@dataclass(frozen=True, eq=False)
class AuxDigraph:
    graph: PlaneGraph  # the triangulated graph D
    base: PlaneGraph
    labeling: CptLabeling
    boundary: tuple[int, ...]  # outer vertices in ccw order
    out: Mapping[int, tuple[int, ...]]
    weights: Mapping[tuple[int, int], float]
    diagonals: tuple[tuple[int, int], ...]
    splitter: Mapping[int, int] = field(default_factory=dict)  # pointed vertex -> diagonal target

    @property
    def interior(self) -> list[int]:
        bset = set(self.boundary)
        return [v for v in self.graph.vertices if v not in bset]

    def directed_edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in sorted(self.out) for j in self.out[i]]


# -- construction -------------------------------------------------------------------


def _dissect_face(
    walk: list[int], small: list[bool], rot: dict[int, list[int]], adj: dict[int, set[int]],
    diagonals: list[tuple[int, int]], splitter: dict[int, int],
) -> None:
    stack = [(walk, small)]
    while stack:
        w, sm = stack.pop()
        k = len(w)
        if k <= 3:
            continue
        corners = [i for i in range(k) if sm[i]]
        if len(corners) != 3:
            raise SolverFailure(f"face {w} has {len(corners)} corners")
        bigs = sorted((i for i in range(k) if not sm[i]), key=lambda i: (w[i], i))
        chosen = None
        for i in bigs:
            # the corner not bounding the side chain of position i
            after = min(corners, key=lambda c: (c - i) % k)
            before = min(corners, key=lambda c: (i - c) % k)
            t = next(c for c in corners if c not in (after, before))
            if w[t] != w[i] and w[t] not in adj[w[i]]:
                chosen = (i, t)
                break
        if chosen is None:
            raise SolverFailure(f"every dissecting diagonal of face {w} duplicates an edge")
        i, t = chosen
        v, c = w[i], w[t]
        # insert the diagonal into the wedges at both ends
        rot[v].insert(rot[v].index(w[(i + 1) % k]) + 1, c)
        rot[c].insert(rot[c].index(w[(t + 1) % k]) + 1, v)
        adj[v].add(c)
        adj[c].add(v)
        diagonals.append((v, c))
        splitter.setdefault(v, c)
        if t > i:
            a_idx = list(range(i, t + 1))
            b_idx = list(range(t, k)) + list(range(0, i + 1))
        else:
            a_idx = list(range(i, k)) + list(range(0, t + 1))
            b_idx = list(range(t, i + 1))
        for idx in (a_idx, b_idx):
            sub = [w[x] for x in idx]
            flags = [sm[x] for x in idx]
            flags[0] = flags[-1] = True
            stack.append((sub, flags))


def build_aux_digraph(
    g: PlaneGraph, lab: CptLabeling, weights: str = "unit", seed: int = 0
) -> AuxDigraph:
    outer = g.outer_walk()
    if len(set(outer)) != len(outer):
        raise RepeatedBoundaryVertex("the outer boundary repeats a vertex")
    boundary = tuple(g.outer_cycle_ccw())
    rot = {v: list(g.rotations[v]) for v in g.vertices}
    adj = {v: set(g.rotations[v]) for v in g.vertices}
    diagonals: list[tuple[int, int]] = []
    splitter: dict[int, int] = {}
    for f in g.interior_faces():
        w = list(g.faces[f])
        small = [not lab.is_big(g.angle(f, i)) for i in range(len(w))]
        _dissect_face(w, small, rot, adj, diagonals, splitter)
    d = PlaneGraph([rot.get(v, []) for v in range(g.n)], boundary_dart(g))
    bset = set(boundary)
    out: dict[int, tuple[int, ...]] = {}
    for v in g.vertices:
        if v in bset:
            continue
        big = lab.big_angles(v)
        if big:
            a = big[0]
            out[v] = (a.next, a.prev, splitter[v])
        else:
            out[v] = tuple(g.rotations[v])
    rng = random.Random(seed)
    wts = {}
    for i in sorted(out):
        for j in out[i]:
            wts[(i, j)] = 1.0 if weights == "unit" else rng.uniform(0.5, 1.5)
    return AuxDigraph(d, g, lab, boundary, out, wts, tuple(diagonals), splitter)


def boundary_dart(g: PlaneGraph) -> tuple[int, int]:
    return g.face_darts(g.outer_face)[0]


# -- connectivity to the boundary ------------------------------------------------------


@dataclass(frozen=True)
class ConnectivityResult:
    ok: bool
    vertex: int | None = None
    cut: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


_SINK = -1


def _split_network(aux: AuxDigraph) -> dict[int, list[int]]:
    """Arcs of the vertex-split network, ``in(v) = 2v`` and ``out(v) = 2v + 1``.

    Out-arcs are ordered so that the one closest to the boundary comes last;
    a depth-first search then walks greedily towards the boundary.
    """
    dist = {b: 0 for b in aux.boundary}
    into: dict[int, list[int]] = {}
    for i, js in aux.out.items():
        for j in js:
            into.setdefault(j, []).append(i)
    queue = list(aux.boundary)
    for u in queue:
        for i in into.get(u, ()):
            if i not in dist:
                dist[i] = dist[u] + 1
                queue.append(i)
    far = len(aux.graph.vertices) + 1
    arcs: dict[int, list[int]] = {}
    for v in aux.graph.vertices:
        arcs[2 * v] = [2 * v + 1]
        if v in aux.out:
            ordered = sorted(aux.out[v], key=lambda j: -dist.get(j, far))
            arcs[2 * v + 1] = [2 * j for j in ordered]
        else:
            arcs[2 * v + 1] = [_SINK]  # boundary vertex
    return arcs


def _boundary_flow(arcs: dict[int, list[int]], v: int, need: int = 3) -> tuple[int, set[int]]:
    """Vertex-disjoint paths from ``v`` to the boundary, up to ``need``.

    Unit-capacity augmenting paths found by depth-first search; returns the
    flow value and the residual-reachable node set after the last attempt.
    """
    source = 2 * v + 1
    flow: set[tuple[int, int]] = set()
    back: dict[int, list[int]] = {}
    value = 0
    while True:
        parent = {source: source}
        stack = [source]
        found = False
        while stack and not found:
            x = stack.pop()
            for y in back.get(x, ()):
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
            for y in arcs[x]:
                if (x, y) in flow:
                    continue
                if y == _SINK:
                    parent[_SINK] = x
                    found = True
                    break
                if y not in parent:
                    parent[y] = x
                    stack.append(y)
        if not found:
            return value, set(parent)
        y = _SINK
        while y != source:
            x = parent[y]
            if (y, x) in flow:
                flow.discard((y, x))
                back[x].remove(y)
            else:
                flow.add((x, y))
                back.setdefault(y, []).append(x)
            y = x
        value += 1
        if value >= need:
            return value, set()


def _cut_vertices(arcs: dict[int, list[int]], reached: set[int], v: int) -> tuple[int, ...]:
    """Vertices whose arcs leave the reachable side; an arc into ``in(j)`` or the sink blames ``j``."""
    cut = set()
    for x in reached:
        for y in arcs[x]:
            if y not in reached:
                cut.add(x // 2 if y == _SINK else y // 2)
    return tuple(sorted(cut - {v}))


def check_boundary_3connectivity(aux: AuxDigraph) -> ConnectivityResult:
    """Every interior vertex reaches three distinct boundary vertices by vertex-disjoint directed paths."""
    bset = set(aux.boundary)
    arcs = _split_network(aux)
    for v in aux.interior:
        if sum(1 for j in aux.out.get(v, ()) if j in bset) >= 3:
            continue
        value, reached = _boundary_flow(arcs, v)
        if value < 3:
            return ConnectivityResult(False, v, _cut_vertices(arcs, reached, v))
    return ConnectivityResult(True)


# -- solving ----------------------------------------------------------------------------


def regular_polygon(k: int) -> list[tuple[float, float]]:
    """Vertices of a regular k-gon on the unit circle, ccw, the first at angle pi/2."""
    return [(math.cos(math.pi / 2 + 2 * math.pi * i / k), math.sin(math.pi / 2 + 2 * math.pi * i / k)) for i in range(k)]


def _system(aux: AuxDigraph, pos: Mapping[int, Sequence], order: Sequence[int]):
    index = {v: i for i, v in enumerate(order)}
    rows, cols, vals = [], [], []
    rhs = np.zeros((len(order), 2))
    for v in order:
        i = index[v]
        diag = 0.0
        for j in aux.out[v]:
            w = aux.weights[(v, j)]
            diag += w
            if j in index:
                rows.append(i)
                cols.append(index[j])
                vals.append(-w)
            else:
                rhs[i, 0] += w * float(pos[j][0])
                rhs[i, 1] += w * float(pos[j][1])
        rows.append(i)
        cols.append(i)
        vals.append(diag)
    mat = sp.csr_matrix((vals, (rows, cols)), shape=(len(order), len(order)))
    return mat, rhs


def _boundary_map(aux: AuxDigraph, boundary_positions) -> dict[int, tuple]:
    if boundary_positions is None:
        boundary_positions = regular_polygon(len(aux.boundary))
    if isinstance(boundary_positions, Mapping):
        pos = dict(boundary_positions)
    else:
        pos = dict(zip(aux.boundary, boundary_positions))
    if set(pos) != set(aux.boundary):
        raise ValueError("boundary positions must cover exactly the outer vertices")
    if not convex_position([pos[b] for b in aux.boundary]):
        raise ValueError("boundary positions must form a strictly convex polygon in ccw order")
    return pos


def equilibrium_residual(aux: AuxDigraph, coords: Sequence[Sequence[float]]) -> float:
    """Max equilibrium defect over interior vertices, after scaling to unit diameter."""
    pts = np.asarray(coords, dtype=float)
    bpts = pts[list(aux.boundary)]
    diam = max(float(np.max(np.linalg.norm(bpts[:, None, :] - bpts[None, :, :], axis=2))), 1e-300)
    worst = 0.0
    for v in aux.interior:
        acc = np.zeros(2)
        for j in aux.out[v]:
            acc += aux.weights[(v, j)] * (pts[v] - pts[j])
        worst = max(worst, float(np.linalg.norm(acc)) / diam)
    return worst


def tutte_embed(
    aux: AuxDigraph,
    boundary_positions=None,
    *,
    exact_arithmetic: bool = False,
    tolerance: float = 1e-10,
    check: bool = True,
    order: Sequence[int] | None = None,
) -> Embedding:
    """Unique equilibrium placement of the interior vertices."""
    if check:
        res = check_boundary_3connectivity(aux)
        if not res:
            raise NotThreeConnected(
                f"vertex {res.vertex} is separated from the boundary by {list(res.cut)}", res.vertex, res.cut
            )
    pos = _boundary_map(aux, boundary_positions)
    inner = list(order) if order is not None else aux.interior
    n = aux.graph.n
    if exact_arithmetic:
        sol = _exact_solve(aux, pos, inner)
        coords = [pos[v] if v in pos else sol.get(v, (0, 0)) for v in range(n)]
        return Embedding(tuple((exact(x), exact(y)) for x, y in coords), "tutte")
    coords_arr = np.zeros((n, 2))
    for v, p in pos.items():
        coords_arr[v] = (float(p[0]), float(p[1]))
    if inner:
        mat, rhs = _system(aux, pos, inner)
        x = _solve(mat, rhs)
        coords_arr[inner] = x
    resid = equilibrium_residual(aux, coords_arr)
    if not np.all(np.isfinite(coords_arr)) or resid > tolerance:
        raise SolverFailure(f"equilibrium residual {resid:.3e} exceeds {tolerance:.1e}")
    # boundary points are kept exactly as given
    coords = [tuple(pos[v]) if v in pos else (float(coords_arr[v, 0]), float(coords_arr[v, 1])) for v in range(n)]
    return Embedding(tuple(coords), "tutte")


def _solve(mat: sp.csr_matrix, rhs: np.ndarray) -> np.ndarray:
    try:
        x = spsolve(mat.tocsc(), rhs)
        x = np.asarray(x).reshape(rhs.shape)
        if np.all(np.isfinite(x)):
            return x
    except Exception as exc:  # pragma: no cover - depends on the backend
        log.warning("sparse solve failed: %s", exc)
    if mat.shape[0] > DENSE_FALLBACK_LIMIT:
        raise SolverFailure("sparse solve failed and the system is too large for the dense fallback")
    try:
        return np.linalg.solve(mat.toarray(), rhs)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(f"singular equilibrium system: {exc}") from exc


def _exact_solve(aux: AuxDigraph, pos: Mapping[int, Sequence], inner: Sequence[int]) -> dict[int, tuple[Fraction, Fraction]]:
    """Gauss-Jordan elimination over the rationals (small systems only)."""
    index = {v: i for i, v in enumerate(inner)}
    k = len(inner)
    rows = []
    for v in inner:
        row = [Fraction(0)] * k + [Fraction(0), Fraction(0)]
        for j in aux.out[v]:
            w = exact(aux.weights[(v, j)])
            row[index[v]] += w
            if j in index:
                row[index[j]] -= w
            else:
                row[k] += w * exact(pos[j][0])
                row[k + 1] += w * exact(pos[j][1])
        rows.append(row)
    for col in range(k):
        piv = next((r for r in range(col, k) if rows[r][col] != 0), None)
        if piv is None:
            raise SolverFailure("singular equilibrium system")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(k):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[col])]
    return {v: (rows[index[v]][k], rows[index[v]][k + 1]) for v in inner}


# -- checks -----------------------------------------------------------------------------


def strictly_inside_out_hull(aux: AuxDigraph, emb: Embedding, v: int) -> bool:
    """``v`` lies strictly inside the convex hull of its out-neighbours (exact)."""
    grid = emb.grid
    px, py = grid[v]
    dirs = [(grid[j][0] - px, grid[j][1] - py) for j in aux.out[v]]
    if any(d == (0, 0) for d in dirs) or len(dirs) < 3:
        return False
    dirs.sort(key=direction_key)
    return all(ccw_angle_exceeds_pi(dirs[i], dirs[(i + 1) % len(dirs)]) < 0 for i in range(len(dirs)))


def face_area_check(aux: AuxDigraph, emb: Embedding) -> tuple[bool, float]:
    """All bounded faces of D positively oriented, areas summing to the boundary polygon's.

    Returns the flag and the relative area discrepancy.
    """
    d = aux.graph
    pts = emb.float_array
    total = 0.0
    positive = True
    from .predicates import orientation

    grid = emb.grid
    for f in d.interior_faces():
        w = d.faces[f]
        xs, ys = pts[list(w), 0], pts[list(w), 1]
        total += 0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(np.roll(xs, -1), ys))
        if len(w) == 3:
            positive &= orientation(grid[w[0]], grid[w[1]], grid[w[2]]) > 0
    b = list(aux.boundary)
    xs, ys = pts[b, 0], pts[b, 1]
    poly = 0.5 * float(np.dot(xs, np.roll(ys, -1)) - np.dot(np.roll(xs, -1), ys))
    rel = abs(total - poly) / abs(poly) if poly else float("inf")
    return positive and rel <= 1e-8, rel


@dataclass(frozen=True)
class TutteCheck:
    residual: float
    area_rel_error: float
    faces_positive: bool
    inside_hulls: bool

    def ok(self, tolerance: float = 1e-10) -> bool:
        return self.residual <= tolerance and self.area_rel_error <= 1e-8 and self.faces_positive and self.inside_hulls


def check_tutte(aux: AuxDigraph, emb: Embedding) -> TutteCheck:
    resid = equilibrium_residual(aux, emb.float_array)
    positive, rel = face_area_check(aux, emb)
    inside = all(strictly_inside_out_hull(aux, emb, v) for v in aux.interior)
    return TutteCheck(resid, rel, positive, inside)


# -- the pipeline ------------------------------------------------------------------------


def stretch_cpt(g: PlaneGraph, lab: CptLabeling, config: StretchConfig | None = None, boundary_positions=None) -> Embedding:
    """Straight-line pseudo-triangulation realising the labeling ``lab``."""
    cfg = config or StretchConfig()
    report = validate_cpt(g, lab)
    if not report.ok:
        raise ValueError("labeling is not a valid cpt: " + "; ".join(report.failures))
    mode, seed = cfg.weights, cfg.seed
    last_error: Exception | None = None
    for attempt in range(cfg.retries + 1):
        aux = build_aux_digraph(g, lab, mode, seed + attempt)
        emb = tutte_embed(aux, boundary_positions, tolerance=cfg.tolerance, check=cfg.check_connectivity and attempt == 0)
        if not cfg.verify:
            return emb
        try:
            _verify_stretch(g, lab, emb)
            return emb
        except LabelMismatch as exc:
            # near-degenerate solution: perturb the weights and retry
            last_error = exc
            log.info("stretch attempt %d failed verification: %s", attempt, exc)
            mode = "random"
    assert last_error is not None
    raise last_error


def _verify_stretch(g: PlaneGraph, lab: CptLabeling, emb: Embedding) -> None:
    rep = geometric_report(emb, g)
    if not rep.non_crossing or not rep.rotation_consistent:
        raise LabelMismatch("; ".join(rep.notes) or "embedding is not plane")
    if rep.degenerate_vertices:
        raise LabelMismatch(f"straight angles at {list(rep.degenerate_vertices)}")
    if rep.labeling.big != lab.big:
        diff = sorted(rep.labeling.big ^ lab.big)[:6]
        raise LabelMismatch(f"realised labeling differs at wedges {diff}")
    if not rep.pseudo_triangulation:
        raise LabelMismatch("faces are not all pseudo-triangles")

