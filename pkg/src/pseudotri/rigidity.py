"""Combinatorial rigidity in the plane.

The Laman test is the (2, 3) pebble game: every vertex starts with two
pebbles, and an edge is accepted when four pebbles can be gathered on its
endpoints.  Accepted edges are directed away from the vertex that paid
the pebble, so each vertex always has ``pebbles + out-degree == 2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import NotIndependent

Edge = tuple[int, int]


def _edge_list(graph) -> tuple[int, list[Edge]]:
    """Accept a PlaneGraph or an ``(n, edges)`` pair."""
    if hasattr(graph, "edges") and hasattr(graph, "n"):
        ids = _ids(graph)
        if ids is None:
            return graph.n, [tuple(e) for e in graph.edges]
        # intermediate graphs keep absent ids: count present vertices only
        index = {v: i for i, v in enumerate(ids)}
        return len(ids), [(index[u], index[v]) for u, v in graph.edges]
    n, edges = graph
    return n, [(int(u), int(v)) for u, v in edges]


def _ids(graph) -> list[int] | None:
    """Present vertex ids of a PlaneGraph with gaps, else None."""
    if hasattr(graph, "vertices") and len(graph.vertices) != graph.n:
        return list(graph.vertices)
    return None


class PebbleGame:
    """Incremental (2, 3) pebble game on vertices ``0..n-1``."""

    def __init__(self, n: int):
        self.n = n
        self.pebbles = [2] * n
        self.out: list[set[int]] = [set() for _ in range(n)]
        self.independent: list[Edge] = []
        self.redundant: list[Edge] = []

    def _find_pebble(self, start: int, blocked: tuple[int, ...]) -> list[int] | None:
        """Directed path from ``start`` to a vertex holding a free pebble."""
        parent = {start: None}
        stack = [start]
        while stack:
            u = stack.pop()
            for w in self.out[u]:
                if w in parent or w in blocked:
                    continue
                parent[w] = u
                if self.pebbles[w] > 0:
                    path = [w]
                    while parent[path[-1]] is not None:
                        path.append(parent[path[-1]])
                    return path[::-1]
                stack.append(w)
        return None

    def _reachable(self, roots: Iterable[int]) -> set[int]:
        seen = set(roots)
        stack = list(seen)
        while stack:
            u = stack.pop()
            for w in self.out[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return seen

    def _gather(self, v: int, blocked: tuple[int, ...]) -> bool:
        path = self._find_pebble(v, blocked)
        if path is None:
            return False
        # reverse the path, moving one pebble back to v
        for a, b in zip(path, path[1:]):
            self.out[a].discard(b)
            self.out[b].add(a)
        self.pebbles[path[-1]] -= 1
        self.pebbles[v] += 1
        return True

    def collect(self, u: int, v: int) -> bool:
        """Try to gather two pebbles on each of ``u`` and ``v``."""
        while self.pebbles[u] < 2:
            if not self._gather(u, (v,)):
                return False
        while self.pebbles[v] < 2:
            if not self._gather(v, (u,)):
                return False
        return True

    def add_edge(self, u: int, v: int) -> bool:
        if u == v:
            raise ValueError("self-loop")
        if self.collect(u, v):
            self.pebbles[u] -= 1
            self.out[u].add(v)
            self.independent.append((u, v))
            return True
        self.redundant.append((u, v))
        return False

    def failed_region(self, u: int, v: int) -> set[int]:
        """Vertices reachable from ``u`` and ``v`` after a failed insertion."""
        return self._reachable((u, v))

    def rigid_with(self, u: int, v: int) -> set[int]:
        """All vertices rigidly connected to the accepted edge ``uv``."""
        # the edge itself holds one pebble, so three is the maximum on {u, v}
        for x, y in ((u, v), (v, u)):
            while self.pebbles[x] < 2 and self.pebbles[u] + self.pebbles[v] < 3:
                if not self._gather(x, (y,)):
                    break
        if self.pebbles[u] + self.pebbles[v] != 3:
            raise RuntimeError("could not gather three pebbles on an accepted edge")
        comp = {u, v}
        free = set()
        # a vertex is rigid with uv iff no free pebble is reachable from it
        # while u and v keep their four pebbles
        for w in range(self.n):
            if w in comp or (not self.out[w] and self.pebbles[w] == 2):
                continue
            if w in free:
                continue
            seen = {w}
            stack = [w]
            found = self.pebbles[w] > 0
            while stack and not found:
                x = stack.pop()
                for y in self.out[x]:
                    if y in (u, v) or y in seen:
                        continue
                    if self.pebbles[y] > 0 or y in free:
                        found = True
                        break
                    seen.add(y)
                    stack.append(y)
            if found:
                free.add(w)
            else:
                comp |= seen
        return comp


def pebble_game(graph) -> PebbleGame:
    n, edges = _edge_list(graph)
    game = PebbleGame(n)
    for u, v in edges:
        game.add_edge(u, v)
    return game


def is_laman(graph) -> bool:
    """``m == 2n - 3`` and every k-subset (k >= 2) spans at most ``2k - 3`` edges."""
    n, edges = _edge_list(graph)
    if n < 2 or len(edges) != 2 * n - 3:
        return False
    game = PebbleGame(n)
    for u, v in edges:
        if not game.add_edge(u, v):
            return False
    return True


def is_independent(graph) -> bool:
    return not pebble_game(graph).redundant


def brute_force_is_laman(graph) -> bool:
    """Exponential check of the Laman counts over all vertex subsets (testing oracle)."""
    n, edges = _edge_list(graph)
    if n < 2 or len(edges) != 2 * n - 3:
        return False
    if n > 20:
        raise ValueError("brute force limited to small graphs")
    masks = [(1 << u) | (1 << v) for u, v in edges]
    for s in range(1, 1 << n):
        k = bin(s).count("1")
        if k < 2:
            continue
        spanned = sum(1 for mk in masks if mk & s == mk)
        if spanned > 2 * k - 3:
            return False
    return True


class Rigidity(enum.Enum):
    LAMAN = "Laman"
    LAMAN_PLUS_ONE = "LamanPlusOne"
    CIRCUIT = "Circuit"
    FLEXIBLE = "Flexible"
    OVERBRACED = "Overbraced"


@dataclass(frozen=True)
class RigidityClass:
    kind: Rigidity
    circuit_vertices: frozenset[int] = frozenset()
    circuit_edges: frozenset[Edge] = field(default_factory=frozenset)

    @property
    def is_plus_one(self) -> bool:
        return self.kind in (Rigidity.LAMAN_PLUS_ONE, Rigidity.CIRCUIT)


def _norm(e: Sequence[int]) -> Edge:
    u, v = e
    return (u, v) if u < v else (v, u)


def find_circuit(n: int, edges: list[Edge]) -> tuple[frozenset[int], frozenset[Edge]]:
    """The unique circuit of a graph whose only dependency is one redundant edge."""
    game = PebbleGame(n)
    bad = None
    for u, v in edges:
        if not game.add_edge(u, v):
            bad = (u, v)
            break
    if bad is None:
        return frozenset(), frozenset()
    region = game.failed_region(*bad)
    candidates = [_norm(e) for e in edges if e[0] in region and e[1] in region]
    # inside the tight region, an edge belongs to the circuit iff dropping it
    # leaves an independent set
    index = {v: i for i, v in enumerate(sorted(region))}
    circuit = []
    for f in candidates:
        sub = [(index[a], index[b]) for a, b in candidates if (a, b) != f]
        if is_independent((len(index), sub)):
            circuit.append(f)
    verts = frozenset(x for e in circuit for x in e)
    return verts, frozenset(circuit)


def classify(graph) -> RigidityClass:
    n, edges = _edge_list(graph)
    game = pebble_game((n, edges))
    rank = len(game.independent)
    extra = len(game.redundant)
    if n < 2 or rank < 2 * n - 3:
        return RigidityClass(Rigidity.FLEXIBLE)
    if extra == 0:
        return RigidityClass(Rigidity.LAMAN)
    if extra > 1:
        return RigidityClass(Rigidity.OVERBRACED)
    verts, cedges = find_circuit(n, edges)
    kind = Rigidity.CIRCUIT if len(verts) == n and len(cedges) == len(edges) else Rigidity.LAMAN_PLUS_ONE
    ids = _ids(graph)
    if ids is not None:
        verts = frozenset(ids[v] for v in verts)
        cedges = frozenset(_norm((ids[a], ids[b])) for a, b in cedges)
    return RigidityClass(kind, verts, cedges)


def is_laman_plus_one(graph) -> bool:
    n, edges = _edge_list(graph)
    if len(edges) != 2 * n - 2:
        return False
    game = pebble_game((n, edges))
    return len(game.redundant) == 1


@dataclass(frozen=True)
class RigidComponent:
    vertices: frozenset[int]

    def __len__(self) -> int:
        return len(self.vertices)


def rigid_components(graph) -> list[RigidComponent]:
    """Maximal vertex sets of size k spanning exactly ``2k - 3`` edges.

    Every edge lies in exactly one component; components are sorted by
    their smallest vertex.
    """
    n, edges = _edge_list(graph)
    game = PebbleGame(n)
    for u, v in edges:
        if not game.add_edge(u, v):
            raise NotIndependent(f"edge {u}-{v} is redundant")
    comps: list[frozenset[int]] = []
    covered: set[Edge] = set()
    for u, v in edges:
        if _norm((u, v)) in covered:
            continue
        comp = frozenset(game.rigid_with(u, v))
        comps.append(comp)
        for a, b in edges:
            if a in comp and b in comp:
                covered.add(_norm((a, b)))
    ids = _ids(graph)
    if ids is not None:
        comps = [frozenset(ids[v] for v in c) for c in comps]
    comps.sort(key=lambda c: (min(c), sorted(c)))
    return [RigidComponent(c) for c in comps]


def brute_force_rigid_components(graph) -> list[RigidComponent]:
    """Exhaustive maximal tight subsets (testing oracle, small n)."""
    n, edges = _edge_list(graph)
    tight = []
    for k in range(2, n + 1):
        for sub in combinations(range(n), k):
            s = set(sub)
            if sum(1 for a, b in edges if a in s and b in s) == 2 * k - 3:
                tight.append(frozenset(sub))
    maximal = [t for t in tight if not any(t < o for o in tight)]
    maximal.sort(key=lambda c: (min(c), sorted(c)))
    return [RigidComponent(c) for c in maximal]
