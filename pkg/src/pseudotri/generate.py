"""Seeded random plane Laman graphs and plane rigidity circuits.

Graphs are grown forward by Henneberg steps placed in interior faces, so
the outer face stays the base triangle ``0, 1, 2`` (ccw).  Circuits start
from a K4 with vertex 3 in the middle and use edge splits only, which keep
the circuit property.
"""

from __future__ import annotations

import os
import random

from .errors import BadSize
from .henneberg import HennebergSequence, HennebergStep, replay
from .plane_graph import PlaneGraph

P_VERTEX_ADDITION = 0.6


def resolve_seed(seed: int) -> int:
    env = os.environ.get("PSEUDOTRI_SEED")
    return int(env) if env not in (None, "") else seed


class _Builder:
    def __init__(self, rot: dict[int, list[int]], faces: list[list[int]]):
        self.rot = rot
        self.faces = faces  # interior faces only, ccw walks
        self.steps: list[HennebergStep] = []

    def _slot(self, walk: list[int], i: int) -> int:
        # the angle at walk[i] starts at walk[i + 1]
        return walk[(i + 1) % len(walk)]

    def vertex_addition(self, rng: random.Random) -> None:
        v = len(self.rot)
        fi = rng.randrange(len(self.faces))
        w = self.faces[fi]
        i, j = sorted(rng.sample(range(len(w)), 2))
        a, b = w[i], w[j]
        slots = (self._slot(w, i), self._slot(w, j))
        step = HennebergStep("I", v, (a, b), (a, b), slots, None, tuple(w[i:] + w[:i]), False)
        self.rot[a].insert(self.rot[a].index(slots[0]) + 1, v)
        self.rot[b].insert(self.rot[b].index(slots[1]) + 1, v)
        self.rot[v] = [a, b]
        self.faces[fi] = w[i : j + 1] + [v]
        self.faces.append(w[j:] + w[: i + 1] + [v])
        self.steps.append(step)

    def _interior_edges(self) -> list[tuple[int, int, int, int]]:
        """(u, w, face left of u->w, face left of w->u) for edges between interior faces."""
        owner: dict[tuple[int, int], int] = {}
        for fi, w in enumerate(self.faces):
            for k in range(len(w)):
                owner[(w[k], w[(k + 1) % len(w)])] = fi
        out = []
        for (u, w), f1 in owner.items():
            if u < w and (w, u) in owner:
                out.append((u, w, f1, owner[(w, u)]))
        out.sort()
        return out

    def edge_split(self, rng: random.Random) -> bool:
        candidates = self._interior_edges()
        if not candidates:
            return False
        u, w, f1, f2 = candidates[rng.randrange(len(candidates))]
        F1, F2 = self.faces[f1], self.faces[f2]
        i = F1.index(u)
        F1 = F1[i:] + F1[:i]  # u, w, a1 .. ak
        i = F2.index(w)
        F2 = F2[i:] + F2[:i]  # w, u, b1 .. bl
        a_side, b_side = F1[2:], F2[2:]
        side = a_side + b_side
        c = side[rng.randrange(len(side))]
        v = len(self.rot)
        # v takes the place of the removed edge at u and at w
        ru, rw = self.rot[u], self.rot[w]
        ru[ru.index(w)] = v
        rw[rw.index(u)] = v
        if c in a_side:
            t = a_side.index(c)
            walk = [w] + a_side + [u]
            pos = 1 + t
            new_faces = [[w] + a_side[: t + 1] + [v], a_side[t:] + [u, v], [u] + b_side + [w, v]]
        else:
            t = b_side.index(c)
            walk = [u] + b_side + [w]
            pos = 1 + t
            new_faces = [[u] + b_side[: t + 1] + [v], b_side[t:] + [w, v], [w] + a_side + [u, v]]
        slot_c = walk[pos + 1]
        rc = self.rot[c]
        rc.insert(rc.index(slot_c) + 1, v)
        rotation = (u, w, c) if c in a_side else (w, u, c)
        slots_map = {u: _pred(self.rot, u, v), w: _pred(self.rot, w, v), c: slot_c}
        self.rot[v] = list(rotation)
        merged = [w] + a_side + [u] + b_side
        step = HennebergStep(
            "II", v, rotation, rotation, tuple(slots_map[x] for x in rotation),
            (min(u, w), max(u, w)), tuple(merged), False,
        )
        for fi in sorted((f1, f2), reverse=True):
            del self.faces[fi]
        self.faces.extend(new_faces)
        self.steps.append(step)
        return True


def _pred(rot: dict[int, list[int]], a: int, v: int) -> int:
    r = rot[a]
    return r[(r.index(v) - 1) % len(r)]


def generate_sequence(n: int, seed: int = 0, kind: str = "laman") -> HennebergSequence:
    """Random forward construction with every insertion in an interior face."""
    if kind not in ("laman", "circuit"):
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "laman" and n < 3:
        raise BadSize("a plane Laman graph from a triangle needs n >= 3")
    if kind == "circuit" and n < 4:
        raise BadSize("a plane circuit needs n >= 4")
    rng = random.Random(resolve_seed(seed))
    if kind == "laman":
        rot = {0: [1, 2], 1: [2, 0], 2: [0, 1]}
        faces = [[0, 1, 2]]
    else:
        rot = {0: [1, 3, 2], 1: [2, 3, 0], 2: [0, 3, 1], 3: [0, 1, 2]}
        faces = [[0, 1, 3], [1, 2, 3], [2, 0, 3]]
    base_rot = tuple((v, tuple(r)) for v, r in sorted(rot.items()))
    b = _Builder(rot, faces)
    while len(b.rot) < n:
        if kind == "circuit":
            b.edge_split(rng)
        elif rng.random() < P_VERTEX_ADDITION or not b.edge_split(rng):
            b.vertex_addition(rng)
    return HennebergSequence(
        base=tuple(v for v, _ in base_rot),
        base_rotations=base_rot,
        steps=tuple(b.steps),
        n=n,
        outer_dart=(0, 2),
        plus_one=kind == "circuit",
        meta={"seed": seed, "kind": kind},
    )


def generate_graph(n: int, seed: int = 0, kind: str = "laman") -> PlaneGraph:
    return replay(generate_sequence(n, seed, kind), validate=False)
