"""Exact geometric predicates over rationals.

Floats are converted exactly (every double is a dyadic rational), so the
predicates never round.  Bulk routines rescale a point set onto a common
integer grid first, which keeps the inner loops on plain Python ints.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cmp_to_key
from math import lcm
from typing import Iterable, Sequence, Union

Number = Union[int, float, Fraction, str]
Point = tuple[Fraction, Fraction]

LEFT = 1
RIGHT = -1
COLLINEAR = 0


def exact(x: Number) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(*x.as_integer_ratio())
    return Fraction(x)


def exact_point(p: Sequence[Number]) -> Point:
    return (exact(p[0]), exact(p[1]))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def orientation(p, q, r) -> int:
    """Sign of the determinant |q - p, r - p|: +1 left turn, -1 right, 0 collinear."""
    px, py = p
    return _sign((q[0] - px) * (r[1] - py) - (q[1] - py) * (r[0] - px))


def cross(u, v):
    return u[0] * v[1] - u[1] * v[0]


def direction_half(d) -> int:
    """0 for directions in [0, pi), 1 for [pi, 2 pi)."""
    dx, dy = d
    return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1


def compare_directions(u, v) -> int:
    """Compare two nonzero direction vectors by polar angle in [0, 2 pi)."""
    hu, hv = direction_half(u), direction_half(v)
    if hu != hv:
        return -1 if hu < hv else 1
    return -_sign(cross(u, v))


direction_key = cmp_to_key(compare_directions)


def ccw_angle_exceeds_pi(u, v) -> int:
    """Compare the ccw angle swept from direction u to direction v with pi.

    Returns +1 if it is larger than pi, 0 if exactly pi, -1 if smaller.
    Coincident directions count as a full turn (larger than pi).
    """
    c = cross(u, v)
    if c > 0:
        return -1
    if c < 0:
        return 1
    dot = u[0] * v[0] + u[1] * v[1]
    return 0 if dot < 0 else 1


def segments_intersect(a, b, c, d) -> bool:
    """Closed segments ab and cd share at least one point."""
    o1 = orientation(a, b, c)
    o2 = orientation(a, b, d)
    o3 = orientation(c, d, a)
    o4 = orientation(c, d, b)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return (
        (o1 == 0 and _on_segment(a, b, c))
        or (o2 == 0 and _on_segment(a, b, d))
        or (o3 == 0 and _on_segment(c, d, a))
        or (o4 == 0 and _on_segment(c, d, b))
    )


def _on_segment(a, b, p) -> bool:
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def to_integer_grid(points: Iterable[Sequence[Number]]) -> list[tuple[int, int]]:
    """Scale rational points by the lcm of their denominators."""
    pts = [exact_point(p) for p in points]
    den = 1
    for x, y in pts:
        den = lcm(den, x.denominator, y.denominator)
    return [(int(x * den), int(y * den)) for x, y in pts]


def signed_area2(poly: Sequence) -> Fraction:
    """Twice the signed area of a closed polygon (ccw positive)."""
    s = 0
    k = len(poly)
    for i in range(k):
        x0, y0 = poly[i]
        x1, y1 = poly[(i + 1) % k]
        s += x0 * y1 - x1 * y0
    return s


# float filter bound for the 2x2 orientation determinant (Shewchuk's ccwerrboundA)
_ORIENT_ERRBOUND = (3.0 + 16.0 * 2.0**-53) * 2.0**-53


def orientation_batch(ints: Sequence[tuple[int, int]], floats, p, q, r):
    """Exact orientation signs for index arrays ``p, q, r`` into one point set.

    ``floats`` is an (n, 2) float array holding the same points exactly, or
    None when the points are not all doubles.  Signs certain under the float
    error bound are taken from the float determinant; the remaining ones are
    recomputed on the integer grid ``ints``.
    """
    import numpy as np

    if floats is None:
        return np.array([orientation(ints[a], ints[b], ints[c]) for a, b, c in zip(p, q, r)], dtype=np.int64)
    P, Q, R = floats[p], floats[q], floats[r]
    left = (Q[:, 0] - P[:, 0]) * (R[:, 1] - P[:, 1])
    right = (Q[:, 1] - P[:, 1]) * (R[:, 0] - P[:, 0])
    det = left - right
    bound = _ORIENT_ERRBOUND * (np.abs(left) + np.abs(right))
    sign = np.sign(det).astype(np.int64)
    # tiny magnitudes may have underflowed, so they are recomputed too
    unsure = np.nonzero(~(np.abs(det) > bound) | (np.abs(left) + np.abs(right) < 1e-280))[0]
    for i in unsure:
        sign[i] = orientation(ints[p[i]], ints[q[i]], ints[r[i]])
    return sign
