"""Independent extremeness checks used for verification."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import PointSet, Tolerances, UsageError
from .qp import project

# Shewchuk's first-stage error bound for the 2x2 orientation determinant.
_ORIENT_ERRBOUND = (3.0 + 16.0 * np.finfo(float).eps) * np.finfo(float).eps / 2.0


@dataclass
class ExtremenessVerdict:
    point: int
    is_extreme: bool
    alpha: float  # Euclidean separation from the hull of the other points


def verify_extreme(ps: PointSet, l: int, tol: Tolerances | None = None) -> ExtremenessVerdict:
    """Decide whether ``x_l`` is a convex combination of the other points.

    The separation is the distance from ``x_l`` to the hull of all remaining
    points: it is positive exactly when no such combination exists.
    """
    tol = (tol or Tolerances()).resolve(ps)
    l = ps.check_id(l)
    if ps.n == 1:
        return ExtremenessVerdict(l, True, float("inf"))
    others = [i for i in range(ps.n) if i != l]
    alpha = project(ps, ps.points[l], others, tol).distance
    return ExtremenessVerdict(l, alpha > tol.eps_zero, alpha)


def classify_all_bruteforce(ps: PointSet, tol: Tolerances | None = None) -> set[int]:
    tol = (tol or Tolerances()).resolve(ps)
    return {l for l in range(ps.n) if verify_extreme(ps, l, tol).is_extreme}


def orient2d(a, b, c) -> int:
    """Sign of the cross product (b - a) x (c - a), exactly.

    A floating-point evaluation is trusted when it clears the error bound;
    otherwise the determinant is recomputed in rational arithmetic.
    """
    detleft = (b[0] - a[0]) * (c[1] - a[1])
    detright = (b[1] - a[1]) * (c[0] - a[0])
    det = detleft - detright
    bound = _ORIENT_ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    ax, ay, bx, by, cx, cy = (Fraction(float(t)) for t in (a[0], a[1], b[0], b[1], c[0], c[1]))
    exact = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (exact > 0) - (exact < 0)


def hull_2d_ordered(ps: PointSet) -> list[int]:
    """Hull vertex ids in counter-clockwise order (monotone chain).

    Points in the relative interior of an edge are not vertices and are left
    out.
    """
    if ps.m != 2:
        raise UsageError(f"planar hull needs m = 2, got m = {ps.m}")
    pts = ps.points
    if ps.n == 1:
        return [0]
    order = sorted(range(ps.n), key=lambda i: (pts[i, 0], pts[i, 1]))

    def chain(ids):
        out: list[int] = []
        for i in ids:
            while len(out) >= 2 and orient2d(pts[out[-2]], pts[out[-1]], pts[i]) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(reversed(order))
    return lower[:-1] + upper[:-1]


def hull_2d(ps: PointSet) -> set[int]:
    return set(hull_2d_ordered(ps))
