"""Initial extreme points and per-point starting reference sets."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .core import (
    ARGMAX,
    KNOWN,
    TIED,
    PointSet,
    ReferenceSet,
    Tolerances,
    UsageError,
    sign_pattern,
    transform_centered,
)

log = logging.getLogger(__name__)


@dataclass
class DirectionPick:
    direction: tuple[float, ...]
    winner: int
    unique: bool


@dataclass
class SeedState:
    e_prime: set[int] = field(default_factory=set)
    log: list[DirectionPick] = field(default_factory=list)


def argmax_direction(ps: PointSet, v, tol: Tolerances | None = None) -> tuple[int, bool]:
    """Index maximising <x_i, v> and whether that maximiser is unique.

    Scores are taken against the normalised direction so ``eps_tie`` is in
    coordinate units.  Ties go to the lowest index.
    """
    tol = (tol or Tolerances()).resolve(ps)
    v = np.asarray(v, dtype=float).reshape(-1)
    if v.shape[0] != ps.m:
        raise UsageError(f"direction has dimension {v.shape[0]}, expected {ps.m}")
    norm = float(np.linalg.norm(v))
    if not norm > 0:
        raise UsageError("direction must be non-zero")
    scores = ps.points @ (v / norm)
    best = int(np.argmax(scores))
    close = scores >= scores[best] - tol.eps_tie
    unique = int(np.count_nonzero(close)) == 1
    return best, unique


def axis_extremes(ps: PointSet, tol: Tolerances | None = None) -> SeedState:
    """Maximisers of +/- each coordinate axis; tied directions add nothing."""
    tol = (tol or Tolerances()).resolve(ps)
    state = SeedState()
    for c in range(ps.m):
        for sgn in (-1.0, 1.0):
            v = np.zeros(ps.m)
            v[c] = sgn
            winner, unique = argmax_direction(ps, v, tol)
            state.log.append(DirectionPick(tuple(v.tolist()), winner, unique))
            if unique:
                state.e_prime.add(winner)
            else:
                log.debug("axis direction %s tied; skipped", v)
    return state


def nearest_hyperplane(
    ps: PointSet, l: int, e_prime: Iterable[int], tol: Tolerances | None = None
) -> ReferenceSet:
    """Pick up to ``m`` known extremes near ``x_l`` with distinct sign patterns.

    Repeatedly takes the nearest remaining candidate and discards every
    candidate sharing its sign pattern (relative to ``x_l``), itself included.
    """
    tol = (tol or Tolerances()).resolve(ps)
    l = ps.check_id(l)
    pool = sorted(ps.check_id(i) for i in set(e_prime))
    if not pool:
        raise UsageError("e_prime must be non-empty")
    if l in pool:
        raise UsageError(f"query point {l} is already a known extreme")

    centered = transform_centered(ps, l, pool)
    dists = np.linalg.norm(centered, axis=1)
    patterns = sign_pattern(centered, tol.eps_sign)

    ref = ReferenceSet(owner=l)
    alive = np.ones(len(pool), dtype=bool)
    # strict bound: m picks (the following simplex step supplies the (m+1)-th)
    while len(ref) < ps.m and alive.any():
        # pool is sorted, so argmin's first hit is the lowest id among ties
        k = int(np.argmin(np.where(alive, dists, np.inf)))
        alive &= ~np.all(patterns == patterns[k], axis=1)
        ref.add(pool[k], KNOWN)
    return ref


def establish_simplex(
    ps: PointSet, l: int, r: ReferenceSet, tol: Tolerances | None = None
) -> ReferenceSet:
    """Extend ``r`` by one point found along the direction from its centroid to x_l.

    If that direction's maximiser is already in the working list, the list
    grows by the repeated pick (so the centroid drifts toward it) and the
    search is retried, at most ``max_refine`` times.  The returned copy
    records the refinement count; it is unchanged in size when no new point
    turned up.
    """
    tol = (tol or Tolerances()).resolve(ps)
    l = ps.check_id(l)
    if len(r) < 1:
        raise UsageError("reference set must be non-empty")
    out = r.copy()
    out.refinements = 0

    listed = list(r.members)
    vecs = transform_centered(ps, l, listed)
    total = vecs.sum(axis=0)
    count = len(listed)

    def pick(total, count):
        v = -total / count
        if not np.any(v):
            return None, False
        return argmax_direction(ps, v, tol)

    winner, unique = pick(total, count)
    k = 0
    in_list = set(listed)
    while winner is not None and winner in in_list and k < tol.max_refine:
        k += 1
        listed.append(winner)
        total = total + (ps.points[winner] - ps.points[l])
        count += 1
        winner, unique = pick(total, count)
    out.refinements = k
    if winner is not None and winner not in out:
        out.add(winner, ARGMAX if unique else TIED)
    return out
