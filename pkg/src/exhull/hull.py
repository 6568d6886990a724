"""Exact extreme-point identification by per-point projection growth.

For each point not yet known to be extreme, a reference set is grown until
it encloses the point: project the point onto the hull of the set, take the
residual as a direction, add that direction's maximiser, re-project.  Every
maximiser that wins uniquely is a vertex, so the union of the final sets is
the vertex set.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .core import (
    ARGMAX,
    KNOWN,
    SEED,
    TIED,
    ExhullError,
    NumericError,
    PointSet,
    ReferenceSet,
    Tolerances,
    UsageError,
)
from .qp import ProjectionResult, QPError, project
from .seeding import argmax_direction, axis_extremes, establish_simplex, nearest_hyperplane

log = logging.getLogger(__name__)

SIMPLEX = "simplex"
SINGLE_SEED = "single-seed"
STRATEGIES = (SIMPLEX, SINGLE_SEED)


class ConvergenceError(NumericError):
    """Distance failed to decrease while growing a reference set."""


@dataclass
class TraceStep:
    k: int
    distance: float             # distance to conv(R^k)
    added: int | None           # id appended to form R^{k+1}; None on the last step
    size: int                   # |R^k|
    residual: list[float] | None = None


@dataclass
class IterationTrace:
    point: int
    steps: list[TraceStep] = field(default_factory=list)
    qp_solves: int = 0
    refine_steps: int = 0
    initial: list[int] = field(default_factory=list)
    final: list[int] = field(default_factory=list)

    @property
    def growth_iterations(self) -> int:
        return sum(1 for s in self.steps if s.added is not None)

    @property
    def distances(self) -> list[float]:
        return [s.distance for s in self.steps]


@dataclass
class HullResult:
    extreme_ids: set[int]
    traces: list[IterationTrace]
    total_qp_solves: int
    e_prime_growth: list[tuple[int, int]]
    seed_extremes: set[int] = field(default_factory=set)
    verified_candidates: dict[int, bool] = field(default_factory=dict)
    verification_solves: int = 0
    tolerances: Tolerances | None = None

    @property
    def growth_iterations(self) -> int:
        return sum(t.growth_iterations for t in self.traces)

    def sorted_ids(self) -> list[int]:
        return sorted(self.extreme_ids)


def active(r: ReferenceSet, proj: ProjectionResult, strategy: str = SIMPLEX) -> set[int]:
    """Members of ``r`` that may join the confirmed extreme set.

    Tied picks are never returned (their extremeness is unproven); a
    caller-supplied seed is returned only when it carries weight in ``proj``.
    """
    if strategy not in STRATEGIES:
        raise UsageError(f"unknown strategy {strategy!r}")
    support = set(proj.support)
    out = set()
    for pid in r.members:
        origin = r.origin[pid]
        if origin in (KNOWN, ARGMAX):
            out.add(pid)
        elif origin == SEED and pid in support:
            out.add(pid)
    return out


def grow_reference_set(
    ps: PointSet,
    l: int,
    ref: ReferenceSet,
    tol: Tolerances,
    trace: IterationTrace | None = None,
    keep_residuals: bool = False,
) -> tuple[ReferenceSet, ProjectionResult, IterationTrace, list[tuple[int, bool]]]:
    """Grow ``ref`` until it encloses ``x_l``.

    Returns the final set, its projection, the trace, and the (id, unique)
    pairs discovered along the way.
    """
    tol = tol.resolve(ps)
    trace = trace or IterationTrace(point=l)
    trace.initial = list(ref.members)
    z = ps.points[l]
    picks: list[tuple[int, bool]] = []

    def solve(warm=None):
        try:
            res = project(ps, z, ref.members, tol, warm_start=warm)
        except QPError as exc:
            raise QPError(str(exc), point=l) from exc
        trace.qp_solves += 1
        return res

    proj = solve()
    dist = proj.distance
    k = 0
    while dist > tol.eps_zero:
        v = proj.residual
        winner, unique = argmax_direction(ps, v, tol)
        trace.steps.append(
            TraceStep(k, dist, winner, len(ref), v.tolist() if keep_residuals else None)
        )
        if not ref.add(winner, ARGMAX if unique else TIED):
            raise ConvergenceError(
                f"point {l}, step {k}: direction maximiser {winner} already in reference set"
            )
        picks.append((winner, unique))
        log.debug("point %d step %d: distance %.6e, added %d%s", l, k, dist, winner,
                  "" if unique else " (tied)")
        warm = np.append(proj.lam, 0.0)
        proj = solve(warm)
        new = proj.distance
        if not new < dist:
            raise ConvergenceError(
                f"point {l}, step {k}: distance did not decrease ({dist!r} -> {new!r})"
            )
        dist = new
        k += 1
    trace.steps.append(
        TraceStep(k, dist, None, len(ref), proj.residual.tolist() if keep_residuals else None)
    )
    trace.final = list(ref.members)
    return ref, proj, trace, picks


def _fallback_seed(ps: PointSet, tol: Tolerances) -> int:
    lex = int(np.lexsort(ps.points.T[::-1])[0])
    v = ps.points[lex] - ps.points.mean(axis=0)
    if np.any(v):
        winner, unique = argmax_direction(ps, v, tol)
        if unique:
            return winner
    # the lexicographic minimum of distinct points is always a vertex
    return lex


def _processing_order(n: int, order) -> list[int]:
    if order is None or (isinstance(order, str) and order == "index"):
        return list(range(n))
    if isinstance(order, str):
        raise UsageError(f"unknown order {order!r}")
    seq = [int(i) for i in order]
    if len(set(seq)) != len(seq) or any(not 0 <= i < n for i in seq):
        raise UsageError("order must list distinct valid point ids")
    given = set(seq)
    return seq + [i for i in range(n) if i not in given]


def construct_hull(
    ps: PointSet,
    tol: Tolerances | None = None,
    init_strategy: str = SIMPLEX,
    order: str | Sequence[int] | None = None,
    seeds: Mapping[int, int] | None = None,
    keep_residuals: bool = False,
) -> HullResult:
    """Identify the extreme points of ``ps``.

    ``order`` is ``"index"`` (default) or a sequence of ids to process first;
    omitted ids follow in ascending order.  ``seeds`` maps a query id to a
    starting point for the ``single-seed`` strategy; by default the nearest
    confirmed extreme is used.
    """
    if init_strategy not in STRATEGIES:
        raise UsageError(f"unknown init strategy {init_strategy!r}")
    tol = (tol or Tolerances()).resolve(ps)
    seeds = dict(seeds or {})

    state = axis_extremes(ps, tol)
    e_prime = set(state.e_prime)
    if not e_prime:
        fb = _fallback_seed(ps, tol)
        log.info("all axis directions tied; seeding with point %d", fb)
        e_prime.add(fb)
    seed_extremes = set(e_prime)

    queue = _processing_order(ps.n, order)
    pending = set(range(ps.n)) - e_prime
    candidates: set[int] = set()
    traces: list[IterationTrace] = []
    growth: list[tuple[int, int]] = []

    for l in queue:
        if l not in pending:
            continue
        trace = IterationTrace(point=l)
        if init_strategy == SIMPLEX:
            ref = nearest_hyperplane(ps, l, e_prime, tol)
            ref = establish_simplex(ps, l, ref, tol)
            trace.refine_steps = ref.refinements
            for pid in ref.members:
                if ref.origin[pid] == TIED:
                    candidates.add(pid)
        else:
            ref = ReferenceSet(owner=l)
            if l in seeds:
                s = ps.check_id(seeds[l])
                ref.add(s, KNOWN if s in e_prime else SEED)
            else:
                known = sorted(e_prime)
                d = np.linalg.norm(ps.points[known] - ps.points[l], axis=1)
                ref.add(known[int(np.argmin(d))], KNOWN)

        ref, proj, trace, picks = grow_reference_set(ps, l, ref, tol, trace, keep_residuals)
        traces.append(trace)

        for pid, unique in picks:
            if unique:
                pending.discard(pid)
            else:
                candidates.add(pid)
        pending.discard(l)
        accepted = active(ref, proj, init_strategy)
        # seeds of unknown status are confirmed by the verification pass
        unproven = {pid for pid in accepted if ref.origin[pid] == SEED}
        candidates |= unproven
        e_prime |= accepted - unproven
        pending -= e_prime
        growth.append((l, len(e_prime)))
        log.debug("point %d: %d solve(s), |E'| = %d", l, trace.qp_solves, len(e_prime))

    verified, vsolves = _verify_candidates(ps, tol, e_prime, candidates - e_prime)
    e_prime |= {c for c, ok in verified.items() if ok}

    return HullResult(
        extreme_ids=e_prime,
        traces=traces,
        total_qp_solves=sum(t.qp_solves for t in traces),
        e_prime_growth=growth,
        seed_extremes=seed_extremes,
        verified_candidates=verified,
        verification_solves=vsolves,
        tolerances=tol,
    )


def _verify_candidates(ps, tol, confirmed: set[int], candidates: set[int]):
    # conv(A) = conv(confirmed | candidates), so a candidate is extreme iff it
    # lies outside the hull of the rest of that union
    pool = sorted(confirmed | candidates)
    verdicts: dict[int, bool] = {}
    solves = 0
    for c in sorted(candidates):
        rest = [i for i in pool if i != c]
        if not rest:
            verdicts[c] = True
            continue
        d = project(ps, ps.points[c], rest, tol).distance
        solves += 1
        verdicts[c] = d > tol.eps_zero
        log.debug("candidate %d: distance %.3e -> %s", c, d, verdicts[c])
    return verdicts, solves


__all__ = [
    "ConvergenceError",
    "ExhullError",
    "HullResult",
    "IterationTrace",
    "SIMPLEX",
    "SINGLE_SEED",
    "TraceStep",
    "active",
    "construct_hull",
    "grow_reference_set",
]
