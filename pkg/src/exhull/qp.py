"""Euclidean projection of a point onto the convex hull of a reference set.

Solves

    min ||z - sum_i lam_i x_i||^2   s.t.  sum_i lam_i = 1,  lam >= 0

with Wolfe's nearest-point method: an active-set scheme that keeps a
"corral" of affinely independent points, repeatedly solving the
equality-constrained problem on the corral and shrinking it by a ratio test
whenever a weight would go negative.  Termination is exact on small dense
instances and the final corral is the support of the optimal weights.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import NumericError, PointSet, Tolerances, UsageError

# Relative stopping threshold on the optimality gap; tighter than any sensible
# eps_kkt so the returned point is accurate to rounding on exit.
_GAP_REL = 1e-13
# Weights at or below this (dimensionless) leave the corral.
_WEIGHT_FLOOR = 1e-14


class QPError(NumericError):
    """Projection solver failed to produce a certified minimiser."""

    def __init__(self, msg: str, point: int | None = None):
        super().__init__(msg if point is None else f"{msg} (query point {point})")
        self.point = point


@dataclass
class ProjectionResult:
    members: list[int]
    lam: np.ndarray          # aligned with members
    dist_sq: float
    residual: np.ndarray     # z - sum lam_i x_i
    point: np.ndarray        # sum lam_i x_i
    support: list[int]
    kkt_residual: float
    pivots: int = 0

    @property
    def distance(self) -> float:
        return float(np.sqrt(self.dist_sq))

    def weights(self) -> dict[int, float]:
        return {i: float(w) for i, w in zip(self.members, self.lam)}


def kkt_residual(X: np.ndarray, z: np.ndarray, lam: np.ndarray) -> float:
    """max(0, max_i <v, x_i - p>) with p = lam @ X and v = z - p.

    Zero exactly when no vertex improves the projection.  Computed without
    reference to any solver state.
    """
    p = lam @ X
    v = z - p
    return max(0.0, float(np.max((X - p) @ v)))


def _affine_minimizer(Y: np.ndarray) -> np.ndarray:
    """Weights (summing to 1) of the min-norm point in the affine hull of rows."""
    k = Y.shape[0]
    if k == 1:
        return np.ones(1)
    D = (Y[1:] - Y[0]).T
    beta, *_ = np.linalg.lstsq(D, -Y[0], rcond=None)
    alpha = np.empty(k)
    alpha[1:] = beta
    alpha[0] = 1.0 - beta.sum()
    return alpha


def _wolfe(Y: np.ndarray, lam: np.ndarray, corral: list[int], stop_gap: float, max_pivots: int):
    """Nearest point to the origin in conv(rows of Y).

    ``lam``/``corral`` give the starting weights.  Returns (lam, corral, pivots).
    """
    pivots = 0
    pending_minor = len(corral) > 1
    while True:
        if pending_minor:
            # minor cycles: move toward the affine minimiser of the corral
            while True:
                pivots += 1
                if pivots > max_pivots:
                    raise QPError(f"projection exceeded {max_pivots} pivots")
                S = np.array(corral)
                alpha = _affine_minimizer(Y[S])
                if np.all(alpha > _WEIGHT_FLOOR):
                    lam[S] = alpha
                    break
                cur = lam[S]
                neg = alpha <= _WEIGHT_FLOOR
                ratios = np.full(len(corral), np.inf)
                denom = cur[neg] - alpha[neg]
                ratios[neg] = np.where(denom > 0, cur[neg] / np.where(denom > 0, denom, 1.0), 0.0)
                blocking = int(np.argmin(ratios))
                theta = float(np.clip(ratios[blocking], 0.0, 1.0))
                new = cur + theta * (alpha - cur)
                # at least the blocking weight leaves
                drop = new <= _WEIGHT_FLOOR
                drop[blocking] = True
                new[drop] = 0.0
                lam[S] = new
                corral = [c for c, d in zip(corral, drop) if not d]
                s = lam[corral].sum()
                lam[corral] /= s
                if len(corral) == 1:
                    lam[corral] = 1.0
                    break
            pending_minor = False

        x = lam[corral] @ Y[corral]
        g = Y @ x
        j = int(np.argmin(g))
        gap = float(x @ x - g[j])
        if gap <= stop_gap:
            return lam, corral, pivots
        if j in corral:
            # no further progress representable in floating point
            return lam, corral, pivots
        pivots += 1
        if pivots > max_pivots:
            raise QPError(f"projection exceeded {max_pivots} pivots")
        corral.append(j)
        lam[j] = 0.0
        pending_minor = True


def project(
    ps: PointSet,
    z,
    members: Sequence[int],
    tol: Tolerances | None = None,
    warm_start=None,
    max_pivots: int | None = None,
) -> ProjectionResult:
    """Project ``z`` onto conv(members).

    ``warm_start`` is an optional weight vector aligned with ``members``
    (e.g. the previous solution padded with zeros for appended members).
    """
    tol = (tol or Tolerances()).resolve(ps)
    members = [ps.check_id(i) for i in members]
    if not members:
        raise UsageError("members must be non-empty")
    if len(set(members)) != len(members):
        raise UsageError("members must be distinct")
    z = np.asarray(z, dtype=float).reshape(-1)
    if z.shape[0] != ps.m:
        raise UsageError(f"query has dimension {z.shape[0]}, expected {ps.m}")
    if not np.all(np.isfinite(z)):
        raise NumericError("query point must be finite")

    X = ps.points[members]
    Y = X - z
    k = len(members)
    sq = np.einsum("ij,ij->i", Y, Y)
    scale = max(float(sq.max()), np.finfo(float).tiny)
    stop_gap = min(tol.eps_kkt, _GAP_REL * scale)

    lam = np.zeros(k)
    if warm_start is not None:
        w = np.asarray(warm_start, dtype=float).reshape(-1)
        if w.shape[0] != k or not np.all(np.isfinite(w)):
            raise UsageError("warm_start must be finite and aligned with members")
        w = np.where(w > _WEIGHT_FLOOR, w, 0.0)
        if w.sum() > 0:
            corral = [int(i) for i in np.flatnonzero(w)]
            lam[corral] = w[corral] / w[corral].sum()
        else:
            warm_start = None
    if warm_start is None:
        j = int(np.argmin(sq))
        corral = [j]
        lam[j] = 1.0

    lam, corral, pivots = _wolfe(Y, lam, corral, stop_gap, max_pivots or 50 * k)

    p = lam @ X
    v = z - p
    kkt = kkt_residual(X, z, lam)
    if kkt > tol.eps_kkt:
        raise QPError(f"optimality residual {kkt:.3e} exceeds eps_kkt={tol.eps_kkt:.3e}")
    return ProjectionResult(
        members=members,
        lam=lam,
        dist_sq=float(v @ v),
        residual=v,
        point=p,
        support=[members[i] for i in range(k) if lam[i] > tol.eps_kkt],
        kkt_residual=kkt,
        pivots=pivots,
    )


def distance(ps: PointSet, z, members: Sequence[int], tol: Tolerances | None = None) -> float:
    """Distance from ``z`` to conv(members); exactly 0 below eps_zero."""
    tol = (tol or Tolerances()).resolve(ps)
    d2 = project(ps, z, members, tol).dist_sq
    if d2 <= tol.eps_zero ** 2:
        return 0.0
    return float(np.sqrt(d2))
