"""Point-set model, tolerances and the centered-coordinate helpers."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)


class ExhullError(Exception):
    """Base class for all errors raised by this package."""


class UsageError(ExhullError, ValueError):
    """Invalid arguments or preconditions."""


class NumericError(ExhullError, ArithmeticError):
    """Non-finite data or a numerical breakdown."""


class PointSet:
    """Immutable ``n x m`` array of distinct points.

    Row ``i`` is point id ``i``.  ``origin_rows`` maps each retained point back
    to its row in the data it was built from (differs from ``range(n)`` only
    when duplicates were dropped).
    """

    __slots__ = ("points", "origin_rows")

    def __init__(self, points, origin_rows: Sequence[int] | None = None):
        arr = np.array(points, dtype=float, copy=True)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise UsageError(f"expected a non-empty n x m array, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NumericError("point coordinates must be finite")
        uniq = np.unique(arr, axis=0)
        if uniq.shape[0] != arr.shape[0]:
            raise UsageError("points must be pairwise distinct; use PointSet.from_rows to dedup")
        arr.setflags(write=False)
        self.points = arr
        if origin_rows is None:
            origin_rows = range(arr.shape[0])
        self.origin_rows = tuple(int(r) for r in origin_rows)

    @classmethod
    def from_rows(cls, rows, dedup: bool = True) -> "PointSet":
        """Build a point set, dropping exact duplicate rows (first one wins)."""
        arr = np.array(rows, dtype=float)
        if arr.ndim == 1:
            arr = arr.reshape(-1, 1)
        if arr.ndim != 2 or arr.shape[0] < 1:
            raise UsageError(f"expected a non-empty n x m array, got shape {arr.shape}")
        if not dedup:
            return cls(arr)
        seen: dict[tuple, int] = {}
        keep: list[int] = []
        dropped: list[int] = []
        for i, row in enumerate(arr):
            key = tuple(row.tolist())
            if key in seen:
                dropped.append(i)
            else:
                seen[key] = i
                keep.append(i)
        if dropped:
            log.warning("dropped %d duplicate row(s): %s", len(dropped), dropped)
        return cls(arr[keep], origin_rows=keep)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i) -> np.ndarray:
        return self.points[i]

    def check_id(self, i: int) -> int:
        i = int(i)
        if not 0 <= i < self.n:
            raise IndexError(f"point id {i} out of range [0, {self.n})")
        return i

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.points)))

    def diameter_estimate(self) -> float:
        """Bounding-box diagonal; an upper bound on the true diameter."""
        return float(np.linalg.norm(np.ptp(self.points, axis=0)))

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds.  ``None`` fields are filled from the data by
    :meth:`resolve`.

    eps_zero
        distance at or below which a point counts as enclosed.
    eps_kkt
        bound on the projection optimality residual (squared-distance units).
    eps_sign
        coordinates with ``|x| <= eps_sign`` have sign 0.
    eps_tie
        inner products (against a unit direction) within this of the maximum
        are tied.
    max_refine
        cap on direction refinements while establishing a simplex; defaults
        to the dimension.
    """

    eps_zero: float | None = None
    eps_kkt: float | None = None
    eps_sign: float = 0.0
    eps_tie: float | None = None
    max_refine: int | None = None

    def __post_init__(self):
        for name in ("eps_zero", "eps_kkt", "eps_sign", "eps_tie"):
            val = getattr(self, name)
            if val is not None and not (val >= 0 and np.isfinite(val)):
                raise UsageError(f"{name} must be a finite non-negative number, got {val!r}")
        if self.max_refine is not None and self.max_refine < 1:
            raise UsageError("max_refine must be a positive integer")
        if (
            self.eps_zero is not None
            and self.eps_kkt is not None
            and self.eps_kkt > self.eps_zero
        ):
            raise UsageError("eps_zero must be >= eps_kkt")

    @property
    def resolved(self) -> bool:
        return None not in (self.eps_zero, self.eps_kkt, self.eps_tie, self.max_refine)

    def resolve(self, ps: PointSet) -> "Tolerances":
        if self.resolved:
            return self
        amax = ps.max_abs()
        eps_zero = self.eps_zero
        if eps_zero is None:
            eps_zero = 1e-8 * (1.0 + ps.diameter_estimate())
        eps_kkt = self.eps_kkt
        if eps_kkt is None:
            eps_kkt = min(1e-10 * (1.0 + amax * amax), eps_zero)
        eps_tie = self.eps_tie
        if eps_tie is None:
            eps_tie = 1e-12 * (1.0 + float(np.max(np.linalg.norm(ps.points, axis=1))))
        max_refine = self.max_refine if self.max_refine is not None else ps.m
        return replace(
            self, eps_zero=eps_zero, eps_kkt=eps_kkt, eps_tie=eps_tie, max_refine=max_refine
        )


# Provenance tags for reference-set members.
KNOWN = "known"      # already in the confirmed extreme set
ARGMAX = "argmax"    # unique maximiser of some direction
TIED = "tied"        # maximiser of a direction with a tie
SEED = "seed"        # caller-supplied seed of unknown status


@dataclass
class ReferenceSet:
    """Ordered, duplicate-free list of point ids attached to a query point."""

    owner: int
    members: list[int] = field(default_factory=list)
    origin: dict[int, str] = field(default_factory=dict)
    refinements: int = 0

    def add(self, pid: int, origin: str = KNOWN) -> bool:
        """Append ``pid``; returns False (and changes nothing) if present."""
        pid = int(pid)
        if pid in self.origin:
            return False
        self.members.append(pid)
        self.origin[pid] = origin
        return True

    def copy(self) -> "ReferenceSet":
        return ReferenceSet(self.owner, list(self.members), dict(self.origin), self.refinements)

    def __contains__(self, pid) -> bool:
        return int(pid) in self.origin

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)


def transform_centered(ps: PointSet, l: int, subset: Iterable[int]) -> np.ndarray:
    """Rows ``x_i - x_l`` for each id in ``subset``, in order."""
    l = ps.check_id(l)
    idx = [ps.check_id(i) for i in subset]
    out = ps.points[idx] - ps.points[l]
    if not idx:
        out = out.reshape(0, ps.m)
    return out


def sign_pattern(v, eps_sign: float = 0.0) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    out = np.sign(v).astype(int)
    out[np.abs(v) <= eps_sign] = 0
    return out
