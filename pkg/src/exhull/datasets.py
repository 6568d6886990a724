"""CSV ingestion and synthetic point-set generators."""

from __future__ import annotations

import csv
import logging
from pathlib import Path

import numpy as np

from .core import ExhullError, PointSet, UsageError

log = logging.getLogger(__name__)

KINDS = ("cube", "gaussian", "sphere", "simplex-interior")


class ParseError(ExhullError, ValueError):
    def __init__(self, msg: str, line: int | None = None):
        super().__init__(msg if line is None else f"line {line}: {msg}")
        self.line = line


def _parse_row(row: list[str]) -> list[float] | None:
    try:
        return [float(cell) for cell in row]
    except ValueError:
        return None


def ingest(path, format: str = "csv") -> PointSet:
    """Read a CSV of points, one per row.

    A single non-numeric first row is taken as a header.  Blank lines are
    ignored; exact duplicate rows are dropped with a warning.
    """
    if format != "csv":
        raise UsageError(f"unsupported format {format!r}")
    rows: list[list[float]] = []
    width = None
    with open(Path(path), newline="", encoding="utf-8-sig") as fh:
        for lineno, raw in enumerate(csv.reader(fh), start=1):
            cells = [c.strip() for c in raw]
            if not cells or all(c == "" for c in cells):
                continue
            values = _parse_row(cells)
            if values is None:
                if not rows and width is None:
                    width = len(cells)  # header
                    continue
                raise ParseError(f"non-numeric value in row {cells!r}", lineno)
            if width is None:
                width = len(values)
            if len(values) != width:
                raise ParseError(f"expected {width} fields, got {len(values)}", lineno)
            if not all(np.isfinite(values)):
                raise ParseError("non-finite value", lineno)
            rows.append(values)
    if not rows:
        raise ParseError("no data rows", None)
    return PointSet.from_rows(rows)


def write_csv(ps: PointSet, path, header: bool = True) -> None:
    with open(Path(path), "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        if header:
            w.writerow([f"x{j + 1}" for j in range(ps.m)])
        for row in ps.points:
            w.writerow([repr(float(v)) for v in row])


def simplex_vertices(m: int) -> np.ndarray:
    """m+1 vertices: ``(m+1) e_c`` for each axis plus ``(-1, ..., -1)``.

    Each +axis direction is maximised only by its axis vertex and each -axis
    direction only by the all-negative vertex.  Convex combinations with
    weights in [1, 2] (before normalising) have positive
    coordinates, so seen from any such point the vertices carry pairwise
    distinct sign patterns.
    """
    return np.vstack([(m + 1.0) * np.eye(m), -np.ones((1, m))])


def generate(kind: str, n: int, m: int, seed: int = 0) -> PointSet:
    if kind not in KINDS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    if n < 1 or m < 1:
        raise UsageError("n and m must be positive")
    rng = np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)
    if kind == "cube":
        pts = rng.random((n, m))
    elif kind == "gaussian":
        pts = rng.standard_normal((n, m))
    elif kind == "sphere":
        pts = rng.standard_normal((n, m))
        pts /= np.linalg.norm(pts, axis=1, keepdims=True)
    else:
        if n < m + 1:
            raise UsageError("simplex-interior needs n >= m + 1")
        verts = simplex_vertices(m)
        # weights in [1, 2] before normalising keep each above 1 / (2(m+1))
        w = rng.uniform(1.0, 2.0, size=(n - m - 1, m + 1))
        w /= w.sum(axis=1, keepdims=True)
        pts = np.vstack([verts, w @ verts])
    return PointSet.from_rows(pts)
