from __future__ import annotations

import numpy as np
import pytest

from exhull import PointSet, Tolerances

# The nine-point planar instance; labels 1..9 in prose, ids 0..8 here.
NINE = [(10, 26), (72, 20), (40, 1), (46, 76), (32, 72), (71, 36), (34, 66), (40, 38), (62, 69)]
NINE_EXTREME_LABELS = {1, 2, 3, 4, 5, 6, 9}


def ids(*labels: int) -> list[int]:
    """1-based labels -> 0-based ids."""
    return [lab - 1 for lab in labels]


def labels(idset) -> set[int]:
    return {i + 1 for i in idset}


@pytest.fixture
def nine() -> PointSet:
    return PointSet(NINE)


@pytest.fixture
def tight(nine) -> Tolerances:
    return Tolerances(eps_zero=1e-8).resolve(nine)


# ---------------------------------------------------------------------------
# acceptance summary: one line per criterion at the end of the run

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(criterion: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}  {detail}")


# ---------------------------------------------------------------------------
# closed-form projections, independent of the solver


def project_segment(z, a, b) -> np.ndarray:
    z, a, b = (np.asarray(t, dtype=float) for t in (z, a, b))
    d = b - a
    dd = d @ d
    t = 0.0 if dd == 0 else float(np.clip((z - a) @ d / dd, 0.0, 1.0))
    return a + t * d


def project_triangle_2d(z, a, b, c) -> np.ndarray:
    z, a, b, c = (np.asarray(t, dtype=float) for t in (z, a, b, c))
    M = np.column_stack([b - a, c - a])
    if abs(np.linalg.det(M)) > 1e-14:
        u, v = np.linalg.solve(M, z - a)
        if u >= 0 and v >= 0 and u + v <= 1:
            return z.copy()
    cands = [project_segment(z, a, b), project_segment(z, b, c), project_segment(z, a, c)]
    return min(cands, key=lambda p: float((z - p) @ (z - p)))


def closed_form_distance(z, pts) -> float:
    pts = [np.asarray(p, dtype=float) for p in pts]
    z = np.asarray(z, dtype=float)
    if len(pts) == 1:
        p = pts[0]
    elif len(pts) == 2:
        p = project_segment(z, *pts)
    elif len(pts) == 3 and z.shape[0] == 2:
        p = project_triangle_2d(z, *pts)
    else:
        raise ValueError("no closed form")
    return float(np.linalg.norm(z - p))
