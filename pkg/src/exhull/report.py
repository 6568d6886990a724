"""JSON run reports and planar SVG rendering."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from xml.sax.saxutils import escape

import numpy as np

from .core import PointSet
from .hull import HullResult
from .oracle import hull_2d_ordered

SCHEMA = 1


def build_report(
    ps: PointSet,
    result: HullResult,
    source: str,
    config: dict,
    verification: dict | None = None,
    wall_time: float | None = None,
    include_trace: bool = False,
) -> dict:
    tol = result.tolerances
    ids = result.sorted_ids()
    per_point = []
    for t in result.traces:
        entry = {
            "point": t.point,
            "qp_solves": t.qp_solves,
            "refine_steps": t.refine_steps,
            "growth_iterations": t.growth_iterations,
            "initial_reference": t.initial,
            "final_reference": t.final,
            "final_distance": t.steps[-1].distance,
        }
        if include_trace:
            entry["steps"] = [
                {
                    "k": s.k,
                    "distance": s.distance,
                    "added": s.added,
                    "size": s.size,
                    **({"residual": s.residual} if s.residual is not None else {}),
                }
                for s in t.steps
            ]
        per_point.append(entry)
    report = {
        "schema": SCHEMA,
        "input": {"n": ps.n, "m": ps.m, "source": source, "origin_rows": list(ps.origin_rows)},
        "config": {
            **config,
            "tolerances": {
                "eps_zero": tol.eps_zero,
                "eps_kkt": tol.eps_kkt,
                "eps_sign": tol.eps_sign,
                "eps_tie": tol.eps_tie,
                "max_refine": tol.max_refine,
            },
        },
        "extreme_indices": ids,
        "extreme_labels": [i + 1 for i in ids],
        "n_extreme": len(ids),
        "seed_extremes": sorted(result.seed_extremes),
        "per_point": per_point,
        "total_qp_solves": result.total_qp_solves,
        "growth_iterations": result.growth_iterations,
        "verification_solves": result.verification_solves,
        "e_prime_growth": [list(p) for p in result.e_prime_growth],
        "verification": verification or {"mode": "none"},
    }
    # the only non-deterministic field
    report["wall_time_s"] = wall_time
    return report


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def write_atomic(path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def render_svg(ps: PointSet, report: dict, size: int = 480, margin: int = 32) -> str:
    """SVG of the points, the hull polygon through the reported extremes, and
    (when the report carries step residuals) the residual arrows."""
    if ps.m != 2:
        raise ValueError("SVG output needs planar points")
    pts = ps.points
    lo = pts.min(axis=0)
    span = float(max(np.ptp(pts, axis=0).max(), 1e-300))
    inner = size - 2 * margin

    def xy(p):
        sx = margin + (p[0] - lo[0]) / span * inner
        sy = size - margin - (p[1] - lo[1]) / span * inner
        return f"{sx:.3f}", f"{sy:.3f}"

    ext = report["extreme_indices"]
    sub = PointSet(pts[ext]) if ext else None
    ring = [ext[i] for i in hull_2d_ordered(sub)] if sub is not None else []

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        '<defs><marker id="arrow" markerWidth="8" markerHeight="8" refX="7" refY="4" '
        'orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="#c33"/></marker></defs>',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    if ring:
        coords = " ".join(",".join(xy(pts[i])) for i in ring)
        out.append(
            f'<polygon class="hull" points="{coords}" fill="#dde8f6" stroke="#2a5db0" '
            'stroke-width="1.5"/>'
        )
    for entry in report.get("per_point", []):
        for step in entry.get("steps", []):
            res = step.get("residual")
            if res is None or step["added"] is None:
                continue
            tail = pts[entry["point"]] - np.asarray(res)
            x1, y1 = xy(tail)
            x2, y2 = xy(pts[entry["point"]])
            out.append(
                f'<line class="residual" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
                'stroke="#c33" stroke-width="1" marker-end="url(#arrow)"/>'
            )
    extreme = set(ext)
    for i, p in enumerate(pts):
        cx, cy = xy(p)
        fill = "#2a5db0" if i in extreme else "#888"
        out.append(
            f'<circle class="{"vertex" if i in extreme else "point"}" cx="{cx}" cy="{cy}" '
            f'r="3.5" fill="{fill}"><title>{escape(str(i + 1))}</title></circle>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
