"""Exact extreme points of finite point sets in any dimension."""

from .core import (
    ExhullError,
    NumericError,
    PointSet,
    ReferenceSet,
    Tolerances,
    UsageError,
    sign_pattern,
    transform_centered,
)
from .datasets import ParseError, generate, ingest
from .hull import ConvergenceError, HullResult, IterationTrace, active, construct_hull
from .oracle import classify_all_bruteforce, hull_2d, hull_2d_ordered, verify_extreme
from .qp import ProjectionResult, QPError, distance, project
from .seeding import argmax_direction, axis_extremes, establish_simplex, nearest_hyperplane

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "ExhullError",
    "HullResult",
    "IterationTrace",
    "NumericError",
    "ParseError",
    "PointSet",
    "ProjectionResult",
    "QPError",
    "ReferenceSet",
    "Tolerances",
    "UsageError",
    "active",
    "argmax_direction",
    "axis_extremes",
    "classify_all_bruteforce",
    "construct_hull",
    "distance",
    "establish_simplex",
    "generate",
    "hull_2d",
    "hull_2d_ordered",
    "ingest",
    "nearest_hyperplane",
    "project",
    "sign_pattern",
    "transform_centered",
    "verify_extreme",
]
