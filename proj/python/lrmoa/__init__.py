"""Optimality checks for rank-constrained matrix problems with affine constraints."""

import json

import numpy as np

from ._core import (
    DivergenceError,
    Error,
    InputError,
    InvalidInput,
    ParseError,
    Problem,
    ShapeError,
    SizeError,
    example,
    example_names,
    load_problem,
    oracle_suites,
    problem_from_json,
    project_low_rank,
    rank_estimate,
    singular_values,
)
from . import _core

__all__ = [
    "DivergenceError",
    "Error",
    "InputError",
    "InvalidInput",
    "ParseError",
    "Problem",
    "ShapeError",
    "SizeError",
    "analyze",
    "example",
    "example_names",
    "load_problem",
    "oracle",
    "oracle_suites",
    "problem_from_json",
    "project_low_rank",
    "rank_estimate",
    "singular_values",
    "solve",
]


def _point(problem, point):
    if isinstance(point, str):
        return point, problem.point(point)
    return "", np.asarray(point, dtype=float)


def analyze(problem, point, *, alpha=None, samples=2000, seed=0, sign="as_stated"):
    """Analysis report as a dict; ``point`` is a label or a matrix."""
    label, x = _point(problem, point)
    return json.loads(_core._analyze(problem, x, alpha, samples, seed, sign, label))


def solve(problem, x0="X0", *, alpha=0.5, max_iters=10000, stop_tol=1e-9, mode="exact", rho=10.0):
    """Returns ``(x_star, report)``."""
    _, x = _point(problem, x0)
    x_star, report = _core._solve(problem, x, alpha, max_iters, stop_tol, mode, rho)
    return x_star, json.loads(report)


def oracle(name, *, seed=0, cases=0):
    return json.loads(_core._oracle(name, seed, cases))
