"""Weingarten calculus, exact Haar integrals and CLT checks on the classical
compact symmetric spaces.

Classes are named by descriptor strings such as ``"AIII:n=50,p=30,q=20"``.
Matrices are complex numpy arrays; entry indices passed to ``integrate`` are
1-based.
"""

import json
from fractions import Fraction

import numpy as np

from . import _core
from ._core import (
    ArgumentError,
    RegimeError,
    SizeLimitError,
    ambient_size,
    canonical_class,
    chiral_mean,
    in_W,
    k_statistics,
    project,
    recipe_matrix,
    sample_haar,
    sample_V,
    theoretical_covariance,
)

__all__ = [
    "ArgumentError",
    "RegimeError",
    "SizeLimitError",
    "ambient_size",
    "canonical_class",
    "chiral_mean",
    "exact_moments",
    "gamma",
    "in_W",
    "integrate",
    "k_statistics",
    "project",
    "recipe_matrix",
    "run_experiment",
    "sample_haar",
    "sample_V",
    "selftest",
    "theoretical_covariance",
    "weingarten",
]


def weingarten(series, degree, n):
    """Exact Weingarten table as a dict; values are "p/q" strings."""
    return json.loads(_core.weingarten_table_json(series, degree, n))


def integrate(series, n, factors):
    """Exact integral of prod g[row, col] (conjugated when the third item is
    true) over O_n, U_n or Sp_2n. Returns a Fraction."""
    normalized = [(f[0], f[1], bool(f[2]) if len(f) > 2 else False) for f in factors]
    text, _ = _core.integrate(series, n, normalized)
    return Fraction(text)


def gamma(tag):
    return Fraction(_core.gamma(tag))


def exact_moments(cls, a, matrix_id="A"):
    """Exact mean and variance of Re Tr(P(A) V) as a dict."""
    return json.loads(_core.moment_report_json(cls, np.asarray(a, dtype=complex), matrix_id))


def run_experiment(config, keep_samples=False):
    """Runs a Monte Carlo experiment. ``config`` is a dict in the CLI config
    schema. Returns the report dict; with keep_samples, also an array of the
    raw T values of shape (marginals, samples)."""
    report, values = _core.run_experiment_json(json.dumps(config), keep_samples)
    report = json.loads(report)
    if keep_samples:
        return report, np.asarray(values)
    return report


def selftest(only=(), seed=None, workers=1):
    kwargs = {"only": list(only), "workers": workers}
    if seed is not None:
        kwargs["seed"] = seed
    return json.loads(_core.selftest_json(**kwargs))
