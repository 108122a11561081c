"""Monotone finite-volume laboratory for multi-dimensional Burgers-type
conservation laws: exact scaling constants, closed-form references, moment
determinants, and in-memory runs with quantitative estimate checks."""

from __future__ import annotations

import json as _json

from ._core import (
    ConfigError,
    FluxSpec,
    SolverError,
    __version__,
    burgers_exponents,
    capital_delta,
    det_identity_holds,
    fit_power_law,
    godunov_interface,
    hilbert_det,
    moment_determinant,
    monomial_constants,
    n_wave,
    n_wave_lp_norm,
    riemann_burgers_1d,
)
from ._core import run_and_check as _run_and_check
from ._core import run_experiment as _run_experiment

__all__ = [
    "ConfigError",
    "FluxSpec",
    "SolverError",
    "__version__",
    "burgers_exponents",
    "capital_delta",
    "det_identity_holds",
    "fit_power_law",
    "godunov_interface",
    "hilbert_det",
    "moment_determinant",
    "monomial_constants",
    "n_wave",
    "n_wave_lp_norm",
    "riemann_burgers_1d",
    "run_and_check",
    "run_experiment",
]


def _as_json(config) -> str:
    return config if isinstance(config, str) else _json.dumps(config)


def run_experiment(config) -> dict:
    """Run an experiment from a config dict or JSON string; returns diagnostics."""
    return _run_experiment(_as_json(config))


def run_and_check(config) -> dict:
    """Run an experiment and evaluate its configured estimate checks."""
    return _run_and_check(_as_json(config))
