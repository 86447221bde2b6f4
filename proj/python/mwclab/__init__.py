"""Python bindings for mwclab.

Sign matrices are numpy int8 arrays of shape (m, M) with entries +-1.
Records (ExRIP results, quality reports, recovery reports) are returned as
plain dicts using the same field names as the command-line JSON output.
"""

import json

from . import _core
from ._core import (
    BASIS_PURSUIT_DELTA,
    ValidationError,
    coherence,
    correlation_measures,
    patterns_text,
    preset_names,
    read_patterns,
    sensing_matrix,
    sign_matrix,
    somp,
)

__all__ = [
    "BASIS_PURSUIT_DELTA",
    "ValidationError",
    "coherence",
    "correlation_measures",
    "empirical_exrip",
    "exrip",
    "exrip_approx",
    "moment_constants",
    "patterns_text",
    "preset_names",
    "quality_bounds",
    "quality_measures",
    "read_patterns",
    "recovery_experiment",
    "rip_min_m",
    "sensing_matrix",
    "sign_matrix",
    "somp",
    "strip_calderbank",
    "sweep_csv",
    "table2_csv",
]


def quality_measures(S):
    return json.loads(_core.quality_measures_json(S))


def quality_bounds(S):
    return json.loads(_core.quality_bounds_json(S))


def moment_constants(dist, k, samples=1_000_000, seed=1):
    """samples=0 selects the closed form (real_normal or k == 1 only)."""
    return json.loads(_core.moment_constants_json(dist, k, samples, seed))


def exrip(S, k, delta=BASIS_PURSUIT_DELTA, dist="complex_normal", samples=1_000_000, seed=1):
    return json.loads(_core.exrip_json(S, k, delta, dist, samples, seed))


def exrip_approx(m, delta=BASIS_PURSUIT_DELTA):
    return json.loads(_core.exrip_approx_json(m, delta))


def rip_min_m(M, k, delta=BASIS_PURSUIT_DELTA, prob=0.97, c=7.0 / 18.0):
    return json.loads(_core.rip_min_m_json(M, k, delta, prob, c))


def strip_calderbank(m, M, k, delta=BASIS_PURSUIT_DELTA):
    return json.loads(_core.strip_calderbank_json(m, M, k, delta))


def empirical_exrip(S, k, delta=BASIS_PURSUIT_DELTA, dist="complex_normal", trials=100_000, seed=1):
    return json.loads(_core.empirical_exrip_json(S, k, delta, dist, trials, seed))


def recovery_experiment(family, m, n=0, M=0, k_rows=1, r=1, noise_sigma=0.0, trials=100, seed=1):
    return json.loads(_core.recovery_json(family, m, n, M, k_rows, r, noise_sigma, trials, seed))


def table2_csv(seed=1, samples=1_000_000):
    return _core.table2_csv(seed, samples)


def sweep_csv(m_min=20, m_max=100, samples=1_000_000):
    return _core.sweep_csv(m_min, m_max, samples)
