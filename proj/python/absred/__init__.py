"""Spectral entanglement criteria: absolutely reduced spectra and related sets."""

import json as _json

from . import _core

hat = _core.hat
disturbance = _core.disturbance
lambda_max = _core.lambda_max
witness = _core.witness
mc_reduction_min = _core.mc_reduction_min


def check(dims, set, spectrum, seed=1, force_optimizer=False):
    """Verdict report for a spectrum, as a dict with the CLI's JSON schema."""
    return _json.loads(_core.check(tuple(dims), set, list(spectrum), seed, force_optimizer))


def check_matrix(dims, set, matrix):
    """Verdict report for a density matrix given as nested lists (complex entries allowed)."""
    rows = [[complex(z) for z in row] for row in matrix]
    return _json.loads(_core.check_matrix(tuple(dims), set, rows))


def pseudopure(dims, schmidt, mu):
    return _json.loads(_core.pseudopure(tuple(dims), list(schmidt), mu))


def survey(dims, count, seed=1, alpha=1.0):
    """Summary of a Dirichlet survey: membership counts and inclusion-chain violations."""
    return _json.loads(_core.survey(tuple(dims), count, seed, alpha))


__all__ = [
    "check",
    "check_matrix",
    "disturbance",
    "hat",
    "lambda_max",
    "mc_reduction_min",
    "pseudopure",
    "survey",
    "witness",
]
