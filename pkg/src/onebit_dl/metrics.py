"""Evaluation metrics for recovered signals and dictionaries."""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from onebit_dl.errors import ParameterError
from onebit_dl.model import sign

log = logging.getLogger(__name__)


@dataclass
class TrialResult:
    variant: str
    nmse_db: float
    sign_consistency: float
    cost_trace: list = field(default_factory=list)
    wall_time: float = 0.0


def nmse(X, X_hat):
    """``20 log10(||X - X_hat||_F / ||X||_F)`` in dB; ``-inf`` for an exact match."""
    X = np.asarray(X, dtype=float)
    X_hat = np.asarray(X_hat, dtype=float)
    if X.shape != X_hat.shape:
        raise ParameterError(f"shape mismatch {X.shape} vs {X_hat.shape}")
    ref = np.linalg.norm(X)
    if ref == 0:
        raise ParameterError("reference signal has zero norm")
    err = np.linalg.norm(X - X_hat)
    if err == 0:
        return -math.inf
    return 20.0 * math.log10(err / ref)


def sign_consistency(Y, D, S_hat):
    Y = np.asarray(Y, dtype=float)
    Z = np.asarray(D, dtype=float) @ np.asarray(S_hat, dtype=float)
    if Z.shape != Y.shape:
        raise ParameterError(f"sign(D @ S_hat) has shape {Z.shape}, Y has {Y.shape}")
    return float(np.mean(sign(Z) == Y))


def average_nmse(results):
    """Mean of per-trial NMSE values in dB.

    Exact reconstructions (``-inf``) cannot be averaged in dB; they are
    dropped with a warning.
    """
    values = [r.nmse_db if isinstance(r, TrialResult) else float(r) for r in results]
    if not values:
        raise ParameterError("no trial results to average")
    finite = [v for v in values if math.isfinite(v)]
    if len(finite) < len(values):
        log.warning("excluded %d non-finite NMSE value(s) from the average", len(values) - len(finite))
    if not finite:
        raise ParameterError("every trial result is non-finite")
    return math.fsum(finite) / len(finite)
