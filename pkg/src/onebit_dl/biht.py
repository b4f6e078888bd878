"""Binary iterative hard thresholding for one-bit sparse recovery.

Each iteration takes a step ``(tau / 2) D^T (y - sign(D s))`` that pushes
the estimate toward sign consistency, then keeps the ``sparsity`` largest
entries. The final estimate is scaled to unit norm since one-bit data
carries no amplitude.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from onebit_dl.errors import ParameterError
from onebit_dl.model import sign


def default_sparsity(p, K):
    return max(2, math.ceil(3 * p * K))


@dataclass(frozen=True)
class BihtConfig:
    sparsity: int = 3
    iterations: int = 20
    tau: float = 1.0
    normalize_output: bool = True

    def validate(self, K=None):
        if self.iterations < 1:
            raise ParameterError(f"BIHT iterations must be >= 1, got {self.iterations}")
        if not self.tau > 0:
            raise ParameterError(f"tau must be positive, got {self.tau}")
        if self.sparsity < 1 or (K is not None and self.sparsity > K):
            raise ParameterError(f"sparsity must lie in [1, {K}], got {self.sparsity}")


class Recovery(NamedTuple):
    code: np.ndarray
    degenerate: bool


def hard_threshold(v, k):
    """Keep the ``k`` largest-magnitude entries of ``v``; ties keep the lower index."""
    v = np.asarray(v, dtype=float)
    if not 1 <= k <= v.shape[0]:
        raise ParameterError(f"k must lie in [1, {v.shape[0]}], got {k}")
    return _hard_threshold_columns(v.reshape(v.shape[0], -1), k).reshape(v.shape)


def _hard_threshold_columns(V, k):
    # stable sort on -|v| puts the lowest index first among equal magnitudes
    keep = np.argsort(-np.abs(V), axis=0, kind="stable")[:k]
    out = np.zeros_like(V)
    np.put_along_axis(out, keep, np.take_along_axis(V, keep, axis=0), axis=0)
    return out


def biht_recover_batch(Y, D, cfg, history=False):
    """Run BIHT on every column of ``Y`` at once.

    Returns ``(S_hat, degenerate)`` where ``degenerate`` marks columns whose
    estimate is exactly zero. With ``history=True`` a third element lists
    the iterate after each step, starting with the zero initialisation.
    """
    Y = np.asarray(Y, dtype=float)
    D = np.asarray(D, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    if D.shape[0] != Y.shape[0]:
        raise ParameterError(f"dictionary has {D.shape[0]} rows but measurements have {Y.shape[0]}")
    if not np.all(np.abs(Y) == 1):
        raise ParameterError("measurements must be +/-1")
    cfg.validate(D.shape[1])

    S = np.zeros((D.shape[1], Y.shape[1]))
    trace = [S]
    step = cfg.tau / 2.0
    for _ in range(cfg.iterations):
        S = _hard_threshold_columns(S + step * (D.T @ (Y - sign(D @ S))), cfg.sparsity)
        if history:
            trace.append(S)
    norms = np.linalg.norm(S, axis=0)
    degenerate = norms == 0
    if cfg.normalize_output:
        S = S / np.where(degenerate, 1.0, norms)
    if history:
        return S, degenerate, trace
    return S, degenerate


def biht_recover(y, D, cfg):
    S, degenerate = biht_recover_batch(np.asarray(y, dtype=float)[:, None], D, cfg)
    return Recovery(S[:, 0], bool(degenerate[0]))
