"""Alternating dictionary learning from sign measurements.

Step one recovers every sparse code with BIHT under the current
dictionary. Step two takes a steepest-descent step on each dictionary row
``d_k`` for the smoothed cost ``sum_i I(y_ik - S(d_k . s_i))``:

    L2:  d_k += mu * sum_i s_i S'(d_k . s_i) e_ik
    L1:  d_k += mu * sum_i s_i S'(d_k . s_i) sign(e_ik)

with ``e_ik = y_ik - S(d_k . s_i)``. The L2 step uses the plain error
rather than ``I'(e) = 2 e``; the factor 2 lives in ``mu``.
"""

from dataclasses import dataclass, field

import numpy as np

from onebit_dl.biht import BihtConfig, biht_recover_batch
from onebit_dl.errors import NumericDivergenceError, ParameterError, RankError
from onebit_dl.kernels import IndicatorVariant, s_shape, s_shape_deriv
from onebit_dl.model import sign


def _check_dims(D, S, Y):
    D, S, Y = (np.asarray(a, dtype=float) for a in (D, S, Y))
    if D.ndim != 2 or S.ndim != 2 or Y.ndim != 2:
        raise ParameterError("D, S and Y must be 2-D")
    if D.shape[1] != S.shape[0] or Y.shape != (D.shape[0], S.shape[1]):
        raise ParameterError(f"incompatible shapes D{D.shape}, S{S.shape}, Y{Y.shape}")
    return D, S, Y


def _check_mu(mu):
    if not mu >= 0:
        raise ParameterError(f"step size must be >= 0, got {mu}")


def cost_l2(D, S, Y):
    D, S, Y = _check_dims(D, S, Y)
    return float(np.sum((Y - s_shape(D @ S)) ** 2))


def cost_l1(D, S, Y):
    D, S, Y = _check_dims(D, S, Y)
    return float(np.sum(np.abs(Y - s_shape(D @ S))))


def cost(variant, D, S, Y):
    if IndicatorVariant.parse(variant) is IndicatorVariant.L1:
        return cost_l1(D, S, Y)
    return cost_l2(D, S, Y)


def _error_weights(Z, Y, variant):
    E = Y - s_shape(Z)
    if IndicatorVariant.parse(variant) is IndicatorVariant.L1:
        E = sign(E)
    return s_shape_deriv(Z) * E


def update_row(d_k, k, S, Y, mu, variant):
    """One steepest-descent step on row ``k`` of the dictionary."""
    d_k = np.asarray(d_k, dtype=float)
    S = np.asarray(S, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if d_k.ndim != 1 or d_k.shape[0] != S.shape[0] or Y.shape[1] != S.shape[1] or not 0 <= k < Y.shape[0]:
        raise ParameterError(f"incompatible shapes d_k{d_k.shape}, S{S.shape}, Y{Y.shape} for row {k}")
    _check_mu(mu)
    weights = _error_weights(d_k @ S, Y[k], variant)
    return d_k + mu * (S @ weights)


def dict_update(D, S, Y, mu, variant):
    """Apply :func:`update_row` to every row at once (rows are independent)."""
    D, S, Y = _check_dims(D, S, Y)
    _check_mu(mu)
    return D + mu * (_error_weights(D @ S, Y, variant) @ S.T)


@dataclass(frozen=True)
class LearnConfig:
    variant: IndicatorVariant = IndicatorVariant.L2
    mu: float = 1.0
    outer_iterations: int = 40
    biht: BihtConfig = field(default_factory=BihtConfig)
    inner_steps: int = 1

    def validate(self):
        _check_mu(self.mu)
        if self.outer_iterations < 1:
            raise ParameterError(f"outer_iterations must be >= 1, got {self.outer_iterations}")
        if self.inner_steps < 1:
            raise ParameterError(f"inner_steps must be >= 1, got {self.inner_steps}")
        self.biht.validate()


@dataclass
class LearnState:
    D: np.ndarray
    S_hat: np.ndarray
    cost_history: list = field(default_factory=list)
    iteration: int = 0
    degenerate_codes: int = 0


def learn(Y, D_init, cfg):
    """Alternate BIHT recovery and dictionary descent for ``cfg.outer_iterations`` rounds.

    ``cost_history`` holds the squared cost J(D) after each dictionary
    update, for both variants. ``S_hat`` is the code estimate the last
    update used. Raises :class:`NumericDivergenceError` on non-finite values.
    """
    cfg.validate()
    Y = np.asarray(Y, dtype=float)
    D = np.array(D_init, dtype=float, copy=True)
    if D.shape[0] != Y.shape[0]:
        raise ParameterError(f"D_init has {D.shape[0]} rows, Y has {Y.shape[0]}")
    cfg.biht.validate(D.shape[1])

    state = LearnState(D=D, S_hat=np.zeros((D.shape[1], Y.shape[1])))
    for it in range(1, cfg.outer_iterations + 1):
        S_hat, degenerate = biht_recover_batch(Y, D, cfg.biht)
        with np.errstate(over="ignore", invalid="ignore"):
            for _ in range(cfg.inner_steps):
                D = dict_update(D, S_hat, Y, cfg.mu, cfg.variant)
        if not np.all(np.isfinite(D)):
            raise NumericDivergenceError(it, cost_history=state.cost_history)
        J = cost_l2(D, S_hat, Y)
        if not np.isfinite(J):
            raise NumericDivergenceError(it, "cost", state.cost_history)
        state.D, state.S_hat = D, S_hat
        state.cost_history.append(J)
        state.iteration = it
        state.degenerate_codes = int(degenerate.sum())
    return state


def recover_phi(A, D, max_cond=1e10):
    """Least-squares estimate of the sparse domain, ``(A^T A)^-1 A^T D``."""
    A = np.asarray(A, dtype=float)
    D = np.asarray(D, dtype=float)
    n, m = A.shape
    if D.shape[0] != n:
        raise ParameterError(f"A has {n} rows, D has {D.shape[0]}")
    if n < m:
        raise RankError(f"left inverse needs n >= m, got n={n}, m={m}")
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > max_cond:
        raise RankError(f"sensing matrix is rank deficient or ill-conditioned (cond={cond:.3g})")
    return np.linalg.lstsq(A, D, rcond=None)[0]


def reconstruct_signals(Phi_hat, S_hat):
    Phi_hat = np.asarray(Phi_hat, dtype=float)
    S_hat = np.asarray(S_hat, dtype=float)
    if Phi_hat.ndim != 2 or S_hat.ndim != 2 or Phi_hat.shape[1] != S_hat.shape[0]:
        raise ParameterError(f"incompatible shapes Phi_hat{Phi_hat.shape}, S_hat{S_hat.shape}")
    return Phi_hat @ S_hat
