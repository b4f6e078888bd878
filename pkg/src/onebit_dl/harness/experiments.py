"""Seeded Monte Carlo trials, parameter sweeps and convergence traces."""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from onebit_dl.biht import biht_recover_batch
from onebit_dl.dictlearn import learn, reconstruct_signals, recover_phi
from onebit_dl.errors import NumericDivergenceError, ParameterError
from onebit_dl.metrics import TrialResult, average_nmse, nmse, sign_consistency
from onebit_dl.model import RngStream, gen_gaussian_matrix, synthesize

log = logging.getLogger(__name__)

BASELINE = "baseline"
MIN_SUCCESS_FRACTION = 0.8


def initial_dictionary(cfg, inst, gen):
    if cfg.init_mode == "random":
        return gen_gaussian_matrix(cfg.n, cfg.K, gen, normalize_columns=True)
    return inst.D + cfg.init_perturbation * gen.standard_normal(inst.D.shape)


def _estimate_signals(cfg, inst, D, S_hat):
    Phi_hat = recover_phi(inst.A, D, max_cond=cfg.max_cond)
    if cfg.normalize_phi:
        norms = np.linalg.norm(Phi_hat, axis=0)
        Phi_hat = Phi_hat / np.where(norms == 0, 1.0, norms)
    return reconstruct_signals(Phi_hat, S_hat)


def _evaluate(cfg, inst, D, name, cost_trace, started):
    S_hat, _ = biht_recover_batch(inst.Y, D, cfg.biht_config())
    X_hat = _estimate_signals(cfg, inst, D, S_hat)
    return TrialResult(
        variant=name,
        nmse_db=nmse(inst.X, X_hat),
        sign_consistency=sign_consistency(inst.Y, D, S_hat),
        cost_trace=list(cost_trace),
        wall_time=time.perf_counter() - started,
    )


def run_trial(cfg, rng, keep=None):
    """Run one Monte Carlo trial and return ``{variant: TrialResult}``.

    Keys are ``"l2"``/``"l1"`` for the requested learners and ``"baseline"``
    (BIHT with the initial dictionary, no learning) when enabled. All
    entries share the same problem instance and initial dictionary. Pass a
    dict as ``keep`` to receive the instance and dictionaries.
    """
    gen = rng.generator() if isinstance(rng, RngStream) else rng
    inst = synthesize(cfg, gen)
    D_init = initial_dictionary(cfg, inst, gen)
    out = {}
    if keep is not None:
        keep.update(instance=inst, D_init=D_init)
    if cfg.baseline:
        t0 = time.perf_counter()
        out[BASELINE] = _evaluate(cfg, inst, D_init, BASELINE, [], t0)
    for variant in cfg.variants:
        t0 = time.perf_counter()
        state = learn(inst.Y, D_init, cfg.learn_config(variant))
        out[variant.value] = _evaluate(cfg, inst, state.D, variant.value, state.cost_history, t0)
        if keep is not None:
            keep[f"D_{variant.value}"] = state.D
    return out


def _map(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _safe_trial(cfg, stream):
    try:
        return run_trial(cfg, stream)
    except NumericDivergenceError as exc:
        log.warning("trial %d diverged: %s", stream.stream, exc)
        return None


def run_monte_carlo(cfg, context=(), threads=1):
    """Run ``cfg.mc_trials`` trials; result list is ordered by trial index (None = failed)."""
    if cfg.seed is None:
        raise ParameterError("a seed is required for Monte Carlo runs")
    streams = [RngStream(cfg.seed, t, tuple(context)) for t in range(cfg.mc_trials)]
    return _map(lambda s: _safe_trial(cfg, s), streams, threads)


def _names(cfg):
    names = [v.value for v in cfg.variants]
    return names + [BASELINE] if cfg.baseline else names


def run_sweep(cfg, sweep, threads=1):
    """NMSE table over ``sweep.values``; one row per (value, variant).

    Rows: ``{sweep.parameter: value, "variant", "nmse_db", "trials_ok",
    "trials", "sign_consistency"}``. A row whose success fraction falls
    below 80% carries ``nmse_db = nan``. Trials for T and n sweeps are
    keyed by the sweep value; mu sweeps reuse the same instances so the
    step sizes are compared on paired data.
    """
    rows = []
    for value in sweep.values:
        cell = cfg.replace(**{sweep.parameter: value})
        context = () if sweep.parameter == "mu" else (int(value),)
        trials = run_monte_carlo(cell, context, threads)
        ok = [t for t in trials if t is not None]
        for name in _names(cfg):
            enough = len(ok) >= MIN_SUCCESS_FRACTION * len(trials)
            rows.append({
                sweep.parameter: value,
                "variant": name,
                "nmse_db": average_nmse([t[name] for t in ok]) if enough else math.nan,
                "trials_ok": len(ok),
                "trials": len(trials),
                "sign_consistency": float(np.mean([t[name].sign_consistency for t in ok])) if ok else math.nan,
            })
    return rows


def run_convergence(cfg, mu_values=(0.1, 1.0, 10.0)):
    """Cost traces J(D) per outer iteration for each step size and variant.

    Every trace starts from the same instance and initial dictionary
    (trial stream 0). Returns ``(rows, truncated)`` where rows are
    ``{"iteration", "mu", "variant", "cost"}`` and ``truncated`` lists
    ``(mu, variant, iteration)`` for traces cut short by divergence.
    """
    if not mu_values:
        raise ParameterError("mu_values must be non-empty")
    if cfg.seed is None:
        raise ParameterError("a seed is required")
    gen = RngStream(cfg.seed, 0).generator()
    inst = synthesize(cfg, gen)
    D_init = initial_dictionary(cfg, inst, gen)
    rows, truncated = [], []
    for mu in mu_values:
        for variant in cfg.variants:
            try:
                trace = learn(inst.Y, D_init, cfg.learn_config(variant, mu=mu)).cost_history
            except NumericDivergenceError as exc:
                trace = exc.cost_history
                truncated.append((mu, variant.value, exc.iteration))
            rows += [
                {"iteration": i, "mu": mu, "variant": variant.value, "cost": c}
                for i, c in enumerate(trace, 1)
            ]
    return rows, truncated
