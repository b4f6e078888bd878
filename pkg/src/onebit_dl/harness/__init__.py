"""Experiment orchestration: configuration, Monte Carlo trials, outputs."""

from onebit_dl.harness.config import ExperimentConfig, SweepSpec, load_config
from onebit_dl.harness.experiments import run_convergence, run_sweep, run_trial

__all__ = [
    "ExperimentConfig",
    "SweepSpec",
    "load_config",
    "run_convergence",
    "run_sweep",
    "run_trial",
]
