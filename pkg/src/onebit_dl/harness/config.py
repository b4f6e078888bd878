"""Experiment configuration and its flat ``key = value`` file format."""

import dataclasses
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from onebit_dl.biht import BihtConfig, default_sparsity
from onebit_dl.dictlearn import LearnConfig
from onebit_dl.errors import ParameterError
from onebit_dl.kernels import IndicatorVariant

VARIANTS = ("l1", "l2", "both")
INIT_MODES = ("perturbed", "random")


@dataclass(frozen=True)
class ExperimentConfig:
    m: int = 50
    n: int = 100
    K: int = 100
    T: int = 100
    p: float = 0.01
    sigma_r: float = 1.0
    sigma_n: float = 0.01
    mu: float = 1.0
    outer_iterations: int = 40
    inner_steps: int = 1
    biht_iterations: int = 20
    tau: float = 1.0
    sparsity: Optional[int] = None  # None: max(2, ceil(3 p K))
    init_mode: str = "perturbed"
    init_perturbation: float = 0.1
    normalize_phi: bool = False
    max_cond: float = 1e10
    mc_trials: int = 50
    seed: Optional[int] = None
    variant: str = "both"
    baseline: bool = True

    def __post_init__(self):
        self.validate()

    def validate(self):
        for name in ("m", "n", "K", "T", "outer_iterations", "inner_steps", "biht_iterations", "mc_trials"):
            if getattr(self, name) < 1:
                raise ParameterError(f"{name} must be >= 1, got {getattr(self, name)}")
        if not 0 < self.p < 1:
            raise ParameterError(f"p must lie in (0, 1), got {self.p}")
        if not self.sigma_r > 0:
            raise ParameterError(f"sigma_r must be positive, got {self.sigma_r}")
        for name in ("sigma_n", "init_perturbation", "mu"):
            if not getattr(self, name) >= 0:
                raise ParameterError(f"{name} must be >= 0, got {getattr(self, name)}")
        if not self.tau > 0:
            raise ParameterError(f"tau must be positive, got {self.tau}")
        if self.sparsity is not None and not 1 <= self.sparsity <= self.K:
            raise ParameterError(f"sparsity must lie in [1, K={self.K}], got {self.sparsity}")
        if self.variant not in VARIANTS:
            raise ParameterError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.init_mode not in INIT_MODES:
            raise ParameterError(f"init_mode must be one of {INIT_MODES}, got {self.init_mode!r}")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise ParameterError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @property
    def variants(self):
        if self.variant == "both":
            return [IndicatorVariant.L2, IndicatorVariant.L1]
        return [IndicatorVariant.parse(self.variant)]

    def biht_config(self):
        k = self.sparsity if self.sparsity is not None else min(self.K, default_sparsity(self.p, self.K))
        return BihtConfig(sparsity=k, iterations=self.biht_iterations, tau=self.tau)

    def learn_config(self, variant, mu=None):
        return LearnConfig(
            variant=IndicatorVariant.parse(variant),
            mu=self.mu if mu is None else mu,
            outer_iterations=self.outer_iterations,
            biht=self.biht_config(),
            inner_steps=self.inner_steps,
        )


@dataclass(frozen=True)
class SweepSpec:
    parameter: str
    values: tuple

    PARAMETERS = ("T", "n", "mu")

    def __post_init__(self):
        if self.parameter not in self.PARAMETERS:
            raise ParameterError(f"sweep parameter must be one of {self.PARAMETERS}, got {self.parameter!r}")
        if not self.values:
            raise ParameterError("sweep needs at least one value")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise ParameterError(f"sweep values must be strictly increasing: {self.values}")


_TRUE = {"1", "true", "yes", "on"}
_FALSE = {"0", "false", "no", "off"}


def coerce(name, raw):
    """Convert a string to the type of ExperimentConfig field ``name``."""
    fields = {f.name: f for f in dataclasses.fields(ExperimentConfig)}
    if name not in fields:
        raise ParameterError(f"unknown configuration key {name!r}")
    default = fields[name].default
    raw = raw.strip()
    if name in ("sparsity", "seed"):
        return None if raw.lower() in ("", "none") else _to_int(name, raw)
    if isinstance(default, bool):
        if raw.lower() in _TRUE:
            return True
        if raw.lower() in _FALSE:
            return False
        raise ParameterError(f"{name}: expected a boolean, got {raw!r}")
    if isinstance(default, int):
        return _to_int(name, raw)
    if isinstance(default, float):
        try:
            return float(raw)
        except ValueError:
            raise ParameterError(f"{name}: expected a number, got {raw!r}") from None
    return raw.lower()


def _to_int(name, raw):
    try:
        return int(raw)
    except ValueError:
        raise ParameterError(f"{name}: expected an integer, got {raw!r}") from None


def parse_config_text(text):
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParameterError(f"line {lineno}: expected key=value, got {line!r}")
        key, raw = (s.strip() for s in line.split("=", 1))
        values[key] = coerce(key, raw)
    return values


def load_config(path=None, **overrides):
    """Build a config from an optional file, then apply ``overrides`` (None values ignored)."""
    values = parse_config_text(Path(path).read_text(encoding="utf-8")) if path else {}
    values.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return ExperimentConfig(**values)
    except TypeError as exc:
        raise ParameterError(str(exc)) from None
