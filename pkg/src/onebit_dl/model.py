"""Synthetic generative model for blind one-bit compressed sensing.

Signals are ``x_i = Phi @ s_i`` with Bernoulli-Gaussian sparse codes
``s_i``; only the signs ``Y = sign(A @ X + V) = sign(D @ S + V)`` are
observed, where ``D = A @ Phi`` is the dictionary to be learned.

Matrices are plain float64 ndarrays: sparse codes are K x T (one column
per training signal), dictionaries n x K, sign measurements n x T.
"""

from dataclasses import dataclass, field

import numpy as np

from onebit_dl.errors import NumericError, ParameterError


@dataclass(frozen=True)
class RngStream:
    """Reproducible random stream keyed by ``(seed, stream, context)``.

    ``stream`` is the Monte Carlo trial index; ``context`` optionally folds
    in extra identifiers (e.g. the sweep value) so that distinct experiment
    cells never share samples.
    """

    seed: int
    stream: int = 0
    context: tuple = field(default=())

    def generator(self):
        ss = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.stream), *map(int, self.context)))
        return np.random.Generator(np.random.PCG64(ss))


def as_generator(rng):
    if isinstance(rng, RngStream):
        return rng.generator()
    if isinstance(rng, np.random.Generator):
        return rng
    raise ParameterError(f"expected RngStream or numpy Generator, got {type(rng).__name__}")


def sign(x):
    """Entrywise sign with the convention ``sign(0) = +1``."""
    x = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(x)):
        raise NumericError("sign of a non-finite value")
    return np.where(x >= 0, 1.0, -1.0)


def sign_scalar(x):
    return float(sign(x))


def gen_sparse_codes(K, T, p, sigma_r, rng):
    """Draw a K x T Bernoulli-Gaussian code matrix with unit-norm columns.

    Each entry is active with probability ``p`` and active values are
    ``Normal(0, sigma_r**2)``. Columns with no active entry are redrawn,
    then every column is scaled to unit Euclidean norm.
    """
    if not 0 < p < 1:
        raise ParameterError(f"activity probability must lie in (0, 1), got {p}")
    if not sigma_r > 0:
        raise ParameterError(f"sigma_r must be positive, got {sigma_r}")
    if K < 1 or T < 1:
        raise ParameterError(f"K and T must be >= 1, got K={K}, T={T}")
    gen = as_generator(rng)

    S = np.zeros((K, T))
    todo = np.arange(T)
    while todo.size:
        active = gen.random((K, todo.size)) < p
        values = sigma_r * gen.standard_normal((K, todo.size))
        S[:, todo] = np.where(active, values, 0.0)
        todo = todo[~np.any(S[:, todo] != 0, axis=0)]
    return S / np.linalg.norm(S, axis=0)


def gen_gaussian_matrix(rows, cols, rng, normalize_columns=False):
    if rows < 1 or cols < 1:
        raise ParameterError(f"matrix dimensions must be >= 1, got {rows}x{cols}")
    M = as_generator(rng).standard_normal((rows, cols))
    if normalize_columns:
        M /= np.linalg.norm(M, axis=0)
    return M


@dataclass
class ModelInstance:
    A: np.ndarray  # n x m sensing matrix
    Phi: np.ndarray  # m x K sparse domain, unit-norm columns
    D: np.ndarray  # n x K, A @ Phi
    S: np.ndarray  # K x T sparse codes
    X: np.ndarray  # m x T signals, Phi @ S
    V: np.ndarray  # n x T measurement noise
    Y: np.ndarray  # n x T signs in {-1, +1}

    @property
    def shape(self):
        n, m = self.A.shape
        K, T = self.S.shape
        return {"m": m, "n": n, "K": K, "T": T}


def synthesize(cfg, rng):
    """Draw one problem instance from ``cfg`` (fields m, n, K, T, p, sigma_r, sigma_n).

    Draw order is fixed (S, A, Phi, V) so that a given stream always
    produces the same instance.
    """
    if cfg.sigma_n < 0:
        raise ParameterError(f"sigma_n must be >= 0, got {cfg.sigma_n}")
    gen = as_generator(rng)
    S = gen_sparse_codes(cfg.K, cfg.T, cfg.p, cfg.sigma_r, gen)
    A = gen_gaussian_matrix(cfg.n, cfg.m, gen)
    Phi = gen_gaussian_matrix(cfg.m, cfg.K, gen, normalize_columns=True)
    if cfg.sigma_n > 0:
        V = cfg.sigma_n * gen.standard_normal((cfg.n, cfg.T))
    else:
        V = np.zeros((cfg.n, cfg.T))
    D = A @ Phi
    return ModelInstance(A=A, Phi=Phi, D=D, S=S, X=Phi @ S, V=V, Y=sign(D @ S + V))
