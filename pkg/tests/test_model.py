import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebit_dl.errors import NumericError, ParameterError
from onebit_dl.harness.config import ExperimentConfig
from onebit_dl.model import (
    RngStream,
    gen_gaussian_matrix,
    gen_sparse_codes,
    sign,
    sign_scalar,
    synthesize,
)


class TestSign:
    @pytest.mark.parametrize("x, expected", [(3.7, 1.0), (-0.001, -1.0), (0.0, 1.0), (-0.0, 1.0)])
    def test_scalar(self, x, expected):
        assert sign_scalar(x) == expected

    @pytest.mark.parametrize("bad", [np.nan, np.inf, -np.inf])
    def test_non_finite(self, bad):
        with pytest.raises(NumericError):
            sign_scalar(bad)

    def test_idempotent(self, rng):
        Y = sign(rng.standard_normal((5, 7)))
        assert np.array_equal(sign(Y), Y)


class TestSparseCodes:
    def test_activity_rate(self):
        S = gen_sparse_codes(100, 1000, 0.01, 1.0, RngStream(3))
        nnz = np.count_nonzero(S, axis=0)
        # Binomial(100, 0.01) conditioned on >= 1 active entry (all-zero columns are redrawn):
        # sum_k k P(k) / (1 - P(0)) = 1 / (1 - 0.99**100) = 1.5774
        expected = 1.0 / (1.0 - 0.99**100)
        assert abs(expected - 1.5774) < 1e-4
        assert abs(nnz.mean() - expected) <= 0.2
        assert np.all(nnz >= 1)

    def test_unit_columns(self):
        S = gen_sparse_codes(100, 500, 0.01, 1.0, RngStream(4))
        np.testing.assert_allclose(np.linalg.norm(S, axis=0), 1.0, atol=1e-12)

    def test_rare_activity_resampled(self):
        S = gen_sparse_codes(5, 200, 0.001, 2.0, RngStream(5))
        assert np.all(np.count_nonzero(S, axis=0) >= 1)

    @pytest.mark.parametrize("p, sigma_r", [(0.0, 1.0), (1.0, 1.0), (0.1, 0.0), (0.1, -1.0)])
    def test_invalid(self, p, sigma_r):
        with pytest.raises(ParameterError):
            gen_sparse_codes(10, 10, p, sigma_r, RngStream(0))


class TestGaussianMatrix:
    def test_normalized_columns(self):
        Phi = gen_gaussian_matrix(50, 100, RngStream(1), normalize_columns=True)
        np.testing.assert_allclose(np.linalg.norm(Phi, axis=0), 1.0, atol=1e-12)

    def test_deterministic(self):
        a = gen_gaussian_matrix(1, 1, RngStream(99))
        b = gen_gaussian_matrix(1, 1, RngStream(99))
        assert a[0, 0] == b[0, 0]

    def test_moments(self):
        v = gen_gaussian_matrix(1000, 1, RngStream(7))[:, 0]
        assert abs(v.mean()) < 0.1
        assert abs(v.var() - 1.0) < 0.15

    def test_streams_differ(self):
        a = gen_gaussian_matrix(3, 3, RngStream(1, 0))
        b = gen_gaussian_matrix(3, 3, RngStream(1, 1))
        assert not np.array_equal(a, b)

    def test_bad_size(self):
        with pytest.raises(ParameterError):
            gen_gaussian_matrix(0, 3, RngStream(1))


class TestSynthesize:
    def test_paper_sizes(self):
        inst = synthesize(ExperimentConfig(), RngStream(11))
        assert inst.Y.shape == (100, 100)
        assert set(np.unique(inst.Y)) <= {-1.0, 1.0}
        assert inst.shape == {"m": 50, "n": 100, "K": 100, "T": 100}

    def test_relations(self):
        inst = synthesize(ExperimentConfig(T=30), RngStream(12))
        assert np.array_equal(inst.D, inst.A @ inst.Phi)
        assert np.array_equal(inst.X, inst.Phi @ inst.S)
        assert np.array_equal(inst.Y, sign(inst.D @ inst.S + inst.V))
        np.testing.assert_allclose(np.linalg.norm(inst.Phi, axis=0), 1.0, atol=1e-12)
        np.testing.assert_allclose(np.linalg.norm(inst.S, axis=0), 1.0, atol=1e-12)

    def test_noiseless(self):
        inst = synthesize(ExperimentConfig(T=30, sigma_n=0.0), RngStream(13))
        assert not inst.V.any()
        assert np.array_equal(inst.Y, sign(inst.D @ inst.S))

    def test_zero_product_maps_to_plus_one(self):
        D = np.array([[0.0, 0.0], [1.0, -1.0]])
        S = np.array([[1.0], [0.0]])
        assert sign(D @ S).tolist() == [[1.0], [1.0]]

    def test_reproducible(self):
        cfg = ExperimentConfig(T=20)
        a = synthesize(cfg, RngStream(5, 2))
        b = synthesize(cfg, RngStream(5, 2))
        for name in ("A", "Phi", "D", "S", "X", "V", "Y"):
            assert np.array_equal(getattr(a, name), getattr(b, name))

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**32), K=st.integers(2, 30), T=st.integers(1, 20))
    def test_norm_invariants(self, seed, K, T):
        inst = synthesize(ExperimentConfig(m=6, n=8, K=K, T=T, p=0.2), RngStream(seed))
        np.testing.assert_allclose(np.linalg.norm(inst.S, axis=0), 1.0, atol=1e-12)
        np.testing.assert_allclose(np.linalg.norm(inst.Phi, axis=0), 1.0, atol=1e-12)
