import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from onebit_dl.errors import ParameterError
from onebit_dl.matio import load_matrix, save_matrix
from onebit_dl.metrics import TrialResult, average_nmse, nmse, sign_consistency
from onebit_dl.model import sign


class TestNmse:
    def test_examples(self, rng):
        X = rng.standard_normal((5, 8))
        assert nmse(X, np.zeros_like(X)) == pytest.approx(0.0, abs=1e-12)
        assert nmse(X, 0.9 * X) == pytest.approx(-20.0, abs=1e-9)
        assert nmse(X, X) == -math.inf

    def test_errors(self):
        with pytest.raises(ParameterError):
            nmse(np.zeros((2, 2)), np.ones((2, 2)))
        with pytest.raises(ParameterError):
            nmse(np.ones((2, 2)), np.ones((2, 3)))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32))
    def test_column_permutation_invariant(self, seed):
        gen = np.random.default_rng(seed)
        X, Xh = gen.standard_normal((4, 9)), gen.standard_normal((4, 9))
        perm = gen.permutation(9)
        assert nmse(X[:, perm], Xh[:, perm]) == pytest.approx(nmse(X, Xh), abs=1e-10)

    def test_tiny_error_finite(self, rng):
        X = rng.standard_normal((3, 3))
        Xh = X.copy()
        Xh[0, 0] = np.nextafter(Xh[0, 0], np.inf)
        assert -400 < nmse(X, Xh) < -250


class TestSignConsistency:
    def test_perfect_and_flipped(self, rng):
        D, S = rng.standard_normal((6, 4)), rng.standard_normal((4, 5))
        Y = sign(D @ S)
        assert sign_consistency(Y, D, S) == 1.0
        assert sign_consistency(-Y, D, S) == 0.0

    def test_hand_count(self):
        D = np.eye(4)
        S = np.array([[1.0, -1, 0, 2], [0, 3, -1, 1], [-2, 0, 0, 1], [1, 1, 1, -1]])
        Y = np.array([[1.0, 1, 1, -1], [1, 1, 1, 1], [-1, -1, 1, 1], [1, 1, -1, -1]])
        # sign(S) row by row vs Y (sign(0) = +1): 2 + 3 + 3 + 3 matches out of 16
        matches = sum(sign(S[r, c]) == Y[r, c] for r in range(4) for c in range(4))
        assert matches == 11
        assert sign_consistency(Y, D, S) == 11 / 16

    def test_mismatch(self):
        with pytest.raises(ParameterError):
            sign_consistency(np.ones((3, 2)), np.ones((3, 4)), np.ones((4, 3)))


class TestAverage:
    def test_examples(self):
        assert average_nmse([-10.0, -20.0]) == -15.0
        assert average_nmse([-7.5]) == -7.5
        assert average_nmse([-3.25] * 50) == -3.25

    def test_trial_results(self):
        trials = [TrialResult("l2", -4.0, 1.0), TrialResult("l2", -6.0, 1.0)]
        assert average_nmse(trials) == -5.0

    def test_sentinel_excluded(self, caplog):
        assert average_nmse([-10.0, -math.inf, -20.0]) == -15.0
        assert "excluded 1" in caplog.text

    def test_empty(self):
        with pytest.raises(ParameterError):
            average_nmse([])
        with pytest.raises(ParameterError):
            average_nmse([-math.inf])


class TestMatrixFile:
    def test_roundtrip_exact(self, tmp_path, rng):
        M = rng.standard_normal((7, 3)) * 10.0 ** rng.integers(-30, 30, (7, 3))
        save_matrix(tmp_path / "m.txt", M)
        assert np.array_equal(load_matrix(tmp_path / "m.txt"), M)
        assert (tmp_path / "m.txt").read_text().splitlines()[0] == "7 3"

    def test_vector_is_column(self, tmp_path):
        save_matrix(tmp_path / "c.txt", [1.0, 2.5])
        assert load_matrix(tmp_path / "c.txt").shape == (2, 1)

    def test_bad_file(self, tmp_path):
        (tmp_path / "bad.txt").write_text("2 2\n1 2 3\n")
        with pytest.raises(ParameterError):
            load_matrix(tmp_path / "bad.txt")
