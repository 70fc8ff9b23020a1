import numpy as np
import pytest

from twodulv.consensus import (ExpectationMatrix, cosine_similarity,
                               expectation_matrix, fit_preference,
                               group_preference)
from twodulv.core import LinguisticScale, dulv
from twodulv.errors import ConvergenceError, DomainError, ValidationError


def dominant_eigenpair(rows):
    F = np.asarray(rows).T @ np.asarray(rows)
    vals, vecs = np.linalg.eigh(F)
    v = vecs[:, -1]
    if v.sum() < 0:
        v = -v
    return float(vals[-1]), v


class TestCosine:
    def test_basic(self):
        assert cosine_similarity([1, 0], [0, 1]) == pytest.approx(0.0)
        assert cosine_similarity([1, 2], [2, 4]) == pytest.approx(1.0)

    def test_zero_vector(self):
        with pytest.raises(DomainError):
            cosine_similarity([0, 0], [1, 2])

    def test_length_mismatch(self):
        with pytest.raises(ValidationError):
            cosine_similarity([1, 2], [1, 2, 3])


class TestExpectationMatrix:
    def test_values(self, scale):
        m = expectation_matrix("e1", [[dulv(5, 5, 2, 3), dulv(2, 3, 3, 3)]], scale)
        assert m.rows[0][0] == pytest.approx(0.52083333)
        assert m.rows[0][1] == pytest.approx(0.3125)

    def test_normalize_rows(self, scale):
        m = expectation_matrix("e1", [[dulv(5, 5, 2, 3), dulv(2, 3, 3, 3)]],
                               scale, normalize_rows=True)
        assert np.linalg.norm(m.rows[0]) == pytest.approx(1.0)

    def test_zero_row_cannot_normalize(self, scale):
        with pytest.raises(DomainError):
            expectation_matrix("e1", [[dulv(0, 0, 0, 0)]], scale, normalize_rows=True)

    def test_empty(self, scale):
        with pytest.raises(ValidationError):
            expectation_matrix("e1", [], scale)


class TestFitPreference:
    def test_diagonal(self):
        f = fit_preference(ExpectationMatrix("e", ((1.0, 0.0), (0.0, 2.0))))
        assert f.vector == pytest.approx((0.0, 1.0), abs=1e-9)
        assert f.eigenvalue == pytest.approx(4.0)
        assert f.residual <= 1e-8

    def test_matches_dense_solver(self):
        rng = np.random.default_rng(7)
        for _ in range(20):
            rows = rng.uniform(0.05, 1.0, size=(rng.integers(2, 6), rng.integers(2, 6)))
            f = fit_preference(ExpectationMatrix("e", tuple(map(tuple, rows))))
            val, vec = dominant_eigenpair(rows)
            assert f.eigenvalue == pytest.approx(val, rel=1e-10)
            assert np.abs(np.asarray(f.vector) - vec).max() < 1e-8
            assert np.linalg.norm(f.vector) == pytest.approx(1.0, abs=1e-12)

    def test_all_zero_rejected(self):
        with pytest.raises(ValidationError):
            fit_preference(ExpectationMatrix("e", ((0.0, 0.0), (0.0, 0.0))))

    def test_near_tied_spectrum_raises(self):
        # two leading eigenvalues within 1e-9 of each other stall the
        # power method; the error carries both Rayleigh quotients
        theta = np.pi / 7  # start vector must not already be the eigenvector
        q = np.array([[np.cos(theta), -np.sin(theta)],
                      [np.sin(theta), np.cos(theta)]])
        s = q @ np.diag([1.0, np.sqrt(1.0 - 1e-9)]) @ q.T
        with pytest.raises(ConvergenceError) as ei:
            fit_preference(ExpectationMatrix("e", tuple(map(tuple, s))))
        hi, lo = ei.value.rayleigh
        assert hi == pytest.approx(1.0, abs=1e-6)
        assert hi >= lo


class TestGroupPreference:
    def _fit(self, vec):
        n = float(np.linalg.norm(vec))
        return fit_preference(ExpectationMatrix("e", (tuple(x / n for x in vec),)))

    def test_weighted_blend_and_ranking(self):
        f1 = self._fit([3.0, 4.0])
        f2 = self._fit([4.0, 3.0])
        res = group_preference([f1, f2], [0.5, 0.5], ["x", "y"])
        assert res.group_vector == pytest.approx((0.7, 0.7))
        assert res.ranking == ("x", "y")  # tie keeps declaration order
        assert res.ties == (("x", "y"),)

    def test_strict_ranking(self):
        f1 = self._fit([1.0, 2.0, 3.0])
        res = group_preference([f1], [1.0], ["p", "q", "r"])
        assert res.ranking == ("r", "q", "p")
        assert res.ties == ()

    def test_validation(self):
        f = self._fit([1.0, 2.0])
        with pytest.raises(ValidationError):
            group_preference([], [], ["x", "y"])
        with pytest.raises(ValidationError):
            group_preference([f], [0.5, 0.5], ["x", "y"])
        with pytest.raises(ValidationError):
            group_preference([f], [1.0], ["x", "y", "z"])
