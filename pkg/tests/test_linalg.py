import math

import numpy as np
import pytest

import npspectra as nps


class TestInfNorm:
    def test_identity(self):
        assert nps.inf_norm(np.eye(7)) == 1.0

    def test_small_complex(self):
        a = np.array([[1.0, -2.0], [3.0j, 0.0]])
        assert nps.inf_norm(a) == 3.0

    def test_matches_exact_sum_oracle(self, rng):
        a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
        oracle = max(math.fsum(abs(v) for v in row) for row in a)
        assert nps.inf_norm(a) == pytest.approx(oracle, rel=1e-14)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            nps.inf_norm(np.array([[np.inf, 0.0], [0.0, 1.0]]))


class TestEigenvalues:
    def test_diagonal(self):
        ev = nps.eigenvalues(np.diag([1.0, 2.0j, -3.0]))
        assert sorted(ev, key=lambda z: (z.real, z.imag)) == pytest.approx([-3.0, 2.0j, 1.0])

    def test_companion_of_z2_minus_1(self):
        comp = np.array([[0.0, 1.0], [1.0, 0.0]])
        ev = np.sort_complex(nps.eigenvalues(comp))
        np.testing.assert_allclose(ev, [-1.0, 1.0], atol=1e-14)

    def test_product_equals_determinant(self, rng):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        det = np.linalg.det(a)  # LU-based oracle
        assert np.prod(nps.eigenvalues(a)) == pytest.approx(det, rel=1e-8)

    def test_similarity_invariance(self, rng):
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        d = np.diag(rng.uniform(0.5, 2.0, size=6))
        sim = d @ a @ np.linalg.inv(d)
        ev_a = np.sort_complex(nps.eigenvalues(a))
        ev_s = np.sort_complex(nps.eigenvalues(sim))
        np.testing.assert_allclose(ev_a, ev_s, atol=1e-8)

    def test_rejects_rectangular(self):
        with pytest.raises(ValueError):
            nps.eigenvalues(np.zeros((2, 3)))


class TestResolventLowerNorm:
    def test_zero_matrix(self):
        assert nps.resolvent_lower_norm(np.zeros((5, 5)), 0.5) == pytest.approx(0.5, rel=1e-14)

    def test_diagonal_matrix(self):
        d = np.array([0.3, -0.1 + 0.2j, 0.45])
        mu = 0.5
        nu = nps.resolvent_lower_norm(np.diag(d), mu)
        assert nu == pytest.approx(np.abs(d - mu).min(), rel=1e-12)

    def test_neumann_series_lower_bound(self, rng):
        a = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
        mu = 2.0 * nps.inf_norm(a)
        nu = nps.resolvent_lower_norm(a, mu)
        assert nu >= nps.inf_norm(a) - 1e-10

    def test_never_exceeds_spectral_distance(self, rng):
        a = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        ev = nps.eigenvalues(a)
        for mu in (0.5, 1.0 + 1.0j, -2.0):
            nu = nps.resolvent_lower_norm(a, mu)
            assert nu <= np.abs(ev - mu).min() + 1e-10

    def test_singular_shift_returns_zero(self):
        a = np.diag([0.5, 0.25])
        assert nps.resolvent_lower_norm(a, 0.5) == 0.0


class TestHermitianTopEigenpair:
    def test_diagonal(self):
        val, vec = nps.hermitian_top_eigenpair(np.diag([3.0, 1.0, -2.0]))
        assert val == 3.0
        np.testing.assert_allclose(np.abs(vec), [1.0, 0.0, 0.0], atol=1e-14)

    def test_swap_matrix(self):
        val, vec = nps.hermitian_top_eigenpair(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert val == pytest.approx(1.0, rel=1e-14)
        np.testing.assert_allclose(np.abs(vec), [1 / math.sqrt(2)] * 2, atol=1e-12)

    def test_against_general_solver(self, rng):
        a = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
        h = (a + a.conj().T) / 2
        val, vec = nps.hermitian_top_eigenpair(h)
        assert val == pytest.approx(max(nps.eigenvalues(h).real), abs=1e-10)
        assert np.linalg.norm(vec) == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(h @ vec, val * vec, atol=1e-10)

    def test_rejects_non_hermitian(self, rng):
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        with pytest.raises(ValueError):
            nps.hermitian_top_eigenpair(a)
