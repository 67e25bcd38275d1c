import numpy as np
import pytest

from flowuq.linalg import (
    RankDeficiencyError,
    SingularMatrixError,
    lstsq,
    lu_solve,
    sym_eig,
)


class TestSymEig:
    def test_identity(self):
        w, v = sym_eig(np.eye(3))
        assert np.allclose(w, [1.0, 1.0, 1.0])
        assert np.allclose(v.T @ v, np.eye(3), atol=1e-12)

    def test_two_by_two_hand_solution(self):
        # char. poly of [[2,1],[1,2]] is (l-3)(l-1); eigenvectors (1,1), (1,-1)
        w, v = sym_eig([[2.0, 1.0], [1.0, 2.0]])
        assert np.allclose(w, [3.0, 1.0], atol=1e-12)
        s = 1.0 / np.sqrt(2.0)
        assert np.allclose(np.abs(v[:, 0]), [s, s], atol=1e-10)
        assert np.allclose(np.abs(v[:, 1]), [s, s], atol=1e-10)
        assert abs(v[:, 0] @ v[:, 1]) < 1e-12

    def test_diagonal(self):
        w, v = sym_eig(np.diag([5.0, 2.0, 0.0]))
        assert np.allclose(w, [5.0, 2.0, 0.0])
        assert np.allclose(np.abs(v), np.eye(3), atol=1e-12)

    def test_rejects_nonsquare(self):
        with pytest.raises(ValueError):
            sym_eig(np.ones((2, 3)))

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError, match="symmetric"):
            sym_eig([[1.0, 2.0], [0.0, 1.0]])

    def test_eigenpair_residuals_random(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            a = rng.standard_normal((10, 10))
            a = a + a.T
            w, v = sym_eig(a)
            fro = np.linalg.norm(a)
            for k in range(10):
                res = np.linalg.norm(a @ v[:, k] - w[k] * v[:, k])
                assert res <= 1e-10 * fro
            assert np.max(np.abs(v.T @ v - np.eye(10))) <= 1e-10
            assert np.all(np.diff(w) <= 1e-12 * fro)

    def test_reconstruction_random(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            a = rng.standard_normal((10, 10))
            a = a + a.T
            w, v = sym_eig(a)
            recon = (v * w) @ v.T
            assert np.linalg.norm(recon - a) <= 1e-9 * np.linalg.norm(a)


class TestLuSolve:
    def test_identity(self):
        assert np.allclose(lu_solve(np.eye(2), [4.0, 7.0]), [4.0, 7.0])

    def test_diagonal(self):
        assert np.allclose(lu_solve([[2.0, 0.0], [0.0, 4.0]], [2.0, 8.0]), [1.0, 2.0])

    def test_hand_elimination(self):
        # x + y = 3, x - y = 1  ->  x = 2, y = 1
        assert np.allclose(lu_solve([[1.0, 1.0], [1.0, -1.0]], [3.0, 1.0]), [2.0, 1.0])

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            lu_solve([[1.0, 2.0], [2.0, 4.0]], [1.0, 1.0])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            lu_solve(np.eye(3), [1.0, 2.0])

    def test_roundtrip_random(self):
        rng = np.random.default_rng(3)
        for n in (4, 9, 20):
            a = rng.standard_normal((n, n)) + n * np.eye(n)
            x = rng.standard_normal(n)
            b = a @ x
            got = lu_solve(a, b)
            assert np.linalg.norm(got - x) <= 1e-9 * np.linalg.norm(x)
            res = np.linalg.norm(a @ got - b)
            assert res <= 1e-10 * (np.linalg.norm(a) * np.linalg.norm(got) + np.linalg.norm(b))


class TestLstsq:
    def test_square_identity(self):
        assert np.allclose(lstsq(np.eye(3), [1.0, 2.0, 3.0]), [1.0, 2.0, 3.0])

    def test_column_of_ones_gives_mean(self):
        c = lstsq([[1.0], [1.0], [1.0]], [1.0, 2.0, 3.0])
        assert np.allclose(c, [2.0])

    def test_consistent_tall_system(self):
        c = lstsq([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]], [5.0, 6.0, 0.0])
        assert np.allclose(c, [5.0, 6.0])

    def test_matches_lu_when_square(self):
        rng = np.random.default_rng(11)
        a = rng.standard_normal((6, 6)) + 6 * np.eye(6)
        y = rng.standard_normal(6)
        assert np.allclose(lstsq(a, y), lu_solve(a, y), atol=1e-10)

    def test_rank_deficiency_counts_columns(self):
        bad = np.array([[1.0, 1.0, 0.0], [1.0, 1.0, 0.0], [1.0, 1.0, 1.0], [1.0, 1.0, 2.0]])
        with pytest.raises(RankDeficiencyError) as err:
            lstsq(bad, [1.0, 2.0, 3.0, 4.0])
        assert err.value.n_deficient == 1

    def test_underdetermined_rejected(self):
        with pytest.raises(ValueError):
            lstsq(np.ones((2, 3)), [1.0, 2.0])

    def test_residual_orthogonal_to_column_space(self):
        rng = np.random.default_rng(19)
        for _ in range(5):
            design = rng.standard_normal((30, 6))
            y = rng.standard_normal(30)
            c = lstsq(design, y)
            grad = design.T @ (design @ c - y)
            bound = 1e-9 * np.linalg.norm(design) * np.linalg.norm(y)
            assert np.max(np.abs(grad)) <= bound
