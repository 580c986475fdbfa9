import numpy as np
import pytest

from matfac import (
    BadConfigError,
    NonFiniteError,
    NonSquareError,
    NonSymmetricError,
    RankDeficientError,
    gram_schmidt,
    kron,
    spd_inv_sqrt,
    spd_sqrt,
    spectral_norm,
    sym_eig,
    unvec,
    vec,
)


class TestSymEig:
    def test_identity(self):
        values, vectors = sym_eig(np.eye(3))
        assert np.array_equal(values, np.ones(3))
        assert np.array_equal(vectors, np.eye(3))

    def test_diagonal_descending(self):
        values, vectors = sym_eig(np.diag([4.0, 9.0]))
        assert np.allclose(values, [9.0, 4.0])
        # eigenvector for 9 is e2, for 4 is e1, pivots positive
        assert np.allclose(np.abs(vectors), [[0.0, 1.0], [1.0, 0.0]])
        assert vectors[1, 0] > 0 and vectors[0, 1] > 0

    def test_reconstruction(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            a = rng.standard_normal((5, 5))
            a = a + a.T
            values, vectors = sym_eig(a)
            recon = (vectors * values) @ vectors.T
            assert np.linalg.norm(recon - a) <= 1e-8 * np.linalg.norm(a)

    def test_orthonormal_vectors(self):
        rng = np.random.default_rng(1)
        a = rng.standard_normal((6, 6))
        _, vectors = sym_eig(a + a.T)
        assert np.linalg.norm(vectors.T @ vectors - np.eye(6)) <= 1e-10

    def test_bit_stable(self):
        rng = np.random.default_rng(2)
        a = rng.standard_normal((7, 7))
        a = a + a.T
        v1, w1 = sym_eig(a)
        v2, w2 = sym_eig(a.copy())
        assert np.array_equal(v1, v2) and np.array_equal(w1, w2)

    def test_errors(self):
        with pytest.raises(NonSquareError):
            sym_eig(np.ones((2, 3)))
        with pytest.raises(NonFiniteError):
            sym_eig(np.array([[1.0, np.nan], [np.nan, 1.0]]))
        with pytest.raises(NonSymmetricError):
            sym_eig(np.array([[1.0, 2.0], [0.0, 1.0]]))


class TestSpdInvSqrt:
    def test_identity(self):
        assert np.allclose(spd_inv_sqrt(np.eye(4)), np.eye(4), atol=1e-12)

    def test_diagonal_closed_form(self):
        out = spd_inv_sqrt(np.diag([4.0, 9.0]))
        assert np.allclose(out, np.diag([0.5, 1.0 / 3.0]), atol=1e-12)

    def test_defining_property(self):
        # acceptance-grade property: A^(-1/2) A A^(-1/2) = I on random SPD
        rng = np.random.default_rng(3)
        worst = 0.0
        for i in range(100):
            n = int(rng.integers(1, 11))
            b = rng.standard_normal((n, n))
            a = b.T @ b + np.eye(n)
            half = spd_inv_sqrt(a)
            worst = max(worst, np.linalg.norm(half @ a @ half - np.eye(n)))
        assert worst <= 1e-8

    def test_rank_deficient(self):
        a = np.diag([1.0, 0.0])
        with pytest.raises(RankDeficientError) as info:
            spd_inv_sqrt(a)
        assert info.value.floored == 1

    def test_bad_floor(self):
        with pytest.raises(BadConfigError):
            spd_inv_sqrt(np.eye(2), rel_floor=1.5)


def test_spd_sqrt_squares_back():
    rng = np.random.default_rng(4)
    b = rng.standard_normal((5, 5))
    a = b.T @ b + np.eye(5)
    root = spd_sqrt(a)
    assert np.linalg.norm(root @ root - a) <= 1e-10 * np.linalg.norm(a)


class TestGramSchmidt:
    def test_orthonormal_fixed_point(self):
        q = np.eye(5)[:, :3]
        assert np.allclose(gram_schmidt(q), q, atol=1e-12)

    def test_hand_case(self):
        # columns (1,0) and (1,1): second column minus its projection on the
        # first leaves (0,1); both normalize to the identity
        m = np.array([[1.0, 1.0], [0.0, 1.0]])
        assert np.allclose(gram_schmidt(m), np.eye(2), atol=1e-12)

    def test_projector_preserved(self):
        rng = np.random.default_rng(5)
        m = rng.standard_normal((50, 3))
        q = gram_schmidt(m)
        assert np.linalg.norm(q.T @ q - np.eye(3)) <= 1e-10
        proj_oracle = m @ np.linalg.inv(m.T @ m) @ m.T
        assert np.linalg.norm(q @ q.T - proj_oracle) <= 1e-10

    def test_rank_deficient(self):
        m = np.array([[1.0, 2.0], [2.0, 4.0], [3.0, 6.0]])
        with pytest.raises(RankDeficientError):
            gram_schmidt(m)
        with pytest.raises(RankDeficientError):
            gram_schmidt(np.ones((2, 3)))  # more columns than rows


class TestKronVec:
    def test_kron_identity(self):
        assert np.array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_kron_hand_case(self):
        out = kron(np.array([[1.0, 2.0]]), np.array([[3.0], [4.0]]))
        assert np.array_equal(out, np.array([[3.0, 6.0], [4.0, 8.0]]))

    def test_vec_column_major(self):
        assert np.array_equal(
            vec(np.array([[1.0, 2.0], [3.0, 4.0]])), np.array([1.0, 3.0, 2.0, 4.0])
        )
        assert np.array_equal(vec(np.zeros((3, 2))), np.zeros(6))

    def test_vec_round_trip(self):
        rng = np.random.default_rng(6)
        m = rng.standard_normal((4, 7))
        assert np.array_equal(unvec(vec(m), 4, 7), m)

    def test_kron_vec_identity(self):
        rng = np.random.default_rng(7)
        for _ in range(10):
            a, x, b = rng.standard_normal((3, 3, 3))
            lhs = vec(a @ x @ b.T)
            rhs = kron(b, a) @ vec(x)
            assert np.linalg.norm(lhs - rhs) <= 1e-12


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(8)
    for _ in range(10):
        a = rng.standard_normal((6, 4))
        assert abs(spectral_norm(a) - np.linalg.svd(a, compute_uv=False)[0]) <= 1e-10
