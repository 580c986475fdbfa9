import numpy as np
import pytest

from matfac import (
    DegenerateDenominatorError,
    DimMismatchError,
    EmptyInputError,
    LoadingPair,
    RankDeficientError,
    SimConfig,
    common_components,
    loading_variation,
    replication_summary,
    rolling_stats,
    simulate_panel,
    space_distance,
    vec_factor_distance,
)


class TestSpaceDistance:
    def test_identical_spans(self):
        rng = np.random.default_rng(0)
        q = rng.standard_normal((10, 3))
        assert space_distance(q, q) == 0.0

    def test_orthogonal_spans(self):
        e1 = np.array([[1.0], [0.0]])
        e2 = np.array([[0.0], [1.0]])
        assert space_distance(e1, e2) == 1.0

    def test_hand_value(self):
        # one basis vector at 45 degrees: D = sqrt(1 - cos^2) = sqrt(1/2)
        e1 = np.array([[1.0], [0.0]])
        diag = np.array([[1.0], [1.0]]) / np.sqrt(2.0)
        assert abs(space_distance(e1, diag) - np.sqrt(0.5)) <= 1e-12

    def test_axioms_on_random_pairs(self):
        rng = np.random.default_rng(1)
        for _ in range(100):
            q1 = rng.standard_normal((12, int(rng.integers(1, 4))))
            q2 = rng.standard_normal((12, int(rng.integers(1, 4))))
            d12 = space_distance(q1, q2)
            d21 = space_distance(q2, q1)
            assert 0.0 <= d12 <= 1.0
            assert abs(d12 - d21) <= 1e-12

    def test_right_multiplication_invariance(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            q = rng.standard_normal((15, 3))
            mix = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
            assert space_distance(q @ mix, q) <= 1e-10

    def test_column_sign_flips(self):
        rng = np.random.default_rng(3)
        q = rng.standard_normal((15, 3))
        flipped = q * np.array([1.0, -1.0, -1.0])
        assert space_distance(q, flipped) <= 1e-12

    def test_errors(self):
        with pytest.raises(DimMismatchError):
            space_distance(np.ones((3, 1)), np.ones((4, 1)))
        with pytest.raises(RankDeficientError):
            space_distance(np.ones((4, 2)), np.eye(4, 2))


class TestVecFactorDistance:
    def test_exact(self):
        rng = np.random.default_rng(4)
        f = rng.standard_normal((10, 2, 3))
        assert vec_factor_distance(f, f) == 0.0

    def test_invariant_to_entry_mixing(self):
        # mixing the vectorized entries by a fixed invertible map keeps the span
        rng = np.random.default_rng(5)
        f = rng.standard_normal((12, 2, 2))
        mix = rng.standard_normal((4, 4)) + 4.0 * np.eye(4)
        mixed_rows = f.transpose(0, 2, 1).reshape(12, 4) @ mix
        mixed = mixed_rows.reshape(12, 2, 2).transpose(0, 2, 1)
        assert vec_factor_distance(mixed, f) <= 1e-10

    def test_length_mismatch(self):
        with pytest.raises(DimMismatchError):
            vec_factor_distance(np.zeros((3, 2, 2)), np.zeros((4, 2, 2)))


class TestReplicationSummary:
    def test_constant(self):
        assert replication_summary([1.0, 1.0, 1.0]) == (1.0, 0.0)

    def test_hand_case(self):
        mean, sd = replication_summary([0.0, 2.0])
        assert mean == 1.0 and abs(sd - np.sqrt(2.0)) <= 1e-15

    def test_against_two_pass_oracle(self):
        rng = np.random.default_rng(6)
        values = rng.standard_normal(1000)
        mean, sd = replication_summary(values)
        brute_mean = sum(values) / len(values)
        brute_sd = np.sqrt(sum((v - brute_mean) ** 2 for v in values) / (len(values) - 1))
        assert abs(mean - brute_mean) <= 1e-12
        assert abs(sd - brute_sd) <= 1e-12

    def test_empty(self):
        with pytest.raises(EmptyInputError):
            replication_summary([])


class TestRollingStats:
    def test_perfect_fit(self):
        rng = np.random.default_rng(7)
        obs = rng.standard_normal((4, 3, 3))
        assert rolling_stats(obs, obs.copy()) == (0.0, 0.0)

    def test_mean_slice_gives_unit_rho(self):
        rng = np.random.default_rng(8)
        obs = rng.standard_normal((5, 3, 4))
        fitted = np.broadcast_to(obs.mean(axis=0), obs.shape).copy()
        _, rho = rolling_stats(obs, fitted)
        assert abs(rho - 1.0) <= 1e-12

    def test_hand_computed(self):
        obs = np.array([[[1.0, 2.0], [3.0, 4.0]], [[5.0, 6.0], [7.0, 8.0]]])
        fitted = np.zeros_like(obs)
        mse, rho = rolling_stats(obs, fitted)
        # sum of squares 1..8 = 204 over 2*2*2 = 8 cells
        assert abs(mse - 204.0 / 8.0) <= 1e-12
        # each entry deviates from the mean slice by +-2: denominator 8 * 4
        assert abs(rho - 204.0 / 32.0) <= 1e-12

    def test_noise_energy_identity(self):
        # scoring the true common components against the observations
        # leaves exactly the average noise energy
        cfg = SimConfig(t_len=6, p1=5, p2=4, seed=9)
        panel, truth = simulate_panel(cfg)
        s = common_components(truth.loadings, truth.factors)
        mse, _ = rolling_stats(panel, s)
        noise_energy = float(np.sum(truth.noise**2)) / truth.noise.size
        assert abs(mse - noise_energy) <= 1e-10

    def test_degenerate_window(self):
        obs = np.ones((3, 2, 2))
        with pytest.raises(DegenerateDenominatorError):
            rolling_stats(obs, obs * 0.5)

    def test_shape_mismatch(self):
        with pytest.raises(DimMismatchError):
            rolling_stats(np.zeros((3, 2, 2)), np.zeros((3, 2, 3)))


class TestLoadingVariation:
    def test_identical(self):
        rng = np.random.default_rng(10)
        pair = LoadingPair(rng.standard_normal((8, 2)), rng.standard_normal((7, 2)))
        assert loading_variation(pair, pair) == 0.0

    def test_blockwise_rotation_invariance(self):
        rng = np.random.default_rng(11)
        r = rng.standard_normal((8, 2))
        c = rng.standard_normal((7, 2))
        q_r, _ = np.linalg.qr(rng.standard_normal((2, 2)))
        q_c, _ = np.linalg.qr(rng.standard_normal((2, 2)))
        assert loading_variation(LoadingPair(r @ q_r, c @ q_c), LoadingPair(r, c)) <= 1e-10

    def test_independent_loadings_in_range(self):
        rng = np.random.default_rng(12)
        curr = LoadingPair(rng.standard_normal((40, 2)), rng.standard_normal((40, 2)))
        prev = LoadingPair(rng.standard_normal((40, 2)), rng.standard_normal((40, 2)))
        v = loading_variation(curr, prev)
        assert 0.0 < v <= 1.0

    def test_shape_mismatch(self):
        a = LoadingPair(np.zeros((8, 2)), np.zeros((7, 2)))
        b = LoadingPair(np.zeros((8, 3)), np.zeros((7, 2)))
        with pytest.raises(DimMismatchError):
            loading_variation(a, b)
