import numpy as np
import pytest

from matfac import (
    DimMismatchError,
    RankDeficientError,
    SimConfig,
    estimate_factors,
    factor_space_errors,
    gaussian_weights,
    gram_schmidt,
    make_projection_pair,
    simulate_panel,
    with_transforms,
)


def _scaled_orthonormal(rng, p, k):
    return np.sqrt(p) * gram_schmidt(rng.standard_normal((p, k)))


def test_exact_factors_under_identified_weights():
    # W1 = R with R'R = p1 I and W2 = C likewise force Fhat = F exactly
    rng = np.random.default_rng(0)
    r = _scaled_orthonormal(rng, 20, 3)
    c = _scaled_orthonormal(rng, 15, 2)
    f = rng.standard_normal((10, 3, 2))
    panel = r @ f @ c.T
    fhat = estimate_factors(panel, make_projection_pair(r, c))
    assert np.allclose(fhat, f, atol=1e-12)


def test_expansion_identity():
    # Fhat = H1 F H2' + W1' E W2 / (p1 p2), evaluated independently per slice
    cfg = SimConfig(t_len=6, p1=18, p2=14, k1=3, k2=2, seed=5)
    panel, truth = simulate_panel(cfg)
    w = gaussian_weights(18, 4, 14, 3, seed=9)
    fhat = estimate_factors(panel, w)
    truth = with_transforms(truth, w)
    for t in range(cfg.t_len):
        expected = truth.h1 @ truth.factors[t] @ truth.h2.T
        expected += w.w1.T @ truth.noise[t] @ w.w2 / (18 * 14)
        assert np.linalg.norm(fhat[t] - expected) <= 1e-10


def test_zero_panel():
    w = gaussian_weights(8, 2, 9, 2, seed=1)
    fhat = estimate_factors(np.zeros((4, 8, 9)), w)
    assert np.array_equal(fhat, np.zeros((4, 2, 2)))


def test_linearity():
    rng = np.random.default_rng(2)
    x = rng.standard_normal((5, 10, 12))
    y = rng.standard_normal((5, 10, 12))
    w = gaussian_weights(10, 3, 12, 3, seed=2)
    combo = estimate_factors(2.5 * x - 0.7 * y, w)
    parts = 2.5 * estimate_factors(x, w) - 0.7 * estimate_factors(y, w)
    assert np.linalg.norm(combo - parts) <= 1e-10


def test_dim_mismatch():
    w = gaussian_weights(8, 2, 9, 2, seed=1)
    with pytest.raises(DimMismatchError):
        estimate_factors(np.zeros((4, 9, 8)), w)


class TestFactorSpaceErrors:
    def _noiseless(self, seed, m1, m2):
        cfg = SimConfig(t_len=20, p1=20, p2=20, seed=seed)
        panel, truth = simulate_panel(cfg)
        panel = panel - truth.noise
        w = gaussian_weights(20, m1, 20, m2, seed=seed + 100)
        truth = with_transforms(truth, w)
        fhat = estimate_factors(panel, w)
        return factor_space_errors(fhat, truth.factors, truth.h1, truth.h2)

    def test_noiseless_exact(self):
        report = self._noiseless(0, 3, 3)
        assert report["per_t_transform_error"] <= 1e-8
        assert report["projector_error"] <= 1e-8
        assert report["projector_error_M"] <= 1e-8

    def test_noiseless_overestimated(self):
        report = self._noiseless(1, 4, 5)
        assert report["per_t_transform_error"] <= 1e-8
        assert report["projector_error"] <= 1e-8
        assert report["projector_error_M"] <= 1e-8

    def test_square_transform_degenerates(self):
        # m = k: the aligned projector equals the raw one
        cfg = SimConfig(t_len=15, p1=25, p2=25, seed=3)
        panel, truth = simulate_panel(cfg)
        w = gaussian_weights(25, 3, 25, 3, seed=4)
        truth = with_transforms(truth, w)
        fhat = estimate_factors(panel, w)
        report = factor_space_errors(fhat, truth.factors, truth.h1, truth.h2)
        assert abs(report["projector_error_M"] - report["projector_error"]) <= 1e-10

    def test_error_shrinks_with_dimensions(self):
        means = []
        for p in (20, 40):
            errors = []
            for seed in range(100):
                cfg = SimConfig(t_len=20, p1=p, p2=p, seed=seed)
                panel, truth = simulate_panel(cfg)
                w = gaussian_weights(p, 3, p, 3, seed=seed + 1000)
                truth = with_transforms(truth, w)
                fhat = estimate_factors(panel, w)
                report = factor_space_errors(fhat, truth.factors, truth.h1, truth.h2)
                errors.append(report["projector_error"])
            means.append(np.mean(errors))
        assert means[1] < means[0]

    def test_rank_deficient_transform(self):
        rng = np.random.default_rng(6)
        fhat = rng.standard_normal((10, 3, 3))
        truth = rng.standard_normal((10, 3, 3))
        h_bad = np.zeros((3, 3))
        h_ok = np.eye(3)
        with pytest.raises(RankDeficientError):
            factor_space_errors(fhat, truth, h_bad, h_ok)

    def test_reports_min_singular_values(self):
        report = self._noiseless(7, 4, 4)
        nu1, nu2 = report["nu_min"]
        assert nu1 > 0 and nu2 > 0
