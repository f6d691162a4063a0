import math

import numpy as np
import pytest

from csr.basis import BasisSpec, evaluate
from csr.design import build_design, uniform_grid
from csr.errors import DomainError, InputValidationError
from csr.fit import fit_batch
from csr.synth import NoiseModel, sample_noise, sample_observation

SQRT2 = math.sqrt(2.0)


def model(k=10, tau2=1.0, sigma=0.0, seed=0, **kw):
    spec = BasisSpec("cosine", k)
    return NoiseModel(spec, np.full(spec.n_functions, tau2), sigma, seed, **kw)


class TestNoiseModel:
    def test_length_mismatch(self):
        with pytest.raises(InputValidationError):
            NoiseModel(BasisSpec("cosine", 3), [1.0, 1.0], 0.0, 0)

    def test_negative_variance(self):
        with pytest.raises(InputValidationError):
            NoiseModel(BasisSpec("cosine", 1), [1.0, -1.0], 0.0, 0)

    def test_negative_sigma(self):
        with pytest.raises(InputValidationError):
            model(sigma=-0.1)

    def test_bad_correlation_factor(self):
        with pytest.raises(InputValidationError):
            model(k=2, correlation_factor=np.ones((3, 3)))


class TestSampleNoise:
    def test_all_zero(self):
        b = sample_noise(model(tau2=0.0), uniform_grid(50), 4)
        assert np.all(b.values == 0)

    def test_constant_mode_only(self):
        spec = BasisSpec("cosine", 5)
        m = NoiseModel(spec, [1, 0, 0, 0, 0, 0], 0.0, 3)
        v = sample_noise(m, uniform_grid(40), 6).values
        np.testing.assert_allclose(v, v[0:1].repeat(40, axis=0), atol=0)
        assert np.all(v[0] != 0)

    def test_reproducible(self):
        a = sample_noise(model(sigma=0.3, seed=42), uniform_grid(100), 5).values
        b = sample_noise(model(sigma=0.3, seed=42), uniform_grid(100), 5).values
        c = sample_noise(model(sigma=0.3, seed=43), uniform_grid(100), 5).values
        assert np.array_equal(a, b)
        assert not np.array_equal(a, c)

    def test_series_independent_of_p(self):
        a = sample_noise(model(sigma=0.3, seed=9), uniform_grid(60), 3).values
        b = sample_noise(model(sigma=0.3, seed=9), uniform_grid(60), 10).values
        assert np.array_equal(a, b[:, :3])

    def test_coefficient_variance(self):
        grid = uniform_grid(512)
        m = model(k=10, tau2=1.0, seed=2024)
        batch = sample_noise(m, grid, 2000)
        c = fit_batch(build_design(m.spec, grid), batch).coeffs
        np.testing.assert_allclose(c.var(axis=1, ddof=1), 1.0, rtol=0.10)

    def test_zero_mean(self):
        grid = uniform_grid(200)
        m = model(k=8, tau2=0.5, sigma=0.4, seed=7)
        v = sample_noise(m, grid, 5000).values
        phi = evaluate(m.spec, grid.points)
        sd = np.sqrt(phi**2 @ m.variances + m.residual_sigma**2)
        ok = np.abs(v.mean(axis=1)) < 4 * sd / math.sqrt(5000)
        assert ok.mean() >= 0.99

    def test_correlated_modes(self):
        spec = BasisSpec("cosine", 1)
        rho = 0.8
        lf = np.array([[1.0, 0.0], [rho, math.sqrt(1 - rho**2)]])
        m = NoiseModel(spec, [1.0, 4.0], 0.0, 5, correlation_factor=lf)
        grid = uniform_grid(64)
        c = fit_batch(build_design(spec, grid), sample_noise(m, grid, 4000)).coeffs
        cov = np.cov(c)
        np.testing.assert_allclose(cov, [[1.0, 2 * rho], [2 * rho, 4.0]], rtol=0.1)


class TestSampleObservation:
    def test_zero_noise(self):
        g = uniform_grid(30)
        b = sample_observation(lambda t: t**2, model(tau2=0.0), g, 3)
        np.testing.assert_array_equal(b.values, np.repeat((g.points**2)[:, None], 3, axis=1))

    def test_zero_mean_matches_noise(self):
        g = uniform_grid(30)
        m = model(sigma=0.2, seed=11)
        a = sample_observation(lambda t: 0.0, m, g, 4).values
        b = sample_noise(m, g, 4).values
        assert np.array_equal(a, b)

    def test_unbiased(self):
        g = uniform_grid(400)
        spec = BasisSpec("cosine", 20)
        m = NoiseModel(spec, np.full(21, 0.04), 0.0, 123)
        b = sample_observation(lambda t: SQRT2 * np.cos(3 * np.pi * t), m, g, 500)
        c = fit_batch(build_design(spec, g), b).coeffs
        assert c[3].mean() == pytest.approx(1.0, abs=0.05)

    def test_non_finite_mean(self):
        with pytest.raises(DomainError):
            sample_observation(lambda t: np.full_like(t, np.inf), model(), uniform_grid(10), 1)
