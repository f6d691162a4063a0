import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from csr.basis import BasisSpec
from csr.design import build_design, make_grid, uniform_grid
from csr.errors import DomainError, ShapeError
from csr.fit import CoefficientSet, SeriesBatch, fit_batch, fit_single
from csr.transform import denoise, evaluate, reconstruct, residuals

SQRT2 = math.sqrt(2.0)


def unit(spec, l, p=1):
    c = np.zeros((spec.n_functions, p))
    c[spec.column(l)] = 1.0
    return CoefficientSet(c, spec)


class TestEvaluate:
    def test_constant(self):
        assert evaluate(unit(BasisSpec("cosine", 3), 0), 0.77)[0] == 1.0

    def test_cosine_zero(self):
        assert evaluate(unit(BasisSpec("cosine", 3), 1), 0.5)[0] == pytest.approx(0.0, abs=1e-15)

    def test_truncated_linear(self):
        g = uniform_grid(4096)
        cs = fit_single(build_design(BasisSpec("cosine", 5), g), g.points)
        oracle = 0.5 + sum(SQRT2 * ((-1) ** l - 1) / (l * l * math.pi**2) * SQRT2 * math.cos(l * math.pi / 2) for l in range(1, 6))
        assert evaluate(cs, 0.5)[0] == pytest.approx(0.5, abs=2e-3)
        assert evaluate(cs, 0.5)[0] == pytest.approx(oracle, abs=1e-4)

    def test_domain(self):
        with pytest.raises(DomainError):
            evaluate(unit(BasisSpec("cosine", 3), 0), 1.5)


class TestReconstruct:
    def test_zero(self):
        cs = CoefficientSet(np.zeros((4, 2)), BasisSpec("cosine", 3))
        assert np.all(reconstruct(cs, uniform_grid(9)).values == 0)

    def test_roundtrip(self):
        g = make_grid(np.random.default_rng(2).uniform(size=70))
        dm = build_design(BasisSpec("cosine", 6), g)
        y = dm.values[:, 2]
        rec = reconstruct(fit_single(dm, y), g)
        np.testing.assert_allclose(rec.values[:, 0], y, atol=1e-10)

    def test_matches_design_product(self):
        rng = np.random.default_rng(3)
        spec = BasisSpec("fourier", 5)
        cs = CoefficientSet(rng.standard_normal((11, 3)), spec)
        g = make_grid(rng.uniform(size=40))
        np.testing.assert_allclose(reconstruct(cs, g).values, build_design(spec, g).values @ cs.coeffs, atol=1e-14)

    def test_rss_below_total(self):
        rng = np.random.default_rng(4)
        g = uniform_grid(1200)
        y = np.sin(3 * g.points) + 0.3 * rng.standard_normal(1200)
        dm = build_design(BasisSpec("cosine", 59), g)
        rec = reconstruct(fit_single(dm, y), g)
        assert np.sum((y - rec.values[:, 0]) ** 2) < np.sum((y - y.mean()) ** 2)


class TestResiduals:
    def setup_method(self):
        rng = np.random.default_rng(5)
        self.grid = uniform_grid(300)
        self.dm = build_design(BasisSpec("cosine", 15), self.grid)
        self.y = rng.standard_normal((300, 4))
        self.cs = fit_batch(self.dm, self.y)

    def test_representable(self):
        y = self.dm.values[:, :3] * [1.0, -2.0, 0.5]
        r = residuals(self.dm, y, fit_batch(self.dm, y))
        assert np.abs(r).max() < 1e-10

    def test_rss_consistency(self):
        r = residuals(self.dm, self.y, self.cs)
        np.testing.assert_allclose((r**2).sum(axis=0), self.cs.residual_norms, rtol=1e-10)

    def test_orthogonal(self):
        r = residuals(self.dm, self.y, self.cs)
        assert np.abs(self.dm.values.T @ r).max() < 1e-10

    def test_shape(self):
        with pytest.raises(ShapeError):
            residuals(self.dm, self.y[:, :2], self.cs)

    def test_energy_split(self):
        fitted = self.dm.values @ self.cs.coeffs
        r = residuals(self.dm, self.y, self.cs)
        total = (self.y**2).sum(axis=0)
        np.testing.assert_allclose((fitted**2).sum(axis=0) + (r**2).sum(axis=0), total, rtol=1e-8)


class TestDenoise:
    def test_in_span_unchanged(self):
        g = uniform_grid(200)
        y = 1.0 + 0.5 * SQRT2 * np.cos(3 * np.pi * g.points)
        np.testing.assert_allclose(denoise(y, g, BasisSpec("cosine", 10)).values[:, 0], y, atol=1e-8)

    def test_removes_high_tone(self):
        rng = np.random.default_rng(6)
        g = uniform_grid(1200)
        clean = SQRT2 * np.cos(3 * np.pi * g.points)
        noisy = clean + SQRT2 * np.cos(80 * np.pi * g.points) + 0.2 * rng.standard_normal(1200)
        out = denoise(noisy, g, BasisSpec("cosine", 59)).values[:, 0]
        assert np.sum((out - clean) ** 2) < np.sum((noisy - clean) ** 2)

    def test_empty(self):
        rec = denoise(np.empty((10, 0)), uniform_grid(10), BasisSpec("cosine", 3))
        assert rec.values.shape == (10, 0)

    def test_normalized_restores_units(self):
        g = uniform_grid(100)
        y = 40.0 + 7.0 * SQRT2 * np.cos(np.pi * g.points)
        rec = denoise(SeriesBatch(y), g, BasisSpec("cosine", 5), normalize=True)
        assert abs(rec.values[:, 0].mean()) < 1e-12
        np.testing.assert_allclose(rec.restored()[:, 0], y, atol=1e-10)

    @settings(max_examples=20, deadline=None)
    @given(st.floats(-5, 5), st.floats(-5, 5), st.integers(0, 2**31 - 1))
    def test_linearity(self, a, b, seed):
        rng = np.random.default_rng(seed)
        g = uniform_grid(150)
        spec = BasisSpec("cosine", 12)
        y1, y2 = rng.standard_normal((2, 150, 3))
        lhs = denoise(a * y1 + b * y2, g, spec).values
        rhs = a * denoise(y1, g, spec).values + b * denoise(y2, g, spec).values
        np.testing.assert_allclose(lhs, rhs, atol=1e-10 * (1 + abs(a) + abs(b)) * 10)

    def test_degree_monotone(self):
        rng = np.random.default_rng(8)
        g = uniform_grid(400)
        y = np.exp(g.points) + 0.1 * rng.standard_normal(400)
        rss = [fit_single(build_design(BasisSpec("cosine", k), g), y).residual_norms[0] for k in range(0, 40)]
        assert all(b <= a + 1e-12 for a, b in zip(rss, rss[1:]))
