import math

import numpy as np
import pytest

from csr.design import uniform_grid
from csr.diagnostics import gibbs_compare
from csr.errors import InputValidationError, ResolutionError


def cosine_partial_sum_of_t(t, k):
    """Closed-form cosine projection of f(t) = t truncated at degree k."""
    out = np.full_like(t, 0.5)
    for l in range(1, k + 1):
        out += 2 * ((-1) ** l - 1) / (l * l * math.pi**2) * np.cos(l * math.pi * t)
    return out


def sine_partial_sum(f_coeff, t, k):
    return sum(2 * f_coeff(l) * np.sin(l * math.pi * t) for l in range(1, k + 1))


def test_linear_sine_worse_than_cosine():
    grid = uniform_grid(2048)
    rep = gibbs_compare(lambda t: t, 20, grid, 0.05)
    assert rep["sine"].boundary_error > rep["cosine"].boundary_error

    # Oracle: continuous partial sums show the same ordering.
    t = grid.points
    b = (t <= 0.05) | (t >= 0.95)
    cos_err = np.abs(cosine_partial_sum_of_t(t, 20) - t)[b].max()
    sine_coeff = lambda l: (-1) ** (l + 1) / (l * math.pi)  # int_0^1 t sin(l pi t) dt
    sin_err = np.abs(sine_partial_sum(sine_coeff, t, 20) - t)[b].max()
    assert sin_err > cos_err
    assert rep["cosine"].boundary_error == pytest.approx(cos_err, rel=0.2)
    assert rep["sine"].boundary_error == pytest.approx(sin_err, rel=0.05)


def test_representable_cosine():
    rep = gibbs_compare(lambda t: math.sqrt(2) * np.cos(3 * math.pi * t), 5, uniform_grid(512))
    assert rep["cosine"].boundary_error < 1e-10


def test_constant_under_sine():
    rep = gibbs_compare(lambda t: np.ones_like(t), 20, uniform_grid(1024))
    assert rep["sine"].boundary_error >= 0.5
    # Oracle: sine series of 1 is 0 at t = 0 for every k.
    assert sine_partial_sum(lambda l: (1 - (-1) ** l) / (l * math.pi), np.array([0.0]), 20)[0] == 0.0


def test_ordering_and_trends():
    grid = uniform_grid(4096)
    reps = [gibbs_compare(lambda t: t, k, grid) for k in (10, 20, 40)]
    cos_b = [r["cosine"].boundary_error for r in reps]
    sin_b = [r["sine"].boundary_error for r in reps]
    assert all(c < s for c, s in zip(cos_b, sin_b))
    assert cos_b[0] > cos_b[1] > cos_b[2]
    assert min(sin_b) > 0.5
    for fam in ("cosine", "sine", "fourier"):
        interior = [r[fam].interior_error for r in reps]
        assert interior[0] > interior[2]


def test_parameter_counts_reported():
    rep = gibbs_compare(lambda t: t, 10, uniform_grid(200))
    counts = {name: fe.n_functions for name, fe in rep.families.items()}
    assert counts == {"cosine": 11, "sine": 10, "fourier": 11}
    assert rep.to_dict()["families"]["fourier"]["degree"] == 5


def test_under_resolved():
    with pytest.raises(ResolutionError):
        gibbs_compare(lambda t: t, 40, uniform_grid(100))


@pytest.mark.parametrize("delta", [0.0, 0.5, -0.1])
def test_bad_delta(delta):
    with pytest.raises(InputValidationError):
        gibbs_compare(lambda t: t, 10, uniform_grid(200), delta)
