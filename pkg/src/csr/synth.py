"""Forward simulation of expansion noise and noisy observations.

Noise for one series is ``eps(t) = sum_l Z_l psi_l(t) + e(t)`` with
``Z_l ~ N(0, tau_l^2)`` and white residual ``e ~ N(0, sigma_e^2)`` per sample.
The ``Z_l`` are independent unless a lower-triangular ``correlation_factor``
``L`` is given, in which case ``Z = tau * (L @ z)`` for standard normal ``z``
and ``Cov(Z) = D L L^T D`` with ``D = diag(tau)``.

Each series draws from its own substream ``SeedSequence(seed).spawn(p)[i]``,
so series ``i`` is the same regardless of ``p`` or evaluation order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .basis import BasisSpec, evaluate
from .design import SampleGrid
from .errors import DomainError, InputValidationError
from .fit import SeriesBatch

__all__ = ["NoiseModel", "sample_noise", "sample_observation", "RNG_ALGORITHM"]

RNG_ALGORITHM = "numpy.PCG64 via SeedSequence.spawn (one substream per series)"


@dataclass(frozen=True, eq=False)
class NoiseModel:
    spec: BasisSpec
    variances: NDArray[np.float64]
    residual_sigma: float = 0.0
    seed: int = 0
    correlation_factor: NDArray[np.float64] | None = None

    def __post_init__(self):
        tau2 = np.array(self.variances, dtype=float).reshape(-1)
        m = self.spec.n_functions
        if tau2.size != m:
            raise InputValidationError(f"{tau2.size} variances given for {m} basis functions")
        if not np.all(np.isfinite(tau2)) or np.any(tau2 < 0):
            raise InputValidationError("variances must be finite and non-negative")
        if not (np.isfinite(self.residual_sigma) and self.residual_sigma >= 0):
            raise InputValidationError("residual_sigma must be finite and non-negative")
        if isinstance(self.seed, bool) or int(self.seed) != self.seed or self.seed < 0:
            raise InputValidationError(f"seed must be a non-negative integer, got {self.seed!r}")
        object.__setattr__(self, "variances", tau2)
        object.__setattr__(self, "seed", int(self.seed))
        if self.correlation_factor is not None:
            lf = np.array(self.correlation_factor, dtype=float)
            if lf.shape != (m, m) or np.any(np.triu(lf, 1) != 0):
                raise InputValidationError(f"correlation factor must be lower triangular {m}x{m}")
            object.__setattr__(self, "correlation_factor", lf)

    @property
    def tau(self) -> NDArray[np.float64]:
        return np.sqrt(self.variances)


def _series_generators(seed: int, p: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(s)) for s in np.random.SeedSequence(seed).spawn(p)]


def sample_noise(model: NoiseModel, grid: SampleGrid, p: int) -> SeriesBatch:
    """Draw ``p`` independent noise series on ``grid``."""
    if p < 1:
        raise InputValidationError(f"p must be >= 1, got {p}")
    phi = evaluate(model.spec, grid.points)
    m = model.spec.n_functions
    z = np.empty((m, p))
    e = np.empty((grid.n, p))
    for i, rng in enumerate(_series_generators(model.seed, p)):
        z[:, i] = rng.standard_normal(m)
        e[:, i] = rng.standard_normal(grid.n)
    if model.correlation_factor is not None:
        z = model.correlation_factor @ z
    z *= model.tau[:, None]
    return SeriesBatch(phi @ z + model.residual_sigma * e)


def sample_observation(
    mean: Callable[[NDArray[np.float64]], ArrayLike],
    model: NoiseModel,
    grid: SampleGrid,
    p: int,
) -> SeriesBatch:
    """``p`` draws of ``mean(t) + eps(t)``; same seed and zero mean reproduce :func:`sample_noise`."""
    mu = np.broadcast_to(np.asarray(mean(grid.points), dtype=float), (grid.n,))
    if not np.all(np.isfinite(mu)):
        raise DomainError("mean function returned non-finite values")
    noise = sample_noise(model, grid, p)
    return SeriesBatch(noise.values + mu[:, None])
