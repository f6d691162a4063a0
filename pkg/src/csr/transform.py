"""Evaluate fitted series, compute residuals, denoise."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .basis import BasisSpec, evaluate as evaluate_basis
from .design import DesignMatrix, SampleGrid, build_design
from .errors import ShapeError
from .fit import CoefficientSet, SeriesBatch, fit_batch

__all__ = ["Reconstruction", "evaluate", "reconstruct", "residuals", "denoise"]


@dataclass(eq=False)
class Reconstruction:
    """Fitted series ``values`` (n' x p) on ``target_grid``."""

    values: NDArray[np.float64]
    target_grid: SampleGrid
    source: CoefficientSet

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def restored(self) -> NDArray[np.float64]:
        """Values mapped back through the normalization recorded on the coefficients."""
        offset = np.array([o for o, _ in self.source.preprocess])
        scale = np.array([s for _, s in self.source.preprocess])
        return self.values * scale + offset


def evaluate(cs: CoefficientSet, t: float) -> NDArray[np.float64]:
    """Series sums ``sum_l C[l, i] psi_l(t)`` for every series ``i``."""
    phi = evaluate_basis(cs.spec, np.atleast_1d(t))
    return (phi @ cs.coeffs)[0]


def reconstruct(cs: CoefficientSet, grid: SampleGrid) -> Reconstruction:
    """Evaluate every series of ``cs`` on ``grid``; equal to ``Psi_grid @ C``."""
    phi = evaluate_basis(cs.spec, grid.points)
    return Reconstruction(phi @ cs.coeffs, grid, cs)


def residuals(dm: DesignMatrix, batch: SeriesBatch | ArrayLike, cs: CoefficientSet) -> NDArray[np.float64]:
    """Residual matrix ``Y - Psi C``."""
    y = batch.values if isinstance(batch, SeriesBatch) else np.asarray(batch, dtype=float)
    if y.ndim == 1:
        y = y[:, None]
    if y.shape[0] != dm.n or cs.m != dm.m or y.shape[1] != cs.p:
        raise ShapeError(
            f"inconsistent shapes: data {y.shape}, design {dm.shape}, coefficients {cs.coeffs.shape}"
        )
    return y - dm.analytic_values @ cs.coeffs


def denoise(
    batch: SeriesBatch | ArrayLike,
    grid: SampleGrid,
    spec: BasisSpec,
    normalize: bool = False,
    method: str = "qr",
) -> Reconstruction:
    """Project each series onto ``spec`` and evaluate the fit on the same grid.

    With ``normalize=True`` each series is z-scored before fitting; the
    returned coefficients carry the (offset, scale) pairs and
    :meth:`Reconstruction.restored` maps values back to raw units.
    """
    if not isinstance(batch, SeriesBatch):
        batch = SeriesBatch(batch)
    if normalize:
        batch = batch.normalized()
    cs = fit_batch(build_design(spec, grid), batch, method=method)
    return reconstruct(cs, grid)
