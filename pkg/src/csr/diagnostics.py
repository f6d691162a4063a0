"""Boundary-artifact (Gibbs) comparison across basis families.

A signal is fitted with cosine(k), sine(k) and fourier(k // 2) on the same
grid; the three fits use k + 1, k and 2 (k // 2) + 1 functions, which agree
to within one. Errors are split into a boundary band ``[0, delta] U
[1 - delta, 1]`` and the interior ``[delta, 1 - delta]``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .basis import BasisSpec, Family
from .design import SampleGrid, build_design
from .errors import DomainError, InputValidationError, ResolutionError
from .fit import fit_single

__all__ = ["FamilyError", "GibbsReport", "gibbs_compare", "DEFAULT_DELTA"]

DEFAULT_DELTA = 0.05


@dataclass(frozen=True)
class FamilyError:
    family: str
    degree: int
    n_functions: int
    boundary_error: float
    interior_error: float


@dataclass
class GibbsReport:
    k: int
    delta: float
    n: int
    test_signal: str
    families: dict[str, FamilyError] = field(default_factory=dict)
    fits: dict[str, NDArray[np.float64]] = field(default_factory=dict, repr=False)

    def __getitem__(self, family: str | Family) -> FamilyError:
        return self.families[Family.parse(family).value]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "delta": self.delta,
            "n": self.n,
            "test_signal": self.test_signal,
            "families": {name: asdict(fe) for name, fe in self.families.items()},
        }


def gibbs_compare(
    signal: Callable[[NDArray[np.float64]], ArrayLike],
    k: int,
    grid: SampleGrid,
    delta: float = DEFAULT_DELTA,
    name: str = "signal",
) -> GibbsReport:
    """Fit ``signal`` with each family and report max-abs errors by region.

    The grid must have at least ``8 k`` points, otherwise
    :class:`ResolutionError` is raised.
    """
    if not (0.0 < delta < 0.5):
        raise InputValidationError(f"delta must lie in (0, 0.5), got {delta}")
    if k < 1:
        raise InputValidationError("k must be >= 1 so every family has a function")
    if grid.n < 8 * k:
        raise ResolutionError(f"grid of {grid.n} points cannot resolve degree {k}; need >= {8 * k}")
    t = grid.points
    y = np.broadcast_to(np.asarray(signal(t), dtype=float), t.shape)
    if not np.all(np.isfinite(y)):
        raise DomainError("signal returned non-finite values")
    boundary = (t <= delta) | (t >= 1.0 - delta)
    interior = (t >= delta) & (t <= 1.0 - delta)

    report = GibbsReport(k=k, delta=delta, n=grid.n, test_signal=name)
    for spec in (BasisSpec(Family.COSINE, k), BasisSpec(Family.SINE, k), BasisSpec(Family.FOURIER, k // 2)):
        dm = build_design(spec, grid)
        cs = fit_single(dm, y)
        fitted = dm.analytic_values @ cs.coeffs[:, 0]
        err = np.abs(fitted - y)
        report.families[spec.family.value] = FamilyError(
            family=spec.family.value,
            degree=spec.degree,
            n_functions=spec.n_functions,
            boundary_error=float(err[boundary].max()),
            interior_error=float(err[interior].max()),
        )
        report.fits[spec.family.value] = fitted
    return report
