"""Sample grids and design matrices.

A :class:`SampleGrid` maps raw timestamps affinely onto [0, 1]. A
:class:`DesignMatrix` holds the basis evaluated on a grid together with its
thin QR factorization, which is computed once at construction and shared by
every fit that uses the matrix.
"""

from __future__ import annotations

import hashlib
import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from .basis import BasisSpec, evaluate
from .errors import (
    CollinearityError,
    DegenerateGridError,
    InputValidationError,
    SizeError,
    UnderdeterminedError,
)

__all__ = [
    "SampleGrid",
    "DesignMatrix",
    "make_grid",
    "uniform_grid",
    "build_design",
    "orthonormalize_design",
    "COLLINEARITY_RTOL",
]

# Relative singular-value floor below which columns count as dependent.
COLLINEARITY_RTOL = 1e-10


@dataclass(frozen=True, eq=False)
class SampleGrid:
    """Strictly increasing points in [0, 1] plus the affine map that produced them.

    ``points = (timestamps - offset) / scale``, so ``offset`` is the first
    raw timestamp and ``scale`` the raw span.
    """

    points: NDArray[np.float64]
    offset: float = 0.0
    scale: float = 1.0

    def __post_init__(self):
        pts = np.array(self.points, dtype=float).reshape(-1)
        if pts.size < 2:
            raise SizeError(f"a grid needs at least 2 points, got {pts.size}")
        if not np.all(np.isfinite(pts)) or pts[0] < 0.0 or pts[-1] > 1.0:
            raise InputValidationError("grid points must lie in [0, 1]")
        if np.any(np.diff(pts) <= 0):
            raise DegenerateGridError("grid points must be strictly increasing")
        if not (np.isfinite(self.scale) and self.scale > 0):
            raise InputValidationError(f"grid scale must be positive, got {self.scale}")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "offset", float(self.offset))
        object.__setattr__(self, "scale", float(self.scale))

    @property
    def n(self) -> int:
        return self.points.size

    @property
    def original_range(self) -> tuple[float, float]:
        return self.offset, self.offset + self.scale

    @property
    def timestamps(self) -> NDArray[np.float64]:
        """Grid points mapped back to raw time units."""
        return self.to_original(self.points)

    @property
    def grid_id(self) -> str:
        h = hashlib.sha1(self.points.tobytes())
        h.update(np.array([self.offset, self.scale]).tobytes())
        return h.hexdigest()[:12]

    def to_unit(self, t: ArrayLike) -> NDArray[np.float64]:
        return (np.asarray(t, dtype=float) - self.offset) / self.scale

    def to_original(self, x: ArrayLike) -> NDArray[np.float64]:
        return np.asarray(x, dtype=float) * self.scale + self.offset

    def is_uniform(self, rtol: float = 1e-9) -> bool:
        d = np.diff(self.points)
        return bool(np.allclose(d, d[0], rtol=rtol, atol=0.0))

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"SampleGrid(n={self.n}, range={self.original_range})"


def make_grid(timestamps: ArrayLike) -> SampleGrid:
    """Map timestamps onto [0, 1] with ``t -> (t - t_min) / (t_max - t_min)``.

    Timestamps are sorted first. Duplicates raise
    :class:`DegenerateGridError`; fewer than two raise :class:`SizeError`.

    >>> make_grid([10, 20, 40]).points
    array([0.        , 0.33333333, 1.        ])
    """
    t = np.asarray(timestamps, dtype=float).reshape(-1)
    if t.size < 2:
        raise SizeError(f"a grid needs at least 2 timestamps, got {t.size}")
    if not np.all(np.isfinite(t)):
        raise InputValidationError("timestamps must be finite")
    t = np.sort(t)
    if np.any(np.diff(t) == 0):
        dup = t[np.flatnonzero(np.diff(t) == 0)[0]]
        raise DegenerateGridError(f"duplicate timestamp {dup!r}")
    t_min, t_max = t[0], t[-1]
    scale = t_max - t_min
    points = np.clip((t - t_min) / scale, 0.0, 1.0)
    if np.any(np.diff(points) <= 0):
        raise DegenerateGridError("timestamps are too close together to stay distinct after mapping to [0, 1]")
    return SampleGrid(points, offset=t_min, scale=scale)


def uniform_grid(n: int) -> SampleGrid:
    """``n`` equally spaced points ``j / (n - 1)``."""
    if n < 2:
        raise SizeError(f"a grid needs at least 2 points, got {n}")
    return SampleGrid(np.arange(n) / (n - 1), offset=0.0, scale=1.0)


@dataclass(frozen=True)
class _Factorization:
    q: NDArray[np.float64]
    r: NDArray[np.float64]
    singular_values: NDArray[np.float64]
    cholesky: tuple | None = field(default=None, repr=False)


class DesignMatrix:
    """Basis functions evaluated on a grid, ``values[j, c] = psi_{l_c}(t_j)``.

    When ``orthonormalized`` is true, ``values`` has exactly orthonormal
    columns and ``change_of_basis`` is the upper-triangular ``R`` with
    ``analytic_values == values @ R``. Coefficients in the analytic basis map
    to the orthonormal one by ``R @ c``.

    Instances are read-only; the QR factorization and singular values are
    computed in the constructor.
    """

    def __init__(
        self,
        values: ArrayLike,
        spec: BasisSpec,
        grid: SampleGrid,
        orthonormalized: bool = False,
        change_of_basis: ArrayLike | None = None,
    ):
        values = np.array(values, dtype=float)
        if values.ndim != 2 or values.shape[0] != grid.n:
            raise InputValidationError(
                f"design values of shape {values.shape} do not match a grid of {grid.n} points"
            )
        values.setflags(write=False)
        self._values = values
        self.spec = spec
        self.grid = grid
        self.orthonormalized = bool(orthonormalized)
        m = values.shape[1]
        if change_of_basis is None:
            cob = np.eye(m)
        else:
            cob = np.array(change_of_basis, dtype=float)
        cob.setflags(write=False)
        self._change_of_basis = cob
        self._factorization = self._factorize()

    def _factorize(self) -> _Factorization | None:
        n, m = self.shape
        if n < m:
            return None
        if m == 0:
            return _Factorization(np.empty((n, 0)), np.empty((0, 0)), np.empty(0))
        a = self._values
        sv = np.linalg.svd(a, compute_uv=False)
        if self.orthonormalized:
            q, r = a, np.eye(m)
        else:
            q, r = scipy.linalg.qr(a, mode="economic")
            signs = np.where(np.diag(r) < 0, -1.0, 1.0)
            q = q * signs
            r = signs[:, None] * r
        chol = None
        if sv[-1] > COLLINEARITY_RTOL * sv[0]:
            analytic = self.analytic_values
            chol = scipy.linalg.cho_factor(analytic.T @ analytic)
        for arr in (q, r, sv):
            arr.setflags(write=False)
        return _Factorization(q, r, sv, chol)

    @property
    def values(self) -> NDArray[np.float64]:
        return self._values

    @property
    def shape(self) -> tuple[int, int]:
        return self._values.shape

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @property
    def m(self) -> int:
        return self._values.shape[1]

    @property
    def change_of_basis(self) -> NDArray[np.float64]:
        return self._change_of_basis

    @property
    def analytic_values(self) -> NDArray[np.float64]:
        """Design in the analytic basis, ``psi_l(t_j)``."""
        if not self.orthonormalized:
            return self._values
        return self._values @ self._change_of_basis

    @property
    def factorization(self) -> _Factorization | None:
        return self._factorization

    def to_orthonormal(self, coeffs: ArrayLike) -> NDArray[np.float64]:
        """Map analytic-basis coefficients to the orthonormal columns."""
        return self._change_of_basis @ np.asarray(coeffs, dtype=float)

    def to_analytic(self, coeffs: ArrayLike) -> NDArray[np.float64]:
        """Map orthonormal-column coefficients back to the analytic basis."""
        c = np.asarray(coeffs, dtype=float)
        if self.m == 0:
            return c
        return scipy.linalg.solve_triangular(self._change_of_basis, c, lower=False)

    def collinear_column(self) -> int | None:
        """Index of the first numerically dependent column, or ``None`` if full rank."""
        fac = self._factorization
        if fac is None or self.m == 0:
            return None
        sv = fac.singular_values
        if sv[0] == 0.0:
            return 0
        if sv[-1] > COLLINEARITY_RTOL * sv[0]:
            return None
        _, r = scipy.linalg.qr(self._values, mode="economic")
        diag = np.abs(np.diag(r))
        small = np.flatnonzero(diag <= COLLINEARITY_RTOL * sv[0])
        return int(small[0]) if small.size else int(np.argmin(diag))

    def check_solvable(self) -> None:
        """Raise unless a least-squares fit through this matrix is well posed."""
        n, m = self.shape
        if n < m:
            raise UnderdeterminedError(n, m)
        col = self.collinear_column()
        if col is not None:
            raise CollinearityError(col)
        if n < 2 * m:
            warnings.warn(
                f"only {n} samples for {m} basis functions; estimates will be noisy (n >= 2m advised)",
                RuntimeWarning,
                stacklevel=3,
            )

    def __repr__(self) -> str:
        tag = ", orthonormalized" if self.orthonormalized else ""
        return f"DesignMatrix({self.spec}, shape={self.shape}{tag})"


def build_design(spec: BasisSpec, grid: SampleGrid) -> DesignMatrix:
    """Evaluate every function of ``spec`` on ``grid``."""
    return DesignMatrix(evaluate(spec, grid.points), spec, grid)


def orthonormalize_design(dm: DesignMatrix) -> DesignMatrix:
    """Replace the columns of ``dm`` by an orthonormal basis of the same span.

    Uses the thin QR factorization ``Psi = Q R`` (with ``diag(R) > 0``), so
    the result has ``Q.T @ Q = I`` and keeps ``R`` as its change of basis.
    Already orthonormalized input is returned as is.
    """
    if dm.orthonormalized:
        return dm
    n, m = dm.shape
    if n < m:
        raise UnderdeterminedError(n, m)
    col = dm.collinear_column()
    if col is not None:
        raise CollinearityError(col)
    fac = dm.factorization
    return DesignMatrix(fac.q, dm.spec, dm.grid, orthonormalized=True, change_of_basis=fac.r)
