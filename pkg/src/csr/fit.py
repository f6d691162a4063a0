"""Least-squares estimation of expansion coefficients.

For a design ``Psi`` (n x m) and observations ``Y`` (n x p) the fitted
coefficients are ``C = (Psi^T Psi)^{-1} Psi^T Y``. The default solver never
forms that inverse: it uses the thin QR factorization cached on the
:class:`~csr.design.DesignMatrix`, ``C = R^{-1} Q^T Y``. The normal-equation
route (Cholesky of ``Psi^T Psi``) is available with ``method="normal"``.

All p columns share one factorization. Columns are processed in fixed
blocks of :data:`BLOCK_COLUMNS`, so the numbers produced do not depend on
how many worker threads are used.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike, NDArray

from .basis import BasisSpec, QuadratureRule, evaluate
from .design import DesignMatrix
from .errors import DomainError, InputValidationError, ShapeError

__all__ = [
    "SeriesBatch",
    "CoefficientSet",
    "fit_single",
    "fit_batch",
    "project_continuous",
    "default_workers",
    "BLOCK_COLUMNS",
]

BLOCK_COLUMNS = 128


@dataclass(eq=False)
class SeriesBatch:
    """``p`` series of ``n`` samples each, stored column-wise as ``values`` (n x p).

    ``preprocess[i] = (offset, scale)`` records a normalization applied to
    column ``i``: raw values are ``values * scale + offset``.
    """

    values: NDArray[np.float64]
    labels: list[str] | None = None
    preprocess: list[tuple[float, float]] | None = None

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.ndim == 1:
            v = v[:, None]
        if v.ndim != 2:
            raise ShapeError(f"series batch must be 2-D (n x p), got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            bad = np.argwhere(~np.isfinite(v))[0]
            raise InputValidationError(f"non-finite value at sample {bad[0]}, series {bad[1]}")
        self.values = v
        p = v.shape[1]
        if self.labels is None:
            self.labels = [f"y{i + 1}" for i in range(p)]
        self.labels = [str(s) for s in self.labels]
        if len(self.labels) != p:
            raise ShapeError(f"{len(self.labels)} labels for {p} series")
        if self.preprocess is None:
            self.preprocess = [(0.0, 1.0)] * p
        self.preprocess = [(float(o), float(s)) for o, s in self.preprocess]
        if len(self.preprocess) != p:
            raise ShapeError(f"{len(self.preprocess)} preprocessing entries for {p} series")

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]

    def normalized(self) -> "SeriesBatch":
        """Z-score each series (population standard deviation).

        Constant series keep scale 1 so the map stays invertible.
        """
        mean = self.values.mean(axis=0) if self.n else np.zeros(self.p)
        std = self.values.std(axis=0) if self.n else np.ones(self.p)
        std = np.where(std > 0, std, 1.0)
        return SeriesBatch((self.values - mean) / std, list(self.labels), list(zip(mean, std)))

    def restore(self, values: ArrayLike) -> NDArray[np.float64]:
        """Undo the recorded normalization on an array with this batch's columns."""
        v = np.asarray(values, dtype=float)
        offset = np.array([o for o, _ in self.preprocess])
        scale = np.array([s for _, s in self.preprocess])
        return v * scale + offset


@dataclass(eq=False)
class CoefficientSet:
    """Fitted coefficients ``coeffs`` (m x p) in the analytic basis of ``spec``.

    Row ``r`` holds the coefficient of basis index ``spec.indices[r]``.
    ``residual_norms[i]`` is the residual sum of squares of series ``i``.
    """

    coeffs: NDArray[np.float64]
    spec: BasisSpec
    grid_id: str = ""
    residual_norms: NDArray[np.float64] = field(default_factory=lambda: np.zeros(0))
    labels: list[str] | None = None
    preprocess: list[tuple[float, float]] | None = None

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim == 1:
            c = c[:, None]
        if c.shape[0] != self.spec.n_functions:
            raise ShapeError(
                f"{c.shape[0]} coefficient rows for a basis with {self.spec.n_functions} functions"
            )
        self.coeffs = c
        p = c.shape[1]
        rn = np.asarray(self.residual_norms, dtype=float).reshape(-1)
        self.residual_norms = rn if rn.size else np.zeros(p)
        if self.labels is None:
            self.labels = [f"y{i + 1}" for i in range(p)]
        if self.preprocess is None:
            self.preprocess = [(0.0, 1.0)] * p

    @property
    def m(self) -> int:
        return self.coeffs.shape[0]

    @property
    def p(self) -> int:
        return self.coeffs.shape[1]

    def coefficient(self, l: int) -> NDArray[np.float64]:
        """Coefficients of basis index ``l`` across all series."""
        return self.coeffs[self.spec.column(l)]


def default_workers() -> int:
    """Worker count from ``CSR_THREADS`` (unset means 1, 0 means one per CPU)."""
    raw = os.environ.get("CSR_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputValidationError(f"CSR_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InputValidationError("CSR_THREADS must be >= 0")
    return n or (os.cpu_count() or 1)


def _solve_block(dm: DesignMatrix, y: NDArray[np.float64], method: str) -> NDArray[np.float64]:
    fac = dm.factorization
    if dm.m == 0:
        return np.empty((0, y.shape[1]))
    if method == "normal":
        return scipy.linalg.cho_solve(fac.cholesky, dm.analytic_values.T @ y)
    d = fac.q.T @ y
    if dm.orthonormalized:
        return dm.to_analytic(d)
    return scipy.linalg.solve_triangular(fac.r, d, lower=False)


def _solve(dm: DesignMatrix, y: NDArray[np.float64], method: str, workers: int) -> NDArray[np.float64]:
    if method not in ("qr", "normal"):
        raise InputValidationError(f"unknown solver method {method!r}")
    dm.check_solvable()
    p = y.shape[1]
    starts = range(0, p, BLOCK_COLUMNS)
    if p == 0:
        return np.empty((dm.m, 0))
    if workers <= 1 or len(starts) == 1:
        blocks = [_solve_block(dm, y[:, s : s + BLOCK_COLUMNS], method) for s in starts]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            blocks = list(pool.map(lambda s: _solve_block(dm, y[:, s : s + BLOCK_COLUMNS], method), starts))
    return np.hstack(blocks)


def _rss(dm: DesignMatrix, y: NDArray[np.float64], c: NDArray[np.float64]) -> NDArray[np.float64]:
    r = y - dm.analytic_values @ c
    return np.einsum("ij,ij->j", r, r)


def fit_single(dm: DesignMatrix, y: ArrayLike, method: str = "qr") -> CoefficientSet:
    """Least-squares coefficients of one series ``y`` sampled on ``dm.grid``."""
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.size != dm.n:
        raise ShapeError(f"series of length {y.size} does not match design with {dm.n} rows")
    if not np.all(np.isfinite(y)):
        raise InputValidationError("series contains non-finite values")
    y = y[:, None]
    c = _solve(dm, y, method, workers=1)
    return CoefficientSet(c, dm.spec, dm.grid.grid_id, _rss(dm, y, c))


def fit_batch(
    dm: DesignMatrix,
    batch: SeriesBatch | ArrayLike,
    method: str = "qr",
    workers: int | None = None,
) -> CoefficientSet:
    """Fit every column of ``batch`` against the shared factorization of ``dm``.

    Parameters
    ----------
    dm :
        Design matrix; its factorization is reused for all columns.
    batch :
        A :class:`SeriesBatch` or an (n x p) array.
    method :
        ``"qr"`` (default) or ``"normal"`` for the Cholesky normal equations.
    workers :
        Thread count for the column blocks. Defaults to :func:`default_workers`.
        Results are identical for any value.
    """
    if not isinstance(batch, SeriesBatch):
        batch = SeriesBatch(batch)
    if batch.n != dm.n:
        raise ShapeError(f"batch has {batch.n} samples but design has {dm.n} rows")
    workers = default_workers() if workers is None else workers
    c = _solve(dm, batch.values, method, workers)
    return CoefficientSet(
        c,
        dm.spec,
        dm.grid.grid_id,
        _rss(dm, batch.values, c),
        labels=list(batch.labels),
        preprocess=list(batch.preprocess),
    )


def project_continuous(
    f: Callable[[NDArray[np.float64]], ArrayLike],
    spec: BasisSpec,
    quadrature: QuadratureRule | None = None,
) -> CoefficientSet:
    """Fourier coefficients ``<f, psi_l> = int_0^1 f psi_l dt`` by quadrature.

    ``f`` is called once with the array of quadrature nodes. The default rule
    is composite Simpson with ``max(4096, 32 k)`` intervals. The reported
    residual is ``||f||^2 - sum c_l^2``, the squared L2 truncation error.
    """
    if quadrature is None:
        intervals = max(4096, 32 * spec.max_wavenumber)
        quadrature = QuadratureRule("simpson", intervals + intervals % 2)
    nodes, w = quadrature.nodes_weights()
    fv = np.broadcast_to(np.asarray(f(nodes), dtype=float), nodes.shape)
    if not np.all(np.isfinite(fv)):
        raise DomainError("function returned non-finite values on [0, 1]")
    phi = evaluate(spec, nodes)
    c = phi.T @ (w * fv)
    resid = max(float(w @ fv**2 - c @ c), 0.0)
    return CoefficientSet(c[:, None], spec, "continuous", np.array([resid]))
