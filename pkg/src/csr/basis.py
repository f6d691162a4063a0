"""Orthonormal eigenfunction bases of the 1D Laplacian on [0, 1].

Three families are provided:

``cosine``
    ``psi_0 = 1`` and ``psi_l(t) = sqrt(2) cos(l pi t)`` for ``l = 1..k``.
    Solutions of ``psi'' + lambda psi = 0`` whose even, period-2 extension is
    continuous, so truncated series have no endpoint ringing.
``sine``
    ``psi_l(t) = sqrt(2) sin(l pi t)`` for ``l = 1..k`` (no constant term).
    The odd extension; every member vanishes at t = 0 and t = 1.
``fourier``
    Period-1 Fourier basis. Slot 0 is the constant, slot ``2l - 1`` is
    ``sqrt(2) sin(2 l pi t)`` and slot ``2l`` is ``sqrt(2) cos(2 l pi t)``.
    Sines and cosines of the same frequency ``l pi`` are not mutually
    orthogonal on [0, 1] when ``l`` is odd, so the mixed family uses the even
    wavenumbers only; these are the Laplacian eigenfunctions with the
    periodic condition ``psi(0) = psi(1)``.

Every function is written as ``sqrt(2) trig(w pi t)`` with an integer
*wavenumber* ``w`` and has eigenvalue ``w**2 pi**2``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from .errors import DomainError, IndexRangeError, InputValidationError, ResolutionError

__all__ = [
    "Family",
    "BasisSpec",
    "EigenPair",
    "QuadratureRule",
    "eval_basis",
    "evaluate",
    "eigenvalue",
    "eigenpairs",
    "gram_matrix",
    "check_unit_interval",
]

SQRT2 = math.sqrt(2.0)


class Family(str, enum.Enum):
    COSINE = "cosine"
    SINE = "sine"
    FOURIER = "fourier"

    @classmethod
    def parse(cls, value: Union[str, "Family"]) -> "Family":
        if isinstance(value, Family):
            return value
        key = str(value).strip().lower()
        aliases = {"cos": "cosine", "sin": "sine", "full": "fourier", "full-fourier": "fourier", "fullfourier": "fourier"}
        key = aliases.get(key, key)
        try:
            return cls(key)
        except ValueError:
            raise InputValidationError(f"unknown basis family {value!r}") from None


@dataclass(frozen=True)
class BasisSpec:
    """A truncated basis: a family and a degree ``k``.

    The number of functions is ``k + 1`` for cosine, ``k`` for sine and
    ``2k + 1`` for fourier.
    """

    family: Family = Family.COSINE
    degree: int = 59

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        if isinstance(self.degree, bool) or int(self.degree) != self.degree or self.degree < 0:
            raise InputValidationError(f"degree must be a non-negative integer, got {self.degree!r}")
        object.__setattr__(self, "degree", int(self.degree))

    @property
    def n_functions(self) -> int:
        k = self.degree
        if self.family is Family.COSINE:
            return k + 1
        if self.family is Family.SINE:
            return k
        return 2 * k + 1

    @property
    def indices(self) -> NDArray[np.int64]:
        """Valid basis indices, in column order of the design matrix."""
        if self.family is Family.SINE:
            return np.arange(1, self.degree + 1)
        return np.arange(self.n_functions)

    @property
    def wavenumbers(self) -> NDArray[np.int64]:
        return np.array([self.wavenumber(int(l)) for l in self.indices], dtype=np.int64)

    @property
    def max_wavenumber(self) -> int:
        return 2 * self.degree if self.family is Family.FOURIER else self.degree

    def column(self, l: int) -> int:
        """Design-matrix column that holds basis index ``l``."""
        self._check_index(l)
        return l - 1 if self.family is Family.SINE else l

    def wavenumber(self, l: int) -> int:
        self._check_index(l)
        if self.family is Family.FOURIER:
            return 2 * ((l + 1) // 2)
        return l

    def is_sine(self, l: int) -> bool:
        self._check_index(l)
        if self.family is Family.SINE:
            return True
        if self.family is Family.FOURIER:
            return l % 2 == 1
        return False

    def _check_index(self, l: int) -> None:
        lo = 1 if self.family is Family.SINE else 0
        hi = self.degree if self.family is not Family.FOURIER else 2 * self.degree
        if not (lo <= l <= hi):
            raise IndexRangeError(
                f"index {l} outside [{lo}, {hi}] for {self.family.value} basis of degree {self.degree}"
            )

    def __str__(self) -> str:
        return f"{self.family.value}(k={self.degree})"


@dataclass(frozen=True)
class EigenPair:
    family: Family
    index: int
    wavenumber: int
    eigenvalue: float


def check_unit_interval(t: ArrayLike) -> NDArray[np.float64]:
    """Return ``t`` as a float array, raising :class:`DomainError` unless all values lie in [0, 1]."""
    arr = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0.0) or np.any(arr > 1.0):
        raise DomainError("time values must lie in [0, 1]")
    return arr


def eval_basis(spec: BasisSpec, l: int, t: ArrayLike) -> Union[float, NDArray[np.float64]]:
    """Evaluate basis function ``l`` of ``spec`` at ``t``.

    Examples
    --------
    >>> eval_basis(BasisSpec("cosine", 3), 1, 0.0)
    1.4142135623730951
    """
    w = spec.wavenumber(l)
    x = check_unit_interval(t)
    if w == 0:
        out = np.ones_like(x)
    elif spec.is_sine(l):
        out = SQRT2 * np.sin(w * np.pi * x)
    else:
        out = SQRT2 * np.cos(w * np.pi * x)
    return float(out) if out.ndim == 0 else out


def evaluate(spec: BasisSpec, t: ArrayLike) -> NDArray[np.float64]:
    """Evaluate every function of ``spec`` at the points ``t``.

    Returns an array of shape ``(len(t), spec.n_functions)``.
    """
    x = check_unit_interval(t).reshape(-1)
    m = spec.n_functions
    out = np.empty((x.size, m))
    if m == 0:
        return out
    w = spec.wavenumbers.astype(float)
    phase = np.pi * np.outer(x, w)
    if spec.family is Family.COSINE:
        out[:] = SQRT2 * np.cos(phase)
        out[:, 0] = 1.0
    elif spec.family is Family.SINE:
        out[:] = SQRT2 * np.sin(phase)
    else:
        out[:, 0::2] = SQRT2 * np.cos(phase[:, 0::2])
        out[:, 1::2] = SQRT2 * np.sin(phase[:, 1::2])
        out[:, 0] = 1.0
    return out


def eigenvalue(l: int) -> float:
    """Laplacian eigenvalue ``l**2 pi**2`` for wavenumber ``l``."""
    if l < 0:
        raise IndexRangeError(f"wavenumber must be non-negative, got {l}")
    return float(l * l) * math.pi**2


def eigenpairs(spec: BasisSpec) -> list[EigenPair]:
    return [
        EigenPair(spec.family, int(l), spec.wavenumber(int(l)), eigenvalue(spec.wavenumber(int(l))))
        for l in spec.indices
    ]


@dataclass(frozen=True)
class QuadratureRule:
    """Composite quadrature on [0, 1] with ``intervals`` equal panels.

    ``kind`` is ``"simpson"`` (needs an even interval count) or
    ``"trapezoid"``.
    """

    kind: str = "simpson"
    intervals: int = 4096

    def __post_init__(self):
        if self.kind not in ("simpson", "trapezoid"):
            raise InputValidationError(f"unknown quadrature kind {self.kind!r}")
        if self.intervals < 1 or (self.kind == "simpson" and self.intervals % 2):
            raise InputValidationError(
                f"{self.kind} rule needs a positive{' even' if self.kind == 'simpson' else ''} interval count"
            )

    @property
    def n_nodes(self) -> int:
        return self.intervals + 1

    @classmethod
    def from_nodes(cls, n_nodes: int, kind: str = "simpson") -> "QuadratureRule":
        return cls(kind, n_nodes - 1)

    def nodes_weights(self) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
        n = self.intervals
        h = 1.0 / n
        nodes = np.linspace(0.0, 1.0, n + 1)
        if self.kind == "trapezoid":
            w = np.full(n + 1, h)
            w[[0, -1]] = h / 2
        else:
            w = np.full(n + 1, 2.0 * h / 3.0)
            w[1::2] = 4.0 * h / 3.0
            w[[0, -1]] = h / 3.0
        return nodes, w

    def integrate(self, values: ArrayLike) -> NDArray[np.float64]:
        """Integrate samples taken at :meth:`nodes_weights` nodes along axis 0."""
        _, w = self.nodes_weights()
        return w @ np.asarray(values, dtype=float)


def gram_matrix(spec: BasisSpec, quadrature: QuadratureRule | None = None) -> NDArray[np.float64]:
    """Pairwise inner products of the basis functions, by quadrature.

    Meant for verification; fitting never uses it. The rule must have at
    least ``4 * max_wavenumber`` nodes, otherwise :class:`ResolutionError`
    is raised without looking at the integrand.
    """
    quadrature = quadrature or QuadratureRule()
    needed = 4 * spec.max_wavenumber
    if quadrature.n_nodes < needed:
        raise ResolutionError(
            f"{quadrature.n_nodes} quadrature nodes cannot resolve wavenumber {spec.max_wavenumber}; need >= {needed}"
        )
    nodes, w = quadrature.nodes_weights()
    phi = evaluate(spec, nodes)
    return phi.T @ (w[:, None] * phi)
