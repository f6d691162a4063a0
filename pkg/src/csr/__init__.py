"""Cosine series representation of functional data on [0, 1].

Least-squares expansion of sampled series in the Laplacian eigenbases
(cosine, sine, periodic Fourier), batch fitting against a shared design
factorization, reconstruction and denoising, noise simulation, and
boundary-artifact diagnostics.
"""

__version__ = "0.1.0"

from .basis import (
    BasisSpec,
    EigenPair,
    Family,
    QuadratureRule,
    eigenpairs,
    eigenvalue,
    eval_basis,
    gram_matrix,
)
from .design import DesignMatrix, SampleGrid, build_design, make_grid, orthonormalize_design, uniform_grid
from .diagnostics import GibbsReport, gibbs_compare
from .errors import (
    CollinearityError,
    CSRError,
    DataError,
    DegenerateGridError,
    DomainError,
    IndexRangeError,
    InputValidationError,
    NumericalError,
    ParseError,
    ResolutionError,
    ShapeError,
    SizeError,
    UnderdeterminedError,
)
from .fit import CoefficientSet, SeriesBatch, fit_batch, fit_single, project_continuous
from .synth import NoiseModel, sample_noise, sample_observation
from .transform import Reconstruction, denoise, evaluate, reconstruct, residuals

__all__ = [
    "BasisSpec", "EigenPair", "Family", "QuadratureRule", "eigenpairs", "eigenvalue", "eval_basis", "gram_matrix",
    "DesignMatrix", "SampleGrid", "build_design", "make_grid", "orthonormalize_design", "uniform_grid",
    "GibbsReport", "gibbs_compare",
    "CSRError", "DataError", "NumericalError", "CollinearityError", "DegenerateGridError", "DomainError",
    "IndexRangeError", "InputValidationError", "ParseError", "ResolutionError", "ShapeError", "SizeError",
    "UnderdeterminedError",
    "CoefficientSet", "SeriesBatch", "fit_batch", "fit_single", "project_continuous",
    "NoiseModel", "sample_noise", "sample_observation",
    "Reconstruction", "denoise", "evaluate", "reconstruct", "residuals",
]
