"""pointwalk: exact and asymptotic analysis of a lattice random walk whose
transition row is modified at a single point.

The package provides four independent routes to the same transition
probabilities — dynamic programming (`exact`), representation formulas
(`representation`), Gaussian asymptotics with correction terms
(`asymptotics`), and Monte Carlo sampling (`montecarlo`) — and a
verification suite that cross-checks them against each other.
"""

from ._backend import BACKEND
from .asymptotics import (
    DELTA_CALIBRATION,
    AppendixReport,
    CorrectionProfile,
    appendix_bound_check,
    calibrate_delta,
    correction_profile,
    delta_closed,
    delta_profile,
    delta_quadrature,
    delta_sum,
    erf_b,
    erf_sigma,
    exact_correction,
    gaussian_term,
    psi_tail_check,
    scale_guard,
)
from .errors import (
    BoxTooSmall,
    CapExceeded,
    DegenerateCovariance,
    DimensionMismatch,
    GridTooSmall,
    NotAProbability,
    NotAntisymmetric,
    NotSymmetric,
    PeriodicKernel,
    PointwalkError,
    QuadratureNotConverged,
    Reducible,
    SingularCovariance,
    UnsupportedDimension,
    ValidationError,
    WrongParity,
)
from .exact import (
    evolve_free,
    evolve_perturbed,
    evolve_taboo,
    first_return_sequence,
    return_sequence,
    rho,
    rho_direct,
)
from .fields import MassField, ReturnSequence
from .kernels import (
    LAZY_1D,
    LAZY_2D,
    LAZY_3D,
    NN_2D,
    SYMMETRIC_1D,
    MomentData,
    SignedKernel,
    Walk,
    WalkSpec,
    load_walk,
    moments,
    validate,
    walk_from_json,
)
from .montecarlo import EmpiricalField, coverage_check, drift_estimate, sample
from .quadrature import QuadratureConfig, QuadratureResult, integrate
from .representation import (
    characteristic_decay_rate,
    convolution_identity_check,
    convolution_series,
    fourier_inversion_check,
    pi_antisymmetric,
    pi_symmetric,
)
from .verification import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DELTA_CALIBRATION",
    "__version__",
    # kernels
    "SignedKernel", "WalkSpec", "Walk", "MomentData", "validate", "moments",
    "walk_from_json", "load_walk",
    "LAZY_1D", "NN_2D", "LAZY_2D", "LAZY_3D", "SYMMETRIC_1D",
    # fields
    "MassField", "ReturnSequence", "EmpiricalField",
    # exact engine
    "evolve_free", "evolve_perturbed", "evolve_taboo", "return_sequence",
    "first_return_sequence", "rho", "rho_direct",
    # representation
    "pi_antisymmetric", "pi_symmetric", "convolution_series",
    "convolution_identity_check", "fourier_inversion_check",
    "characteristic_decay_rate",
    # asymptotics
    "gaussian_term", "exact_correction", "delta_sum", "delta_quadrature",
    "delta_profile", "delta_closed", "erf_sigma", "erf_b", "psi_tail_check",
    "appendix_bound_check", "AppendixReport", "correction_profile",
    "CorrectionProfile", "calibrate_delta", "scale_guard",
    # quadrature
    "QuadratureConfig", "QuadratureResult", "integrate",
    # monte carlo
    "sample", "drift_estimate", "coverage_check",
    # verification
    "CheckResult", "run_checks",
    # errors
    "PointwalkError", "ValidationError", "NotAProbability", "NotSymmetric",
    "NotAntisymmetric", "Reducible", "DimensionMismatch",
    "DegenerateCovariance", "SingularCovariance", "PeriodicKernel",
    "BoxTooSmall", "WrongParity", "CapExceeded", "GridTooSmall",
    "QuadratureNotConverged", "UnsupportedDimension",
]
