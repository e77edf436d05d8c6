"""Fundamental cardinal exponential B-splines of real order."""
__version__ = "0.1.0"

from ._backend import BACKEND
from .admissibility import (
    AdmissibilityReport,
    check_admissibility,
    denominator_Z,
    find_non_admissible_sigma,
    lhs_condition2,
    sigma_zero,
)
from .bspline import (
    SeriesTruncation,
    SplineParams,
    eval_time_domain,
    eval_time_domain_array,
    fourier_decay_envelope,
    fourier_moment_growth,
    fourier_transform,
    generalized_binomial,
)
from .complex_analysis import ZetaConfig, hurwitz_zeta, principal_power
from .exceptions import (
    BracketError,
    ConfigError,
    DomainError,
    ExpSplineError,
    NearZeroDenominatorError,
    NotAdmissibleError,
    PrecisionError,
    RangeError,
    SymbolZeroError,
)
from .fundamental import (
    CurveSample,
    FundamentalSplineModel,
    QuadratureSpec,
    compute_coefficients,
    emit_figure_data,
    eval_L_fourier,
    eval_L_series,
    integrand_h,
)
from .sampling import (
    BasisSpec,
    ReconstructionCase,
    fourier_coefficient_interpolant,
    kramer_conditions_check,
    reconstruct,
)

__all__ = [name for name in dir() if not name.startswith("_")]
