"""Finite-section laboratory for Toeplitz operators on the Bergman space.

The package realizes Toeplitz operators with bounded harmonic symbols
on the Bergman space of the unit disc as finite truncated matrices in
the orthonormal monomial basis, and provides the surrounding apparatus
(kernel transforms, grid minimization of symbol modulus, singular value
trends, operator inequality checks) needed to study invertibility at
desk scale.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .analysis import (
    InvertibilityReport,
    PowerStudyReport,
    TrendReport,
    VerdictConfig,
    adjoint_mix,
    bounded_below_trend,
    invertibility_verdict,
    mix_bound_check,
    mix_sandwich_check,
    mix_transfer_check,
    normality_defect,
    power_symbol_study,
    random_normal_matrix,
    shift_window_demo,
    smallest_singular_value,
)
from .berezin import (
    BerezinSample,
    berezin_grid,
    berezin_harmonic,
    berezin_integral,
    berezin_matrix,
    grid_to_csv,
    grid_to_json,
)
from .disc import (
    PowerSeries,
    QuadratureSpec,
    bergman_inner_product,
    disc_quadrature,
    kernel_eval,
    normalized_kernel_coeffs,
)
from .errors import ConfigError, DomainError, ExtractionError, NumericalError
from .symbols import (
    DiscGrid,
    HarmonicSymbol,
    ModulusScan,
    PolynomialSymbol,
    PrincipalPowerSymbol,
    RationalSymbol,
    default_modulus_grid,
    inf_modulus,
    polynomial_symbol,
    power_symbol,
    principal_power_symbol,
    rational_symbol,
    taylor_coeffs,
)
from .toeplitz import (
    ProductDefects,
    TruncatedOperator,
    matrix_from_json,
    matrix_to_csv,
    matrix_to_json,
    toeplitz_analytic,
    toeplitz_harmonic,
    toeplitz_quadrature,
    verify_product_identities,
)

__all__ = [
    "__version__",
    "PowerSeries",
    "QuadratureSpec",
    "bergman_inner_product",
    "disc_quadrature",
    "kernel_eval",
    "normalized_kernel_coeffs",
    "ConfigError",
    "DomainError",
    "ExtractionError",
    "NumericalError",
    "DiscGrid",
    "HarmonicSymbol",
    "ModulusScan",
    "PolynomialSymbol",
    "PrincipalPowerSymbol",
    "RationalSymbol",
    "default_modulus_grid",
    "inf_modulus",
    "polynomial_symbol",
    "power_symbol",
    "principal_power_symbol",
    "rational_symbol",
    "taylor_coeffs",
    "ProductDefects",
    "TruncatedOperator",
    "matrix_from_json",
    "matrix_to_csv",
    "matrix_to_json",
    "toeplitz_analytic",
    "toeplitz_harmonic",
    "toeplitz_quadrature",
    "verify_product_identities",
    "BerezinSample",
    "berezin_grid",
    "berezin_harmonic",
    "berezin_integral",
    "berezin_matrix",
    "grid_to_csv",
    "grid_to_json",
    "InvertibilityReport",
    "PowerStudyReport",
    "TrendReport",
    "VerdictConfig",
    "adjoint_mix",
    "bounded_below_trend",
    "invertibility_verdict",
    "mix_bound_check",
    "mix_sandwich_check",
    "mix_transfer_check",
    "normality_defect",
    "power_symbol_study",
    "random_normal_matrix",
    "shift_window_demo",
    "smallest_singular_value",
]
