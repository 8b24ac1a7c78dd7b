"""Spontaneous emission near a slowly oscillating perfect mirror.

Decay rates and emission spectra for a two-level atom in front of a plane
boundary whose position oscillates adiabatically, plus brute-force
quadrature oracles that re-derive every closed-form ingredient.
"""

from .modes import (
    KINDS,
    PARALLEL,
    PERPENDICULAR,
    ExpansionCoeffs,
    MirrorTrajectory,
    expansion_coeffs,
    mode_at_time,
    mode_scalar,
)
from .oracle import (
    Direction,
    NonconvergenceError,
    OracleReport,
    angular_bracket_quadrature,
    exact_mode_probability,
    expanded_mode_probability,
    polarization_tensor,
    run_validation_suite,
    spectrum_by_quadrature,
)
from .params import (
    DEFAULT_THRESHOLDS,
    ConfigError,
    DerivedScales,
    PhysicalParams,
    ValidationReport,
    config_digest,
    derive_scales,
    load_config,
    validate_adiabatic,
)
from .rate import (
    BRACKETS,
    QuadratureError,
    RateSeries,
    b0,
    b1,
    b2,
    b3,
    decay_probability,
    r_parallel,
    r_perpendicular,
    rate_exact,
    rate_first_order,
    rate_series,
)
from .spectrum import (
    PEAK_LABELS,
    Peak,
    PeakReport,
    SpectrumSeries,
    SpectrumSurface,
    envelope,
    find_peaks,
    h_kernel,
    h_kernels,
    sinc_kernel,
    spectrum_dynamic,
    spectrum_series,
    spectrum_static,
    spectrum_surface,
)

__version__ = "0.1.0"

__all__ = [
    "BRACKETS",
    "ConfigError",
    "DEFAULT_THRESHOLDS",
    "DerivedScales",
    "Direction",
    "ExpansionCoeffs",
    "KINDS",
    "MirrorTrajectory",
    "NonconvergenceError",
    "OracleReport",
    "PARALLEL",
    "PEAK_LABELS",
    "PERPENDICULAR",
    "Peak",
    "PeakReport",
    "PhysicalParams",
    "QuadratureError",
    "RateSeries",
    "SpectrumSeries",
    "SpectrumSurface",
    "ValidationReport",
    "angular_bracket_quadrature",
    "b0",
    "b1",
    "b2",
    "b3",
    "config_digest",
    "decay_probability",
    "derive_scales",
    "envelope",
    "exact_mode_probability",
    "expanded_mode_probability",
    "expansion_coeffs",
    "find_peaks",
    "h_kernel",
    "h_kernels",
    "load_config",
    "mode_at_time",
    "mode_scalar",
    "polarization_tensor",
    "r_parallel",
    "r_perpendicular",
    "rate_exact",
    "rate_first_order",
    "rate_series",
    "run_validation_suite",
    "sinc_kernel",
    "spectrum_by_quadrature",
    "spectrum_dynamic",
    "spectrum_series",
    "spectrum_static",
    "spectrum_surface",
    "validate_adiabatic",
]
