"""Chirp oscillators generated by a constant shift of the harmonic-oscillator
Riccati solution: closed-form modes, frequency profiles, a complex Gauss
hypergeometric engine, an independent ODE oracle, and classification tools.
"""

from .core import (
    Classification,
    OscillatorParams,
    SingularityProximityError,
    TimeGrid,
    Trace,
    Verdict,
    build_grid,
    default_exclusion_radius,
    nearest_singularity_distance,
    singularity_locations,
)
from .riccati import RiccatiForm, RiccatiVariant, riccati_residual, riccati_shifted, riccati_u1
from .profiles import ProfileKind, freq_sq, pump_g, pump_h
from .hyp2f1 import (
    Hyp2F1Args,
    Hyp2F1DomainError,
    SeriesResult,
    SeriesUnconvergedError,
    Strategy,
    gamma_ratio_series_u1,
    gauss_2f1,
    transform_15_3_4,
)
from .modes import ModeKind, mode, mode_derivative, quasifrequency
from .oracle import (
    IVP,
    FactorOrder,
    IntegrationResult,
    StepSizeUnderflowError,
    factorization_apply,
    integrate,
    wronskian,
)
from .analysis import (
    InvariantReport,
    SkippedCheck,
    classify,
    run_full_check,
    verify_periodicity,
    pt_symmetry_report,
    product_invariant_report,
)

__version__ = "0.1.0"

__all__ = [
    "Classification",
    "OscillatorParams",
    "SingularityProximityError",
    "TimeGrid",
    "Trace",
    "Verdict",
    "build_grid",
    "default_exclusion_radius",
    "nearest_singularity_distance",
    "singularity_locations",
    "RiccatiForm",
    "RiccatiVariant",
    "riccati_residual",
    "riccati_shifted",
    "riccati_u1",
    "ProfileKind",
    "freq_sq",
    "pump_g",
    "pump_h",
    "Hyp2F1Args",
    "Hyp2F1DomainError",
    "SeriesResult",
    "SeriesUnconvergedError",
    "Strategy",
    "gamma_ratio_series_u1",
    "gauss_2f1",
    "transform_15_3_4",
    "ModeKind",
    "mode",
    "mode_derivative",
    "quasifrequency",
    "IVP",
    "FactorOrder",
    "IntegrationResult",
    "StepSizeUnderflowError",
    "factorization_apply",
    "integrate",
    "wronskian",
    "InvariantReport",
    "SkippedCheck",
    "classify",
    "run_full_check",
    "verify_periodicity",
    "pt_symmetry_report",
    "product_invariant_report",
    "__version__",
]
