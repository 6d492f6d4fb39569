"""Two optical modes coupled to one mechanical mode.

Mean-field steady states, closed-form normal modes and phase boundaries,
quadrature squeezing variances, and the mechanical displacement spectrum,
each backed by an independent numerical cross-check (exact symplectic
diagonalization; stochastic time-domain simulation).
"""

__version__ = "0.1.0"

from .errors import (
    ComplexCouplingWarning,
    ComplexThreshold,
    ConfigError,
    InvalidStep,
    NoConvergence,
    NonPositiveEffectiveFrequency,
    NoSignChange,
    NumericalFailure,
    OutsideNormalPhase,
    TooShort,
    TrimodeError,
    Unstable,
    UnstableParameters,
)
from .model import (
    LinearizedParams,
    MeanFields,
    SystemParams,
    linearize,
    residual_mean_fields,
    solve_mean_fields,
)
from .modes import (
    NORMAL,
    SUPERRADIANT,
    UNSTABLE,
    NormalModeResult,
    RotationAngles,
    classify_phase,
    critical_lambda,
    excitation_energies,
    g1_critical,
    lambda_unstable,
    rotation_angles,
)
from .symplectic import (
    QuadraticForm,
    SymplecticSpectrum,
    ground_state_covariance,
    hessian,
    stability_boundary_lambda,
    symplectic_eigenvalues,
    symplectic_form,
)
from .squeezing import SweepPoint, VarianceSet, variance_sweep, variances
from .spectrum import (
    Peak,
    SpectrumResult,
    TransferCoefficients,
    coefficients,
    displacement_spectrum,
    find_peaks,
    symmetrized_cross_term,
    thermal_kernel,
)
from .langevin import (
    DriftMatrix,
    Trajectory,
    averaged_psd,
    compare_psd_with_analytic,
    drift_matrix,
    estimate_psd,
    simulate,
    smooth_psd,
)
from .config import (
    load_linearized_params,
    load_params_file,
    load_system_params,
)
from .presets import PRESETS, Preset

__all__ = [
    "__version__",
    # model
    "SystemParams", "MeanFields", "LinearizedParams",
    "linearize", "solve_mean_fields", "residual_mean_fields",
    # normal modes
    "NORMAL", "SUPERRADIANT", "UNSTABLE",
    "RotationAngles", "NormalModeResult",
    "rotation_angles", "excitation_energies", "classify_phase",
    "critical_lambda", "lambda_unstable", "g1_critical",
    # exact oracle
    "QuadraticForm", "SymplecticSpectrum", "symplectic_form",
    "hessian", "symplectic_eigenvalues", "ground_state_covariance",
    "stability_boundary_lambda",
    # squeezing
    "VarianceSet", "SweepPoint", "variances", "variance_sweep",
    # spectrum
    "TransferCoefficients", "SpectrumResult", "Peak",
    "thermal_kernel", "coefficients", "displacement_spectrum",
    "find_peaks", "symmetrized_cross_term",
    # langevin
    "DriftMatrix", "Trajectory",
    "drift_matrix", "simulate", "estimate_psd", "averaged_psd",
    "smooth_psd", "compare_psd_with_analytic",
    # config + presets
    "load_system_params", "load_linearized_params", "load_params_file",
    "PRESETS", "Preset",
    # errors
    "TrimodeError", "NonPositiveEffectiveFrequency", "NoConvergence",
    "ComplexThreshold", "OutsideNormalPhase", "UnstableParameters",
    "Unstable", "NumericalFailure", "NoSignChange", "InvalidStep",
    "TooShort", "ConfigError", "ComplexCouplingWarning",
]
