"""Physical parameter model, mean-field steady state, and linearization.

Units: hbar = k_B = 1 and every rate is measured in units of the mechanical
frequency, so ``omega_m`` is 1.0 by construction in :class:`SystemParams`.
Temperature is the dimensionless ratio k_B T / (hbar omega_m).
"""

import math
import warnings
from dataclasses import dataclass, replace

from .errors import (
    ComplexCouplingWarning,
    NoConvergence,
    NonPositiveEffectiveFrequency,
    NumericalFailure,
)

__all__ = [
    "SystemParams",
    "MeanFields",
    "LinearizedParams",
    "linearize",
    "solve_mean_fields",
    "residual_mean_fields",
]


@dataclass(frozen=True)
class SystemParams:
    """Bare frequencies, couplings, decay rates and temperature.

    ``g1``/``g2`` couple each optical mode to the mechanical mode, ``G_cross``
    couples the two optical modes via the mechanical displacement.
    """

    omega1: float
    omega2: float
    g1: float = 0.0
    g2: float = 0.0
    G_cross: float = 0.0
    gamma_c1: float = 0.0
    gamma_c2: float = 0.0
    gamma_m: float = 0.0
    T_dim: float = 0.0
    omega_m: float = 1.0

    def __post_init__(self):
        if not (self.omega1 > 0 and self.omega2 > 0):
            raise ValueError("optical frequencies must be positive")
        if self.omega_m != 1.0:
            raise ValueError("omega_m is the frequency unit and must be exactly 1.0")
        if self.gamma_c1 < 0 or self.gamma_c2 < 0 or self.gamma_m < 0:
            raise ValueError("decay rates must be nonnegative")
        if self.T_dim < 0:
            raise ValueError("temperature must be nonnegative")


@dataclass(frozen=True)
class MeanFields:
    """Complex steady-state amplitudes of the two optical modes and the
    mechanical mode."""

    alpha1: complex = 0j
    alpha2: complex = 0j
    beta_mf: complex = 0j

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta_mf"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"{name} must be finite")


@dataclass(frozen=True)
class LinearizedParams:
    """Effective parameters of the bilinear fluctuation Hamiltonian.

    ``Delta1``/``Delta2`` are fixed to the negatives of the effective optical
    frequencies; they are exposed as properties so the identity can never
    drift out of sync.
    """

    Omega1: float
    Omega2: float
    G1: float = 0.0
    G2: float = 0.0
    lam: float = 0.0
    gamma_c1: float = 0.0
    gamma_c2: float = 0.0
    gamma_m: float = 0.0
    T_dim: float = 0.0
    omega_m: float = 1.0

    def __post_init__(self):
        if self.Omega1 <= 0 or self.Omega2 <= 0 or self.omega_m <= 0:
            raise NonPositiveEffectiveFrequency(
                f"effective frequencies must be positive, got "
                f"Omega1={self.Omega1}, Omega2={self.Omega2}, omega_m={self.omega_m}"
            )
        if self.gamma_c1 < 0 or self.gamma_c2 < 0 or self.gamma_m < 0:
            raise ValueError("decay rates must be nonnegative")
        if self.T_dim < 0:
            raise ValueError("temperature must be nonnegative")

    @property
    def Delta1(self):
        return -self.Omega1

    @property
    def Delta2(self):
        return -self.Omega2

    def with_coupling(self, which, value):
        """Copy with one of the couplings ('lambda', 'G1', 'G2') replaced."""
        field = {"lambda": "lam", "lam": "lam", "G1": "G1", "G2": "G2"}.get(which)
        if field is None:
            raise ValueError(f"unknown coupling selector {which!r}")
        return replace(self, **{field: value})

    def as_dict(self):
        """Plain-dict form used by file sidecars; 'lambda' spelled out."""
        return {
            "Omega1": self.Omega1,
            "Omega2": self.Omega2,
            "omega_m": self.omega_m,
            "G1": self.G1,
            "G2": self.G2,
            "lambda": self.lam,
            "Delta1": self.Delta1,
            "Delta2": self.Delta2,
            "gamma_c1": self.gamma_c1,
            "gamma_c2": self.gamma_c2,
            "gamma_m": self.gamma_m,
            "T_dim": self.T_dim,
        }


_IMAG_TOL = 1e-12


def _real_coupling(value, name):
    """Take the real part of a linearized coupling, warning if the imaginary
    part is not negligible relative to the magnitude."""
    value = complex(value)
    scale = max(abs(value), 1.0)
    if abs(value.imag) > _IMAG_TOL * scale:
        warnings.warn(
            f"{name} has imaginary part {value.imag:.3e}; using the real part",
            ComplexCouplingWarning,
            stacklevel=3,
        )
    return value.real


def linearize(params: SystemParams, mf: MeanFields) -> LinearizedParams:
    """Effective frequencies and couplings about the given mean fields.

    The mechanical displacement enters only through 2*Re(beta); the optical
    couplings are reduced to their real parts (with a warning if that loses
    anything).
    """
    two_re_beta = 2.0 * complex(mf.beta_mf).real
    Omega1 = params.omega1 - params.g1 * two_re_beta
    Omega2 = params.omega2 - params.g2 * two_re_beta
    G1 = _real_coupling(
        complex(mf.alpha1) * params.g1 - params.G_cross * complex(mf.alpha2), "G1"
    )
    G2 = _real_coupling(
        complex(mf.alpha2) * params.g2 - params.G_cross * complex(mf.alpha1), "G2"
    )
    lam = params.G_cross * two_re_beta
    return LinearizedParams(
        Omega1=Omega1,
        Omega2=Omega2,
        G1=G1,
        G2=G2,
        lam=lam,
        gamma_c1=params.gamma_c1,
        gamma_c2=params.gamma_c2,
        gamma_m=params.gamma_m,
        T_dim=params.T_dim,
        omega_m=params.omega_m,
    )


def _fixed_point_map(params: SystemParams, mf: MeanFields) -> MeanFields:
    """One evaluation of the steady-state self-consistency relations."""
    a1, a2, b = complex(mf.alpha1), complex(mf.alpha2), complex(mf.beta_mf)
    tb = 2.0 * b.real  # beta + conj(beta)
    den1 = 1j * params.g1 * tb - (1j * params.omega1 + params.gamma_c1 / 2.0)
    den2 = 1j * params.g2 * tb - (1j * params.omega2 + params.gamma_c2 / 2.0)
    den3 = 1j * params.omega_m + params.gamma_m
    if den1 == 0 or den2 == 0 or den3 == 0:
        raise NumericalFailure("steady-state map has a vanishing denominator")
    new_a1 = 1j * params.G_cross * a2 * tb / den1
    new_a2 = 1j * params.G_cross * a1 * tb / den2
    cross = 2.0 * (a1 * a2.conjugate()).real
    new_b = (
        1j * (params.g1 * abs(a1) ** 2 + params.g2 * abs(a2) ** 2 - params.G_cross * cross)
        / den3
    )
    return MeanFields(alpha1=new_a1, alpha2=new_a2, beta_mf=new_b)


def residual_mean_fields(params: SystemParams, mf: MeanFields) -> float:
    """Max-norm of the three steady-state defects.

    Each defect is the magnitude of the corresponding time derivative
    evaluated at the candidate fields, so the residual is zero exactly when
    the fields solve the steady-state relations.
    """
    a1, a2, b = complex(mf.alpha1), complex(mf.alpha2), complex(mf.beta_mf)
    tb = 2.0 * b.real
    d1 = abs(
        -(1j * params.omega1 + params.gamma_c1 / 2.0) * a1
        + 1j * tb * (params.g1 * a1 - params.G_cross * a2)
    )
    d2 = abs(
        -(1j * params.omega2 + params.gamma_c2 / 2.0) * a2
        + 1j * tb * (params.g2 * a2 - params.G_cross * a1)
    )
    cross = 2.0 * (a1 * a2.conjugate()).real
    d3 = abs(
        -(1j * params.omega_m + params.gamma_m) * b
        + 1j * (params.g1 * abs(a1) ** 2 + params.g2 * abs(a2) ** 2 - params.G_cross * cross)
    )
    return max(d1, d2, d3)


_DAMPING = 0.5  # plain iteration of the steady-state map can oscillate


def solve_mean_fields(
    params: SystemParams,
    initial_guess: MeanFields = MeanFields(),
    tol: float = 1e-12,
    max_iter: int = 10_000,
):
    """Damped fixed-point iteration of the steady-state relations.

    Returns ``(fields, residual)`` with ``residual <= tol`` on success and
    raises :class:`NoConvergence` (carrying the last iterate) otherwise.
    The iteration is fully deterministic.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    current = initial_guess
    residual = residual_mean_fields(params, current)
    if residual <= tol:
        return current, residual
    for _ in range(max_iter):
        target = _fixed_point_map(params, current)
        current = MeanFields(
            alpha1=(1 - _DAMPING) * complex(current.alpha1) + _DAMPING * complex(target.alpha1),
            alpha2=(1 - _DAMPING) * complex(current.alpha2) + _DAMPING * complex(target.alpha2),
            beta_mf=(1 - _DAMPING) * complex(current.beta_mf) + _DAMPING * complex(target.beta_mf),
        )
        residual = residual_mean_fields(params, current)
        if residual <= tol:
            return current, residual
    raise NoConvergence(
        f"no convergence after {max_iter} iterations (residual {residual:.3e})",
        fields=current,
        residual=residual,
    )
