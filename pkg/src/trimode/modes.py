"""Closed-form normal modes of the bilinear three-mode Hamiltonian.

The rotation angles, intermediate energies and final excitation energies are
evaluated exactly as the closed forms are written, even in regimes where the
resulting frequencies turn imaginary; the exact counterpart (and the place to
look when the closed forms disagree with it) is :mod:`trimode.symplectic`.
"""

import cmath
import math
from dataclasses import dataclass, field

from .errors import ComplexThreshold
from .model import LinearizedParams

__all__ = [
    "NORMAL",
    "SUPERRADIANT",
    "UNSTABLE",
    "RotationAngles",
    "NormalModeResult",
    "rotation_angles",
    "excitation_energies",
    "critical_lambda",
    "lambda_unstable",
    "g1_critical",
    "classify_phase",
]

NORMAL = "Normal"
SUPERRADIANT = "Superradiant"
UNSTABLE = "Unstable"


@dataclass(frozen=True)
class RotationAngles:
    """Coordinate-rotation angles; the momentum-mixing angle is fixed at pi/4."""

    gamma1: float
    gamma2: float
    gamma3: float
    beta_p: float = field(default=math.pi / 4)


@dataclass(frozen=True)
class NormalModeResult:
    """Angles, squared intermediate energies, momentum weights, and the final
    (possibly imaginary) excitation energies with a phase label.

    Squares are kept so that negative values stay representable; the final
    energies are complex and satisfy eps_X**2 == eps_x2 * eps_p1 (and likewise
    for Y, Z) up to round-off.
    """

    angles: RotationAngles
    eps_x2: float
    eps_y2: float
    eps_z2: float
    eps_p1: float
    eps_p2: float
    eps_X: complex
    eps_Y: complex
    eps_Z: complex
    phase: str
    boundary: bool = False


def _half_atan2(num, den):
    # num == 0 means no mixing at all: pin the angle to zero rather than
    # letting atan2(0, negative) = pi fold in a spurious rotation.
    if num == 0.0:
        return 0.0
    return 0.5 * math.atan2(num, den)


def rotation_angles(lp: LinearizedParams) -> RotationAngles:
    """Mixing angles of the composite position rotation."""
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    g1 = _half_atan2(2.0 * lp.lam * math.sqrt(O1 * O2), O2**2 - O1**2)
    g2 = _half_atan2(4.0 * lp.G1 * math.sqrt(O1 * wm), O1**2 - wm**2)
    g3 = _half_atan2(4.0 * lp.G2 * math.sqrt(O2 * wm), O2**2 - wm**2)
    return RotationAngles(gamma1=g1, gamma2=g2, gamma3=g3)


def _radicals(lp: LinearizedParams):
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    r_xz = math.sqrt((O1**2 - wm**2) ** 2 + 16.0 * lp.G1**2 * O1 * wm)
    r_yz = math.sqrt((O2**2 - wm**2) ** 2 + 16.0 * lp.G2**2 * O2 * wm)
    r_xy = math.sqrt((O2**2 - O1**2) ** 2 + 4.0 * lp.lam**2 * O1 * O2)
    return r_xz, r_yz, r_xy


def classify_phase(nm: NormalModeResult) -> str:
    """Phase label implied by the signs stored in ``nm`` (see ``_classify``)."""
    return _classify(nm.eps_x2, nm.eps_y2, nm.eps_z2, nm.eps_p1)[0]


def _classify(eps_x2, eps_y2, eps_z2, eps_p1):
    # Unstable: both factors of eps_X**2 negative, so eps_X is negative real.
    if eps_p1 < 0.0 and eps_x2 < 0.0:
        return UNSTABLE, False
    prod = eps_x2 * eps_p1
    if prod == 0.0 or eps_z2 == 0.0:
        # exactly on a phase boundary; tie-break deterministically
        return SUPERRADIANT, True
    if prod < 0.0 or eps_z2 < 0.0:
        return SUPERRADIANT, False
    if eps_y2 >= 0.0:
        return NORMAL, False
    return SUPERRADIANT, False


def excitation_energies(lp: LinearizedParams) -> NormalModeResult:
    """Intermediate and final excitation energies plus the phase label."""
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    r_xz, r_yz, r_xy = _radicals(lp)
    eps_x2 = 0.5 * ((2.0 * O1**2 + O2**2 + wm**2) + (r_xz - r_xy))
    eps_y2 = 0.5 * ((O1**2 + 2.0 * O2**2 + wm**2) + (r_xy + r_yz))
    eps_z2 = 0.5 * ((O1**2 + O2**2 + 2.0 * wm**2) - (r_xz + r_yz))
    ratio = lp.lam / math.sqrt(O1 * O2)
    eps_p1 = 1.0 - ratio
    eps_p2 = 1.0 + ratio
    eps_X = cmath.sqrt(eps_x2) * cmath.sqrt(eps_p1)
    eps_Y = cmath.sqrt(eps_y2) * cmath.sqrt(eps_p2)
    eps_Z = cmath.sqrt(eps_z2)
    phase, boundary = _classify(eps_x2, eps_y2, eps_z2, eps_p1)
    return NormalModeResult(
        angles=rotation_angles(lp),
        eps_x2=eps_x2,
        eps_y2=eps_y2,
        eps_z2=eps_z2,
        eps_p1=eps_p1,
        eps_p2=eps_p2,
        eps_X=eps_X,
        eps_Y=eps_Y,
        eps_Z=eps_Z,
        phase=phase,
        boundary=boundary,
    )


def critical_lambda(lp: LinearizedParams) -> float:
    """Optical-optical coupling at which the soft momentum weight vanishes."""
    return math.sqrt(lp.Omega1 * lp.Omega2)


def lambda_unstable(lp: LinearizedParams) -> float:
    """Coupling above which eps_x**2 itself turns negative."""
    O1, O2 = lp.Omega1, lp.Omega2
    r_xz, _, _ = _radicals(lp)
    s = 2.0 * O1**2 + O2**2 + lp.omega_m**2 + r_xz
    radicand = s**2 - (O2**2 - O1**2) ** 2
    if radicand < 0.0:
        raise ComplexThreshold(f"negative radicand {radicand:.3e} in lambda_unstable")
    return math.sqrt(radicand) / (2.0 * math.sqrt(O1 * O2))


def g1_critical(lp: LinearizedParams) -> float:
    """Optomechanical coupling of mode 1 above which eps_Z turns imaginary."""
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    _, r_yz, _ = _radicals(lp)
    rhs = O1**2 + O2**2 + 2.0 * wm**2 - r_yz
    radicand = rhs**2 - (O1**2 - wm**2) ** 2
    if radicand < 0.0:
        raise ComplexThreshold(f"negative radicand {radicand:.3e} in g1_critical")
    return math.sqrt(radicand) / (4.0 * math.sqrt(O1 * wm))
