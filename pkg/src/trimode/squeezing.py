"""Quadrature variances of the original modes in the normal phase.

The six closed-form variances are evaluated exactly as written, using the
rotation angles and intermediate energies from :mod:`trimode.modes`. A
quadrature counts as squeezed when its variance drops below the coherent
reference 1/2. Near a critical point a denominator can collapse; such points
are reported with an infinity sentinel instead of an exception so that sweeps
always run to completion.

Note that these closed forms inherit the non-orthogonality of the composite
position rotation, so they can disagree with (and even fall below) the exact
ground-state covariance from :mod:`trimode.symplectic`; the exact uncertainty
checks live there on purpose.
"""

import math
from dataclasses import dataclass

from .errors import OutsideNormalPhase
from .model import LinearizedParams
from .modes import NORMAL, excitation_energies

__all__ = ["VarianceSet", "SweepPoint", "variances", "variance_sweep"]

SQUEEZING_REFERENCE = 0.5
_DENOM_FLOOR = 1e-12


@dataclass(frozen=True)
class VarianceSet:
    """The six quadrature variances with per-quadrature squeezing flags."""

    var_x: float
    var_y: float
    var_z: float
    var_px: float
    var_py: float
    var_pz: float
    squeezed_x: bool
    squeezed_y: bool
    squeezed_z: bool
    squeezed_px: bool
    squeezed_py: bool
    squeezed_pz: bool
    divergent: bool = False
    offending: str | None = None


@dataclass(frozen=True)
class SweepPoint:
    """One sweep sample: the coupling value, the variances (or None), and a
    per-point status flag ('ok' or 'outside_normal_phase')."""

    coupling: float
    variances: VarianceSet | None
    flag: str


def _guarded_sum(prefactor, terms, names):
    """prefactor * {1 + sum coef * num / den}; +inf when a weighted
    denominator collapses, together with the name of that denominator."""
    total = 1.0
    for (coef, num, den), name in zip(terms, names):
        if coef == 0.0:
            continue
        if den < _DENOM_FLOOR:
            return math.inf, name
        total += coef * num / den
    return prefactor * total, None


def variances(lp: LinearizedParams) -> VarianceSet:
    """The six closed-form variances at one parameter point.

    Raises :class:`OutsideNormalPhase` unless all intermediate energies are
    positive (the formulas only mean anything in the normal phase).
    """
    nm = excitation_energies(lp)
    if nm.phase != NORMAL or min(nm.eps_x2, nm.eps_y2, nm.eps_z2) <= 0.0 or nm.eps_p2 <= 0.0:
        raise OutsideNormalPhase(
            f"variances need the normal phase; got phase={nm.phase}, "
            f"eps_x2={nm.eps_x2:.4g}, eps_z2={nm.eps_z2:.4g}, eps_p1={nm.eps_p1:.4g}"
        )
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    ex, ey, ez = math.sqrt(nm.eps_x2), math.sqrt(nm.eps_y2), math.sqrt(nm.eps_z2)
    sp1, sp2 = math.sqrt(nm.eps_p1), math.sqrt(nm.eps_p2)
    a = nm.angles
    c12 = (math.cos(a.gamma1) + math.cos(a.gamma2)) ** 2
    c13 = (math.cos(a.gamma1) + math.cos(a.gamma3)) ** 2
    c23 = (math.cos(a.gamma2) + math.cos(a.gamma3)) ** 2
    s1 = math.sin(a.gamma1) ** 2
    s2 = math.sin(a.gamma2) ** 2
    s3 = math.sin(a.gamma3) ** 2

    pos_names = ("eps_x", "eps_y", "eps_z")
    mom_names = ("sqrt_eps_p1", "sqrt_eps_p2", "bare")

    def pos(scale, w1, w2, w3):
        # (1/(2*scale)) * {1 + sum w_i*(ref_i - eps_i)/eps_i}
        return _guarded_sum(
            1.0 / (2.0 * scale),
            [
                (w1, sp1 * scale - ex, ex),
                (w2, sp2 * scale - ey, ey),
                (w3, scale - ez, ez),
            ],
            pos_names,
        )

    def mom(scale, w1, w2, w3):
        # (scale/2) * {1 + sum w_i*(eps_i - ref_i)/ref_i}
        return _guarded_sum(
            scale / 2.0,
            [
                (w1, ex - sp1 * scale, sp1 * scale),
                (w2, ey - sp2 * scale, sp2 * scale),
                (w3, ez - scale, scale),
            ],
            mom_names,
        )

    var_x, o_x = pos(O1, c12, s1, s2)
    var_y, o_y = pos(O2, s1, c13, s3)
    var_z, o_z = pos(wm, s2, s3, c23)
    var_px, o_px = mom(O1, c12, s1, s2)
    var_py, o_py = mom(O2, s1, c13, s3)
    var_pz, o_pz = mom(wm, s2, s3, c23)

    offending = next((o for o in (o_x, o_y, o_z, o_px, o_py, o_pz) if o is not None), None)
    return VarianceSet(
        var_x=var_x,
        var_y=var_y,
        var_z=var_z,
        var_px=var_px,
        var_py=var_py,
        var_pz=var_pz,
        squeezed_x=var_x < SQUEEZING_REFERENCE,
        squeezed_y=var_y < SQUEEZING_REFERENCE,
        squeezed_z=var_z < SQUEEZING_REFERENCE,
        squeezed_px=var_px < SQUEEZING_REFERENCE,
        squeezed_py=var_py < SQUEEZING_REFERENCE,
        squeezed_pz=var_pz < SQUEEZING_REFERENCE,
        divergent=offending is not None,
        offending=offending,
    )


def variance_sweep(lp_base: LinearizedParams, which: str, grid) -> list:
    """Variance sets along a coupling sweep, one :class:`SweepPoint` each.

    ``which`` selects the swept coupling ('lambda', 'G1' or 'G2'). Points
    outside the normal phase are flagged rather than raised so the sweep
    always completes.
    """
    points = []
    for value in grid:
        lp = lp_base.with_coupling(which, float(value))
        try:
            points.append(SweepPoint(float(value), variances(lp), "ok"))
        except OutsideNormalPhase:
            points.append(SweepPoint(float(value), None, "outside_normal_phase"))
    return points
