"""Analytic displacement spectrum of the mechanical mode.

The Fourier-domain solution of the linear quadrature equations expresses the
mechanical position as a rational transfer function of the five noise inputs;
the coefficient assembly below reproduces that solution exactly (it has been
checked channel by channel against direct matrix inversion of the equations
of motion). The symmetrized spectrum is then

    S_Q(w) = [ |f_W|^2 * (gamma_m/omega_m) * w*coth(w/(2*T_dim))
               + |f_X1|^2 + |f_Y1|^2 + |f_X2|^2 + |f_Y2|^2 ] / |B|^2

with unit-intensity vacuum inputs on the optical quadratures. Symmetrization
kills the odd part of the thermal kernel and the imaginary amplitude-phase
cross correlators; the cross-term cancellation is exposed as a function so it
can be tested instead of assumed. Overall normalization is fixed by absorbing
the 2*pi-delta factors of the input correlators, so only relative structure
(peak positions, ratios) is meaningful.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy import signal

from . import langevin
from .errors import UnstableParameters
from .model import LinearizedParams

__all__ = [
    "TransferCoefficients",
    "SpectrumResult",
    "Peak",
    "thermal_kernel",
    "coefficients",
    "displacement_spectrum",
    "find_peaks",
    "symmetrized_cross_term",
]


@dataclass(frozen=True, eq=False)
class TransferCoefficients:
    """Rational-function building blocks at one frequency (or a grid).

    ``f_*`` multiply the corresponding noise inputs in the numerator of the
    mechanical response; ``B`` is the shared denominator.
    """

    C1: complex
    C2: complex
    C3: complex
    C4: complex
    C5: complex
    f_W: complex
    f_X1: complex
    f_Y1: complex
    f_X2: complex
    f_Y2: complex
    B: complex


@dataclass(eq=False)
class SpectrumResult:
    """Spectrum values on a frequency grid, plus any detected peaks."""

    omega_grid: np.ndarray
    s_values: np.ndarray
    params: LinearizedParams
    peaks: list = field(default_factory=list)


@dataclass(frozen=True)
class Peak:
    omega_peak: float
    height: float
    prominence: float


def thermal_kernel(omega, T_dim):
    """Symmetrized bath kernel w*coth(w/(2*T)) with safe limits.

    Evaluated by series for |w| < 1e-6*T (the direct ratio would be 0/0 at
    w = 0); at T = 0 the kernel reduces to |w|.
    """
    omega = np.asarray(omega, dtype=float)
    if T_dim == 0.0:
        out = np.abs(omega)
    else:
        small = np.abs(omega) < 1e-6 * T_dim
        x = np.where(small, 1.0, omega / (2.0 * T_dim))
        out = np.where(
            small,
            2.0 * T_dim + omega**2 / (6.0 * T_dim),
            omega / np.tanh(x),
        )
    return out if out.ndim else float(out)


def coefficients(lp: LinearizedParams, omega) -> TransferCoefficients:
    """Transfer-function coefficients at the given frequency (scalar or array).

    Every field satisfies c(-w) = conj(c(+w)): the coefficients are rational
    in i*w with real parameter coefficients.
    """
    omega = np.asarray(omega, dtype=float)
    D1, D2 = lp.Delta1, lp.Delta2
    g1, g2 = lp.gamma_c1, lp.gamma_c2
    wm, lam = lp.omega_m, lp.lam
    G1, G2 = lp.G1, lp.G2
    s1 = 1j * omega + g1 / 2.0
    s2 = 1j * omega + g2 / 2.0
    d1 = D1**2 - omega**2 + g1**2 / 4.0 + 1j * omega * g1
    d2 = D2**2 - omega**2 + g2**2 / 4.0 + 1j * omega * g2
    c1 = s1 * d2 + lam**2 * s2
    c2 = d2 * d1 + lam**4 + 2.0 * lam**2 * (s1 * s2 - D1 * D2)
    brace = D1 * s2 + D2 * s1
    c3 = wm * G1 * c1 + lam * wm * G2 * brace
    mech = wm**2 - omega**2 + 1j * omega * lp.gamma_m
    c4 = d2 * c2 * (mech * c1 + wm * G2**2 * D2 * s1 - lam * wm * G1 * G2 * s2)
    c5 = c3 * (lam * G2 * c1 * s2 - (lam * G2 * D2 + G1 * d2) * (D1 * d2 - lam**2 * D2))
    f_w = wm * d2 * c1 * c2
    f_x1 = np.sqrt(g1) * d2 * c1 * c3
    f_y1 = np.sqrt(g1) * d2 * (lam * wm * G2 * s2 * c2 + (lam**2 * D2 - D1 * d2) * c3)
    f_x2 = np.sqrt(g2) * d2 * (
        lam**2 * wm * G2 * brace**2 + wm * G2 * c2 * s1 * s2 + lam * wm * G1 * c1 * brace
    )
    f_y2 = np.sqrt(g2) * (
        lam * c3 * (lam**2 * D2**2 - D1 * D2 * d2 + c1 * s2) - wm * G2 * D2 * c2 * s1 * d2
    )
    return TransferCoefficients(
        C1=c1, C2=c2, C3=c3, C4=c4, C5=c5,
        f_W=f_w, f_X1=f_x1, f_Y1=f_y1, f_X2=f_x2, f_Y2=f_y2,
        B=c4 - c5,
    )


def displacement_spectrum(lp: LinearizedParams, omega_grid) -> SpectrumResult:
    """Symmetrized displacement spectrum on a frequency grid.

    Refuses parameter sets whose drift matrix has an eigenvalue with positive
    real part: without a stationary state the spectrum does not exist, and
    evaluating the algebra anyway would report structure that no measurement
    could show.
    """
    dm = langevin.drift_matrix(lp)
    if dm.spectral_abscissa >= 0.0:
        evs = np.linalg.eigvals(dm.A)
        worst = evs[np.argmax(evs.real)]
        raise UnstableParameters(
            f"drift matrix unstable: eigenvalue {worst:.6g} has nonnegative real part",
            eigenvalue=complex(worst),
        )
    omega = np.asarray(omega_grid, dtype=float)
    co = coefficients(lp, omega)
    thermal = (lp.gamma_m / lp.omega_m) * thermal_kernel(omega, lp.T_dim)
    num = (
        np.abs(co.f_W) ** 2 * thermal
        + np.abs(co.f_X1) ** 2
        + np.abs(co.f_Y1) ** 2
        + np.abs(co.f_X2) ** 2
        + np.abs(co.f_Y2) ** 2
    )
    return SpectrumResult(omega_grid=omega, s_values=num / np.abs(co.B) ** 2, params=lp)


def find_peaks(sr: SpectrumResult, prominence_frac: float) -> list:
    """Strict local maxima with prominence >= prominence_frac * global max.

    The grid must resolve the features being counted: a peak narrower than a
    few grid spacings cannot be detected reliably.
    """
    s = np.asarray(sr.s_values, dtype=float)
    idx, props = signal.find_peaks(s, prominence=prominence_frac * s.max())
    return [
        Peak(
            omega_peak=float(sr.omega_grid[i]),
            height=float(s[i]),
            prominence=float(p),
        )
        for i, p in zip(idx, props["prominences"])
    ]


def symmetrized_cross_term(lp: LinearizedParams, omega):
    """Symmetrized contribution of the imaginary amplitude-phase correlators.

    The X_in/Y_in inputs of each optical mode have correlators +/-2i*pi*delta;
    their contribution to the symmetrized spectrum is assembled literally here
    and cancels identically. Returned (rather than asserted) so tests can
    verify the cancellation.
    """
    co = coefficients(lp, omega)
    total = 0.0
    for f, g in ((co.f_X1, co.f_Y1), (co.f_X2, co.f_Y2)):
        # <XY> carries +i, <YX> carries -i; add the omega <-> -omega partner
        # using c(-w) = conj(c(w))
        total = total + 0.5 * (
            1j * f * np.conj(g)
            - 1j * g * np.conj(f)
            + 1j * np.conj(f) * g
            - 1j * np.conj(g) * f
        )
    return total / np.abs(co.B) ** 2
