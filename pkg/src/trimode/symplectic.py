"""Exact diagonalization of the quadratic Hamiltonian H = (1/2) v^T M v.

This module is the formula-independent cross-check for the closed-form
normal-mode expressions: it builds the 6x6 Hessian in the quadrature basis
(x, y, z, p_x, p_y, p_z), computes exact symplectic eigenvalues, the exact
ground-state covariance matrix, and locates the stability boundary without
using any closed-form energy expression.

Conventions fixed here and relied on by every caller: basis order is
(positions; momenta) and the symplectic form is J = [[0, I], [-I, 0]].
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .errors import NoSignChange, NumericalFailure, Unstable
from .model import LinearizedParams

__all__ = [
    "QuadraticForm",
    "SymplecticSpectrum",
    "symplectic_form",
    "hessian",
    "symplectic_eigenvalues",
    "ground_state_covariance",
    "stability_boundary_lambda",
]

_PAIR_RTOL = 1e-9
_SYM_ATOL = 1e-14


def symplectic_form(n_modes: int = 3) -> np.ndarray:
    """J = [[0, I], [-I, 0]] on (positions; momenta)."""
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """Symmetric Hessian of the quadratic Hamiltonian, H = (1/2) v^T M v."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (6, 6):
            raise ValueError("expected a 6x6 matrix")
        if np.abs(m - m.T).max() > _SYM_ATOL:
            raise ValueError("matrix is not symmetric")
        object.__setattr__(self, "matrix", m)


@dataclass(frozen=True, eq=False)
class SymplecticSpectrum:
    """Exact normal-mode frequencies, or the raw complex eigenvalues when the
    Hessian is not positive definite."""

    eigs: tuple | None
    stable: bool
    min_hessian_eig: float
    complex_eigs: np.ndarray | None = None


def hessian(lp: LinearizedParams) -> QuadraticForm:
    """Hessian of the quadrature-form Hamiltonian.

    Positions couple through the optomechanical terms and the optical-optical
    position product; momenta couple only between the two optical modes.
    """
    O1, O2, wm = lp.Omega1, lp.Omega2, lp.omega_m
    m = np.diag([O1**2, O2**2, wm**2, 1.0, 1.0, 1.0])
    m[0, 2] = m[2, 0] = -2.0 * lp.G1 * math.sqrt(O1 * wm)
    m[1, 2] = m[2, 1] = -2.0 * lp.G2 * math.sqrt(O2 * wm)
    m[0, 1] = m[1, 0] = lp.lam * math.sqrt(O1 * O2)
    m[3, 4] = m[4, 3] = lp.lam / math.sqrt(O1 * O2)
    return QuadraticForm(m)


def _check_spectrum_closure(evs: np.ndarray):
    """Eigenvalues of J M must be closed under negation and conjugation."""
    scale = max(1.0, np.abs(evs).max())
    atol = _PAIR_RTOL * scale
    for lam in evs:
        if np.abs(evs + lam).min() > atol or np.abs(evs - lam.conjugate()).min() > atol:
            raise NumericalFailure("dynamical eigenvalues violate +/- / conjugation closure")


def symplectic_eigenvalues(q: QuadraticForm) -> SymplecticSpectrum:
    """Exact symplectic eigenvalues via the dynamical matrix K = J M.

    Stability is judged by the minimum eigenvalue of M itself (a numerically
    clean sign to bisect on); when M is positive definite the K eigenvalues
    come in pairs +/- i*eps and the three positive eps are returned sorted.
    """
    m = q.matrix
    jm = symplectic_form() @ m
    try:
        evs = np.linalg.eigvals(jm)
        min_eig = float(np.linalg.eigvalsh(m).min())
    except np.linalg.LinAlgError as exc:
        raise NumericalFailure(f"eigenvalue solver failed: {exc}") from exc
    _check_spectrum_closure(evs)
    if min_eig <= 0.0:
        return SymplecticSpectrum(
            eigs=None, stable=False, min_hessian_eig=min_eig, complex_eigs=evs
        )
    pos = np.sort(evs.imag[evs.imag > 0.0])
    scale = max(1.0, np.abs(evs).max())
    if len(pos) != 3 or np.abs(evs.real).max() > _PAIR_RTOL * scale:
        raise NumericalFailure("positive-definite Hessian did not yield 3 pure +/-i pairs")
    for eps in pos:  # each +i*eps needs its -i*eps partner
        if np.abs(evs + 1j * eps).min() > _PAIR_RTOL * scale:
            raise NumericalFailure(f"unpaired dynamical eigenvalue at +i*{eps}")
    return SymplecticSpectrum(
        eigs=tuple(float(e) for e in pos), stable=True, min_hessian_eig=min_eig
    )


def _sqrtm_sym(m: np.ndarray, inverse: bool = False) -> np.ndarray:
    """Symmetric square root (or inverse square root) of an SPD matrix."""
    vals, vecs = np.linalg.eigh(m)
    if vals.min() <= 0.0:
        raise Unstable(f"matrix not positive definite (min eigenvalue {vals.min():.3e})")
    root = 1.0 / np.sqrt(vals) if inverse else np.sqrt(vals)
    return (vecs * root) @ vecs.T


def _williamson(m: np.ndarray):
    """Symplectic transformation bringing an SPD Hessian to normal form.

    Returns ``(eps, S)`` with ``S.T @ m @ S = diag(eps, eps)`` and
    ``S.T @ J @ S = J``; ``eps`` are the symplectic eigenvalues ascending.
    Standard construction: Schur-decompose the antisymmetric matrix
    M^{-1/2} J M^{-1/2}, whose 2x2 blocks carry 1/eps.
    """
    n = m.shape[0] // 2
    j = symplectic_form(n)
    mi2 = _sqrtm_sym(m, inverse=True)
    anti = mi2 @ j @ mi2
    t, z = schur(anti, output="real")
    eps = np.empty(n)
    for i in range(n):
        b = t[2 * i, 2 * i + 1]
        if b == 0.0:
            raise NumericalFailure("degenerate Schur block in Williamson reduction")
        if b < 0.0:  # swap the block's columns so the upper entry is positive
            z[:, [2 * i, 2 * i + 1]] = z[:, [2 * i + 1, 2 * i]]
            b = -b
        eps[i] = 1.0 / b
    # interleaved (q1, p1, ...) -> (positions; momenta)
    perm = np.zeros((2 * n, 2 * n))
    for i in range(n):
        perm[2 * i, i] = 1.0
        perm[2 * i + 1, n + i] = 1.0
    zp = z @ perm
    order = np.argsort(eps)
    eps = eps[order]
    zp = zp[:, np.concatenate([order, n + order])]
    s = mi2 @ zp @ np.diag(np.sqrt(np.concatenate([eps, eps])))
    return eps, s


def ground_state_covariance(q: QuadraticForm) -> np.ndarray:
    """Covariance matrix of the exact ground state of H = (1/2) v^T M v.

    Each normal mode is a vacuum with variance 1/2, so the covariance is
    (1/2) S S^T in the original quadrature basis.
    """
    _, s = _williamson(q.matrix)
    cov = 0.5 * (s @ s.T)
    return 0.5 * (cov + cov.T)


def stability_boundary_lambda(lp: LinearizedParams, bracket, tol: float = 1e-9) -> float:
    """Bisection root of lambda -> min eigenvalue of the Hessian.

    ``bracket`` is a (low, high) pair over which that minimum eigenvalue
    changes sign; the returned root is accurate to ``tol`` in lambda.
    """

    def min_eig(lam):
        return float(np.linalg.eigvalsh(hessian(lp.with_coupling("lambda", lam)).matrix).min())

    lo, hi = float(bracket[0]), float(bracket[1])
    if lo >= hi:
        raise ValueError("bracket must satisfy low < high")
    f_lo, f_hi = min_eig(lo), min_eig(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if f_lo * f_hi > 0.0:
        raise NoSignChange(
            f"min Hessian eigenvalue has the same sign at both ends "
            f"({f_lo:.3e}, {f_hi:.3e})"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f_mid = min_eig(mid)
        if f_mid == 0.0:
            return mid
        if f_lo * f_mid < 0.0:
            hi = mid
        else:
            lo, f_lo = mid, f_mid
    return 0.5 * (lo + hi)
