"""Time-domain oracle: stochastic integration of the quadrature equations.

The linear Langevin system over the state (X1, Y1, X2, Y2, Q, P) is driven by
four unit-intensity white noises on the optical quadratures and a white
thermal force on P. The thermal force uses the classical high-temperature
limit of the colored bath kernel: for the temperatures this model targets
(T_dim >> 1) the kernel omega*coth(omega/(2*T_dim)) is flat to better than
1e-8 across the band of interest, so a white drive of two-sided intensity
2*T_dim*gamma_m/omega_m is exact for all practical purposes. The quantum
cross-correlations between amplitude and phase inputs are dropped here; they
cancel identically in the symmetrized spectrum (see trimode.spectrum, where
that cancellation is computed rather than assumed).

Trajectories are reproducible: the noise stream comes from a counter-based
Philox generator keyed by the seed.
"""

from dataclasses import dataclass

import numpy as np
from scipy import signal

from .errors import InvalidStep, TooShort, Unstable
from .model import LinearizedParams

__all__ = [
    "DriftMatrix",
    "Trajectory",
    "RNG_ALGORITHM",
    "drift_matrix",
    "simulate",
    "estimate_psd",
    "averaged_psd",
    "smooth_psd",
    "compare_psd_with_analytic",
]

RNG_ALGORITHM = "philox"
STATE_LABELS = ("X1", "Y1", "X2", "Y2", "Q", "P")
_OVERFLOW_GUARD = 1e12
_GUARD_INTERVAL = 1024


@dataclass(frozen=True, eq=False)
class DriftMatrix:
    """Drift matrix A, the 6x5 noise map (columns X_in1, Y_in1, X_in2, Y_in2,
    W) and the spectral abscissa of A."""

    A: np.ndarray
    noise_map: np.ndarray
    spectral_abscissa: float


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Uniformly sampled state history including the initial condition."""

    dt: float
    states: np.ndarray  # shape (n_steps + 1, 6)
    seed: int
    params: LinearizedParams

    @property
    def q(self):
        return self.states[:, 4]

    @property
    def times(self):
        return self.dt * np.arange(self.states.shape[0])


def drift_matrix(lp: LinearizedParams) -> DriftMatrix:
    """Drift matrix of the linear quadrature equations, entry by entry."""
    D1, D2 = lp.Delta1, lp.Delta2
    g1, g2, gm = lp.gamma_c1, lp.gamma_c2, lp.gamma_m
    wm, lam = lp.omega_m, lp.lam
    a = np.array(
        [
            [-g1 / 2, -D1, 0.0, lam, 0.0, 0.0],
            [D1, -g1 / 2, -lam, 0.0, lp.G1, 0.0],
            [0.0, lam, -g2 / 2, -D2, 0.0, 0.0],
            [-lam, 0.0, D2, -g2 / 2, lp.G2, 0.0],
            [0.0, 0.0, 0.0, 0.0, 0.0, wm],
            [lp.G1, 0.0, lp.G2, 0.0, -wm, -gm],
        ]
    )
    noise = np.zeros((6, 5))
    noise[0, 0] = noise[1, 1] = np.sqrt(g1)
    noise[2, 2] = noise[3, 3] = np.sqrt(g2)
    noise[5, 4] = np.sqrt(2.0 * lp.T_dim * gm / wm)  # classical limit of the bath
    abscissa = float(np.linalg.eigvals(a).real.max())
    return DriftMatrix(A=a, noise_map=noise, spectral_abscissa=abscissa)


def simulate(
    lp: LinearizedParams, dt: float, n_steps: int, seed: int, initial_state=None
) -> Trajectory:
    """Euler-Maruyama integration, by default from the zero state.

    Requires a stable drift (spectral abscissa < 0) and a step obeying
    dt * max|A_ij| <= 0.1. Identical inputs give bit-identical trajectories.
    """
    if dt <= 0.0 or n_steps < 1:
        raise InvalidStep("dt must be positive and n_steps >= 1")
    dm = drift_matrix(lp)
    if dt * np.abs(dm.A).max() > 0.1:
        raise InvalidStep(
            f"dt={dt} too large for |A|_max={np.abs(dm.A).max():.3g} "
            "(need dt*|A|_max <= 0.1)"
        )
    if dm.spectral_abscissa >= 0.0:
        raise Unstable(
            f"drift matrix is not stable (spectral abscissa "
            f"{dm.spectral_abscissa:+.4g})"
        )
    rng = np.random.Generator(np.random.Philox(seed))
    kicks = (rng.standard_normal((n_steps, 5)) * np.sqrt(dt)) @ dm.noise_map.T
    stepper = np.eye(6) + dt * dm.A
    states = np.empty((n_steps + 1, 6))
    states[0] = 0.0 if initial_state is None else np.asarray(initial_state, dtype=float)
    x = states[0].copy()
    for k in range(n_steps):
        x = stepper @ x + kicks[k]
        states[k + 1] = x
        if k % _GUARD_INTERVAL == 0 and not np.all(np.abs(x) < _OVERFLOW_GUARD):
            raise Unstable(f"trajectory exceeded the overflow guard at step {k}")
    return Trajectory(dt=dt, states=states, seed=seed, params=lp)


def estimate_psd(traj: Trajectory, segment_len: int, overlap_frac: float = 0.5):
    """Welch estimate of the two-sided displacement spectrum, on omega >= 0.

    Hann-windowed segments with the given fractional overlap; the returned
    frequency axis is angular, in units of the mechanical frequency, and the
    values are directly comparable to the analytic spectrum.
    """
    q = traj.q
    if segment_len > q.size:
        raise TooShort(f"segment_len {segment_len} exceeds trajectory length {q.size}")
    if not 0.0 <= overlap_frac < 1.0:
        raise ValueError("overlap_frac must be in [0, 1)")
    freqs, psd = signal.welch(
        q,
        fs=1.0 / traj.dt,
        window="hann",
        nperseg=segment_len,
        noverlap=int(overlap_frac * segment_len),
        return_onesided=False,
        detrend="constant",
    )
    keep = freqs >= 0.0
    order = np.argsort(freqs[keep])
    return 2.0 * np.pi * freqs[keep][order], psd[keep][order]


def averaged_psd(lp, dt, n_steps, seeds, segment_len, overlap_frac=0.5):
    """Mean Welch PSD over independent trajectories (one per seed).

    Trajectories are independent by construction, so the average does not
    depend on evaluation order; they are run one at a time to bound memory.
    """
    seeds = list(seeds)
    if not seeds:
        raise ValueError("need at least one seed")
    acc = None
    omega = None
    for s in seeds:
        traj = simulate(lp, dt, n_steps, int(s))
        omega, psd = estimate_psd(traj, segment_len, overlap_frac)
        acc = psd if acc is None else acc + psd
    return omega, acc / len(seeds)


def smooth_psd(psd, n_bins: int = 5):
    """Short normalized Hann smoothing for peak extraction.

    A Welch estimate fluctuates bin to bin, so its raw local maxima include
    noise bumps; averaging over a few bins (narrow against any resolved
    feature) makes peak positions well defined without moving them.
    """
    if n_bins < 1:
        raise ValueError("n_bins must be >= 1")
    psd = np.asarray(psd, dtype=float)
    if n_bins == 1 or psd.size <= n_bins:
        return psd
    win = np.hanning(n_bins + 2)[1:-1]
    win /= win.sum()
    return np.convolve(psd, win, mode="same")


def compare_psd_with_analytic(
    lp, omega, psd, band_max, prominence_frac=0.01, smooth_bins=5
):
    """Match peaks of a simulated PSD against the analytic spectrum.

    The simulated estimate is smoothed (see :func:`smooth_psd`) before peak
    finding; each analytic peak is then matched to the nearest simulated
    peak. Reported per match: the position offset in frequency bins and the
    ratio of max-normalized peak heights. Returns a JSON-friendly dict.
    """
    from .spectrum import SpectrumResult, displacement_spectrum, find_peaks

    omega = np.asarray(omega, dtype=float)
    psd = np.asarray(psd, dtype=float)
    band = (omega > 0.0) & (omega <= band_max)
    bin_width = float(omega[1] - omega[0])
    sim_sr = SpectrumResult(
        omega_grid=omega[band], s_values=smooth_psd(psd[band], smooth_bins), params=lp
    )
    sim_peaks = find_peaks(sim_sr, prominence_frac)
    ana_sr = displacement_spectrum(lp, omega[band])
    ana_peaks = find_peaks(ana_sr, prominence_frac)

    matched = []
    if sim_peaks and ana_peaks:
        sim_top = max(p.height for p in sim_peaks)
        ana_top = max(p.height for p in ana_peaks)
        for pa in ana_peaks:
            ps = min(sim_peaks, key=lambda p: abs(p.omega_peak - pa.omega_peak))
            matched.append(
                {
                    "omega_analytic": pa.omega_peak,
                    "omega_psd": ps.omega_peak,
                    "delta_bins": (ps.omega_peak - pa.omega_peak) / bin_width,
                    "height_ratio_normalized": (ps.height / sim_top) / (pa.height / ana_top),
                }
            )
    def peak_dicts(peaks):
        return [
            {"omega_peak": p.omega_peak, "height": p.height, "prominence": p.prominence}
            for p in peaks
        ]

    return {
        "bin_width": bin_width,
        "smooth_bins": smooth_bins,
        "prominence_frac": prominence_frac,
        "analytic_peaks": peak_dicts(ana_peaks),
        "psd_peaks": peak_dicts(sim_peaks),
        "matched": matched,
    }
