"""Stochastic quadrature dynamics and spectral estimation."""

import math

import numpy as np
import pytest

import trimode as tm


def lin(**kw):
    base = dict(Omega1=1.0, Omega2=1.0, omega_m=1.0)
    base.update(kw)
    return tm.LinearizedParams(**base)


DAMPED = dict(gamma_c1=0.2, gamma_c2=0.3, gamma_m=0.05)


class TestDriftMatrix:
    def test_entries_match_literal_table(self):
        lp = lin(Omega1=1.3, Omega2=1.5, G1=0.7, G2=0.9, lam=0.18,
                 gamma_c1=0.2, gamma_c2=0.6, gamma_m=1e-4)
        d1, d2 = -1.3, -1.5
        expected = np.array([
            [-0.1,   -d1,    0.0,   0.18,  0.0,  0.0],
            [d1,     -0.1,  -0.18,  0.0,   0.7,  0.0],
            [0.0,     0.18, -0.3,  -d2,    0.0,  0.0],
            [-0.18,   0.0,   d2,   -0.3,   0.9,  0.0],
            [0.0,     0.0,   0.0,   0.0,   0.0,  1.0],
            [0.7,     0.0,   0.9,   0.0,  -1.0, -1e-4],
        ])
        dm = tm.drift_matrix(lp)
        assert np.allclose(dm.A, expected, atol=1e-15)

    def test_mechanical_row_structure(self):
        dm = tm.drift_matrix(lin())
        assert np.array_equal(dm.A[4], [0, 0, 0, 0, 0, 1.0])

    def test_noise_map_structure(self):
        lp = lin(gamma_c1=0.16, gamma_c2=0.36, gamma_m=0.01, T_dim=50.0)
        nm = tm.drift_matrix(lp).noise_map
        assert nm[0, 0] == pytest.approx(0.4)
        assert nm[1, 1] == pytest.approx(0.4)
        assert nm[2, 2] == pytest.approx(0.6)
        assert nm[3, 3] == pytest.approx(0.6)
        assert nm[5, 4] == pytest.approx(math.sqrt(2 * 50.0 * 0.01))
        assert np.count_nonzero(nm) == 5

    def test_decoupled_optical_block_eigenvalues(self):
        lp = lin(Omega1=1.3, Omega2=1.5, **DAMPED)
        evs = np.linalg.eigvals(tm.drift_matrix(lp).A)
        for target in (-0.1 + 1.3j, -0.1 - 1.3j, -0.15 + 1.5j, -0.15 - 1.5j):
            assert min(abs(evs - target)) < 1e-12

    def test_mechanical_block_characteristic_roots(self):
        # independent oracle: roots of s^2 + gamma_m s + omega_m^2
        gm = 0.05
        roots = np.roots([1.0, gm, 1.0])
        lp = lin(gamma_m=gm)
        evs = np.linalg.eigvals(tm.drift_matrix(lp).A)
        for r in roots:
            assert min(abs(evs - r)) < 1e-12

    def test_reference_unstable_parameter_set(self):
        # the published three-peak parameter set sits outside the stability
        # region of these equations of motion
        dm = tm.drift_matrix(tm.PRESETS["fig4"].params)
        assert dm.spectral_abscissa == pytest.approx(2.3739818404159942, rel=1e-9)

    def test_stable_preset(self):
        dm = tm.drift_matrix(tm.PRESETS["nms_stable"].params)
        assert dm.spectral_abscissa < 0


class TestSimulate:
    def test_zero_noise_zero_state_stays_zero(self):
        lp = lin(G1=0.1, lam=0.05, gamma_m=0.05)  # no optical damping, T = 0
        traj = tm.simulate(lp, 0.01, 500, seed=3)
        assert np.all(traj.states == 0.0)

    def test_zero_noise_decay_from_initial_state(self):
        # gamma_c = T = 0 silences every noise channel; damping enters only
        # through the mechanical mode and spreads by hybridization
        lp = lin(G1=0.4, lam=0.1, gamma_m=0.8)
        x0 = np.array([1.0, -0.5, 0.3, 0.2, 0.8, -0.1])
        traj = tm.simulate(lp, 0.005, 100_000, seed=3, initial_state=x0)
        norms = np.linalg.norm(traj.states, axis=1)
        assert norms[-1] < 1e-6 * norms[0]
        assert norms[: len(norms) // 2].max() >= norms[len(norms) // 2 :].max()

    def test_determinism_bitwise(self):
        lp = tm.PRESETS["nms_stable"].params
        a = tm.simulate(lp, 0.01, 2000, seed=42)
        b = tm.simulate(lp, 0.01, 2000, seed=42)
        assert np.array_equal(a.states, b.states)
        c = tm.simulate(lp, 0.01, 2000, seed=43)
        assert not np.array_equal(a.states, c.states)

    def test_step_guard(self):
        with pytest.raises(tm.InvalidStep):
            tm.simulate(tm.PRESETS["nms_stable"].params, 0.2, 100, seed=1)

    def test_unstable_refused(self):
        with pytest.raises(tm.Unstable):
            tm.simulate(tm.PRESETS["fig4"].params, 0.001, 100, seed=1)

    def test_sample_variance_settles(self):
        # windowed variances over doubling windows converge for stable drift
        lp = tm.PRESETS["nms_stable"].params
        traj = tm.simulate(lp, 2 * np.pi / 2000, 1 << 17, seed=11)
        q = traj.q
        n = q.size
        v1 = q[n // 4: n // 2].var()
        v2 = q[n // 2:].var()
        assert v2 == pytest.approx(v1, rel=0.3)


class TestEstimatePsd:
    def test_pure_tone_lands_in_one_bin(self):
        lp = lin()
        dt = 0.01
        n = 1 << 14
        t = dt * np.arange(n + 1)
        w0 = 1.7
        states = np.zeros((n + 1, 6))
        states[:, 4] = np.cos(w0 * t)
        traj = tm.Trajectory(dt=dt, states=states, seed=0, params=lp)
        omega, psd = tm.estimate_psd(traj, segment_len=1 << 12, overlap_frac=0.5)
        assert omega[np.argmax(psd)] == pytest.approx(w0, abs=omega[1] - omega[0])

    def test_white_noise_is_flat(self):
        lp = lin()
        dt = 0.05
        n = 1 << 17
        rng = np.random.default_rng(99)
        sigma2 = 4.0  # two-sided spectral density of the target white noise
        states = np.zeros((n + 1, 6))
        states[:, 4] = rng.standard_normal(n + 1) * math.sqrt(sigma2 / dt)
        traj = tm.Trajectory(dt=dt, states=states, seed=0, params=lp)
        segment = 1 << 10
        omega, psd = tm.estimate_psd(traj, segment_len=segment, overlap_frac=0.5)
        n_segments = (n + 1 - segment) // (segment // 2) + 1
        sigma_bin = sigma2 * math.sqrt(1.2 / n_segments)
        inner = (omega > 0.2) & (omega < 0.9 * omega.max())
        assert np.abs(psd[inner] - sigma2).max() < 5 * sigma_bin
        assert psd[inner].mean() == pytest.approx(sigma2, rel=0.02)

    def test_too_short(self):
        traj = tm.simulate(tm.PRESETS["nms_stable"].params, 0.01, 100, seed=1)
        with pytest.raises(tm.TooShort):
            tm.estimate_psd(traj, segment_len=1 << 12)

    def test_overlap_validation(self):
        traj = tm.simulate(tm.PRESETS["nms_stable"].params, 0.01, 2000, seed=1)
        with pytest.raises(ValueError):
            tm.estimate_psd(traj, segment_len=512, overlap_frac=1.0)


class TestCrossValidation:
    def test_simulated_psd_matches_analytic_spectrum(self):
        # the central cross-check: Welch spectrum of the time-domain run
        # against the analytic curve, peak positions and normalized heights
        lp = tm.PRESETS["nms_stable"].params
        dt = 2 * np.pi / 2000.0
        seeds = [500 + k for k in range(8)]
        omega, psd = tm.averaged_psd(lp, dt, 1 << 20, seeds, 1 << 17, 0.5)
        report = tm.compare_psd_with_analytic(lp, omega, psd, 2.5, smooth_bins=9)
        assert len(report["analytic_peaks"]) == 3
        assert len(report["psd_peaks"]) == 3
        assert len(report["matched"]) == 3
        for m in report["matched"]:
            assert abs(m["delta_bins"]) <= 2.0
            assert abs(m["height_ratio_normalized"] - 1.0) <= 0.2
        # absolute normalization agrees as well (conventions line up end to end)
        top_sim = max(p["height"] for p in report["psd_peaks"])
        top_ana = max(p["height"] for p in report["analytic_peaks"])
        assert top_sim / top_ana == pytest.approx(1.0, abs=0.25)

    def test_averaging_order_invariance(self):
        lp = tm.PRESETS["nms_stable"].params
        dt = 0.01
        a = tm.averaged_psd(lp, dt, 4096, [1, 2, 3], 1024)
        b = tm.averaged_psd(lp, dt, 4096, [3, 1, 2], 1024)
        assert a[1] == pytest.approx(b[1], rel=1e-12)

    def test_smoothing_preserves_total_power(self):
        rng = np.random.default_rng(71)
        y = rng.uniform(0.5, 2.0, 512)
        ys = tm.smooth_psd(y, 5)
        assert ys.sum() == pytest.approx(y.sum(), rel=1e-2)
        assert np.array_equal(tm.smooth_psd(y, 1), y)
