"""Closed-form quadrature variances and sweep behavior."""

import math

import numpy as np
import pytest

import trimode as tm


def lin(**kw):
    base = dict(Omega1=1.0, Omega2=1.0, omega_m=1.0)
    base.update(kw)
    return tm.LinearizedParams(**base)


def transcribed_variances(O1, O2, wm, G1, G2, lam):
    """Independent transcription of the six closed forms, for cross-checking."""
    g1 = 0.5 * math.atan2(2 * lam * math.sqrt(O1 * O2), O2**2 - O1**2) if lam else 0.0
    g2 = 0.5 * math.atan2(4 * G1 * math.sqrt(O1 * wm), O1**2 - wm**2) if G1 else 0.0
    g3 = 0.5 * math.atan2(4 * G2 * math.sqrt(O2 * wm), O2**2 - wm**2) if G2 else 0.0
    r_xz = math.sqrt((O1**2 - wm**2) ** 2 + 16 * G1**2 * O1 * wm)
    r_yz = math.sqrt((O2**2 - wm**2) ** 2 + 16 * G2**2 * O2 * wm)
    r_xy = math.sqrt((O2**2 - O1**2) ** 2 + 4 * lam**2 * O1 * O2)
    ex = math.sqrt(0.5 * (2 * O1**2 + O2**2 + wm**2 + r_xz - r_xy))
    ey = math.sqrt(0.5 * (O1**2 + 2 * O2**2 + wm**2 + r_xy + r_yz))
    ez = math.sqrt(0.5 * (O1**2 + O2**2 + 2 * wm**2 - r_xz - r_yz))
    sp1 = math.sqrt(1 - lam / math.sqrt(O1 * O2))
    sp2 = math.sqrt(1 + lam / math.sqrt(O1 * O2))
    c12 = (math.cos(g1) + math.cos(g2)) ** 2
    c13 = (math.cos(g1) + math.cos(g3)) ** 2
    c23 = (math.cos(g2) + math.cos(g3)) ** 2
    s1, s2, s3 = math.sin(g1) ** 2, math.sin(g2) ** 2, math.sin(g3) ** 2
    var_x = (1 + c12 / ex * (sp1 * O1 - ex) + s1 / ey * (sp2 * O1 - ey)
             + s2 / ez * (O1 - ez)) / (2 * O1)
    var_y = (1 + s1 / ex * (sp1 * O2 - ex) + c13 / ey * (sp2 * O2 - ey)
             + s3 / ez * (O2 - ez)) / (2 * O2)
    var_z = (1 + s2 / ex * (sp1 * wm - ex) + s3 / ey * (sp2 * wm - ey)
             + c23 / ez * (wm - ez)) / (2 * wm)
    var_px = O1 / 2 * (1 + c12 / (sp1 * O1) * (ex - sp1 * O1)
                       + s1 / (sp2 * O1) * (ey - sp2 * O1) + s2 / O1 * (ez - O1))
    var_py = O2 / 2 * (1 + s1 / (sp1 * O2) * (ex - sp1 * O2)
                       + c13 / (sp2 * O2) * (ey - sp2 * O2) + s3 / O2 * (ez - O2))
    var_pz = wm / 2 * (1 + s2 / (sp1 * wm) * (ex - sp1 * wm)
                       + s3 / (sp2 * wm) * (ey - sp2 * wm) + c23 / wm * (ez - wm))
    return var_x, var_y, var_z, var_px, var_py, var_pz


GOLDEN_POINT = dict(G1=0.01, G2=0.01, lam=0.5)
GOLDEN_VALUES = {
    "var_x": -0.05501004929955213,
    "var_y": 0.09347301205098918,
    "var_z": 0.050549735407430296,
    "var_px": 1.4175966123366621,
    "var_py": 1.0820380340356393,
    "var_pz": 1.1599269292744603,
}


class TestVariances:
    def test_golden_point_frozen(self):
        v = tm.variances(lin(**GOLDEN_POINT))
        for name, value in GOLDEN_VALUES.items():
            assert getattr(v, name) == pytest.approx(value, rel=1e-12), name

    def test_golden_point_independent_transcription(self):
        got = tm.variances(lin(**GOLDEN_POINT))
        ref = transcribed_variances(1.0, 1.0, 1.0, 0.01, 0.01, 0.5)
        names = ("var_x", "var_y", "var_z", "var_px", "var_py", "var_pz")
        for name, expected in zip(names, ref):
            assert getattr(got, name) == pytest.approx(expected, rel=1e-12), name

    def test_symmetric_point_qualitative_coincidence(self):
        # the closed forms are built from an ordered sequence of rotations
        # that singles out one optical branch, so the two position variances
        # agree only qualitatively at a symmetric point (both squeezed, both
        # momentum variances unsqueezed); the strict x<->y symmetry holds for
        # the exact ground-state covariance (see the quadratic-form oracle
        # tests) but not for these expressions
        v = tm.variances(lin(G1=0.05, G2=0.05, lam=0.3))
        assert v.var_x < 0.5 and v.var_y < 0.5
        assert v.var_px > 0.5 and v.var_py > 0.5
        assert v.var_x != v.var_y  # documented asymmetry of the closed forms

    def test_squeezed_flags_match_values(self):
        v = tm.variances(lin(**GOLDEN_POINT))
        for q in ("x", "y", "z", "px", "py", "pz"):
            assert getattr(v, f"squeezed_{q}") == (getattr(v, f"var_{q}") < 0.5)

    def test_outside_normal_phase_raises(self):
        with pytest.raises(tm.OutsideNormalPhase):
            tm.variances(lin(lam=1.01))
        with pytest.raises(tm.OutsideNormalPhase):
            tm.variances(lin(G1=1.2))  # phonon branch imaginary


class TestCriticalBehavior:
    def test_momentum_variances_blow_up_toward_critical(self):
        lp = lin(G1=0.01, G2=0.01)
        lc = tm.critical_lambda(lp)
        near = tm.variances(lp.with_coupling("lambda", 0.999 * lc))
        far = tm.variances(lp.with_coupling("lambda", 0.5 * lc))
        assert near.var_px > 10 * far.var_px
        assert near.var_py > 5 * far.var_py
        assert near.var_x < 0.5 and near.var_y < 0.5

    def test_momentum_variance_monotone_on_approach(self):
        lp = lin(G1=0.01, G2=0.01)
        vals = [
            tm.variances(lp.with_coupling("lambda", x)).var_px
            for x in np.linspace(0.5, 0.999, 100)
        ]
        assert all(b >= a for a, b in zip(vals, vals[1:]))

    def test_position_variances_blow_up_toward_phonon_threshold(self):
        lp = lin(G2=0.01, lam=0.01)
        gc = tm.g1_critical(lp)
        near = tm.variances(lp.with_coupling("G1", 0.999 * gc))
        far = tm.variances(lp.with_coupling("G1", 0.5 * gc))
        assert near.var_x > 10 * far.var_x
        assert near.var_z > 10 * far.var_z
        # momentum quadrature of the mechanical mode dips below the coherent level
        assert near.var_pz < 0.5


class TestSweep:
    def test_empty_grid(self):
        assert tm.variance_sweep(lin(), "lambda", []) == []

    def test_sweep_crossing_critical_completes_with_flags(self):
        lp = lin(G1=0.01, G2=0.01)
        points = tm.variance_sweep(lp, "lambda", np.linspace(0.0, 1.05, 22))
        assert len(points) == 22
        flags = [p.flag for p in points]
        assert "outside_normal_phase" in flags
        assert flags[0] == "ok"
        for p in points:
            assert (p.variances is None) == (p.flag == "outside_normal_phase")

    def test_sweep_values_match_pointwise_calls(self):
        lp = lin(G1=0.01, G2=0.01)
        grid = np.linspace(0.1, 0.9, 9)
        points = tm.variance_sweep(lp, "lambda", grid)
        for value, pt in zip(grid, points):
            direct = tm.variances(lp.with_coupling("lambda", value))
            assert pt.variances.var_px == direct.var_px

    def test_mirrored_sweeps_share_threshold_and_divergence(self):
        # the two optomechanical sweep axes see the same phonon-branch
        # threshold (its formula is symmetric under the mode relabeling) and
        # both produce diverging position variances on approach
        lp_b = lin(G2=0.01, lam=0.01)
        lp_c = lin(G1=0.01, lam=0.01)
        gc = tm.g1_critical(lp_b)
        grid = [0.1, 0.9, 0.999 * gc]
        pb = tm.variance_sweep(lp_b, "G1", grid)
        pc = tm.variance_sweep(lp_c, "G2", grid)
        assert pb[2].variances.var_x > 10 * pb[0].variances.var_x
        assert pc[2].variances.var_y > 10 * pc[0].variances.var_y

    def test_unknown_axis_rejected(self):
        with pytest.raises(ValueError):
            tm.variance_sweep(lin(), "G3", [0.1])
