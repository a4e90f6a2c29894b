import math

import numpy as np
import pytest
from scipy import integrate

from coulomb_pt import phase_shifts as ps
from coulomb_pt.coulomb_potential import matrix_element_offset
from coulomb_pt.kinematics import Kinematics, make_kinematics
from coulomb_pt.phase_shifts import (
    ExtensionPolicy,
    build_table,
    delta1_bar,
    delta2,
    g_factor,
)
from coulomb_pt.pv_quadrature import PVConvergenceError, PVQuadConfig
from coulomb_pt.special_functions import EULER_GAMMA, coulomb_sigma_exact, digamma


def delta2_oracle(l, kin, n=1_000_000, window=0.5):
    """Dense uniform grid in s = sqrt(x) for the folded pole, scipy quad elsewhere."""

    def F(x):
        return matrix_element_offset(l, x, kin.alpha) ** 2 * g_factor(kin.p, x, kin)

    s_max = math.sqrt(window)
    h = s_max / n
    inner = 0.0
    for chunk in np.array_split((np.arange(n) + 0.5) * h, 10):
        x = chunk * chunk
        inner += np.sum((F(x) - F(-x)) / x * 2 * chunk) * h
    left, _ = integrate.quad(lambda x: F(x) / x, -1, -window, limit=200)
    right, _ = integrate.quad(lambda x: F(x) / x, window, np.inf, limit=200)
    return 0.5 * math.pi / (2 * kin.beta) ** 2 * (inner + left + right)


class TestDelta1Bar:
    def test_l0(self, kin_nr):
        assert delta1_bar(0, kin_nr) == pytest.approx(-0.05386, abs=1e-5)
        assert delta1_bar(0, kin_nr) == pytest.approx(-kin_nr.eta * EULER_GAMMA, rel=1e-14)

    def test_grows_like_log(self, kin_nr):
        l = np.array([1e3, 1e4, 1e5])
        d = delta1_bar(l, kin_nr)
        np.testing.assert_allclose(np.diff(d), kin_nr.eta * math.log(10), rtol=1e-3)

    def test_linear_in_alpha(self, kin_nr):
        for s in (0.5, 2.0):
            assert delta1_bar(7, kin_nr.with_alpha(s * kin_nr.alpha)) == pytest.approx(s * delta1_bar(7, kin_nr))
        assert delta1_bar(7, kin_nr.with_alpha(0.0)) == 0.0

    def test_close_to_exact_coulomb(self, kin_nr):
        worst = max(abs(delta1_bar(l, kin_nr) - coulomb_sigma_exact(l, kin_nr.eta)) for l in range(1, 51))
        assert worst <= 2e-3


class TestGFactor:
    @pytest.mark.parametrize("p", [0.001, 0.02, 1.0, 5.0])
    def test_unity_at_zero(self, p):
        assert g_factor(p, 0.0, make_kinematics(p)) == pytest.approx(1.0, rel=1e-15)

    def test_large_offset_limit_is_beta(self):
        k = make_kinematics(5.0)
        assert g_factor(5.0, 1e9, k) == pytest.approx(k.beta, rel=1e-6)

    @pytest.mark.parametrize("p", [1e-3, 0.02, 0.3, 5.0])
    def test_slope_by_finite_difference(self, p):
        k = make_kinematics(p)
        h = 1e-5
        slope = (g_factor(p, h, k) - g_factor(p, -h, k)) / (2 * h)
        assert slope == pytest.approx(-(1 - k.beta**2) / 2, rel=1e-6)
        if p < 0.01 * k.mass:
            assert slope == pytest.approx(-0.5, abs=1e-3)

    def test_domain(self, kin_nr):
        with pytest.raises(ValueError):
            g_factor(0.02, -1.0, kin_nr)


class TestDelta2:
    def test_oracle_l5(self, kin_nr):
        value, quad = delta2(5, kin_nr)
        assert value == pytest.approx(delta2_oracle(5, kin_nr), rel=5e-4)
        assert quad.est_error + quad.tail_bound < 1e-2 * abs(value)

    @pytest.mark.parametrize("l, expected", [(0, 1.03480026e-05), (1, 3.48478884e-06), (50, 1.03523546e-07)])
    def test_frozen_values(self, kin_nr, l, expected):
        # frozen from the uniform-grid oracle above (agrees to ~2e-6 relative)
        assert delta2(l, kin_nr)[0] == pytest.approx(expected, rel=1e-5)

    def test_quadratic_in_alpha(self, kin_nr):
        base = delta2(3, kin_nr)[0]
        for s in (0.5, 2.0):
            assert delta2(3, kin_nr.with_alpha(s * kin_nr.alpha))[0] == pytest.approx(s * s * base, rel=1e-9)

    def test_smaller_than_coulomb_phase(self, kin_nr):
        for l in range(1, 11):
            assert abs(delta2(l, kin_nr)[0]) < abs(coulomb_sigma_exact(l, kin_nr.eta))

    @pytest.mark.parametrize("l", [0, 7, 30])
    def test_stable_under_refinement(self, kin_nr, l):
        coarse = delta2(l, kin_nr)[0]
        fine = delta2(l, kin_nr, PVQuadConfig().refined())[0]
        assert fine == pytest.approx(coarse, rel=1e-2)
        assert fine == pytest.approx(coarse, rel=1e-6)

    def test_relativistic_point_finite(self, kin_rel):
        value, quad = delta2(2, kin_rel)
        assert math.isfinite(value)
        assert quad.est_error < 1e-2 * abs(value)

    def test_requires_positive_momentum(self):
        with pytest.raises(ValueError):
            delta2(0, Kinematics(0.0))


class TestBuildTable:
    def test_shape_and_policy_hold(self, kin_nr):
        t = build_table(kin_nr, 20, 5)
        assert [e.l for e in t.entries] == list(range(21))
        d2 = t.delta2_array()
        assert np.all(d2[6:] == d2[5])
        assert t.entries[6].delta2_quad is None
        assert t.entries[0].delta1_bar < 0

    def test_policy_zero(self, kin_nr):
        t = build_table(kin_nr, 10, 3, extension_policy="zero")
        assert np.all(t.delta2_array()[4:] == 0)

    def test_policy_log_extrapolate(self, kin_nr):
        t = build_table(kin_nr, 12, 6, extension_policy=ExtensionPolicy.LOG_EXTRAPOLATE)
        d2 = t.delta2_array()
        slope = (d2[6] - d2[5]) / math.log(6 / 5)
        assert d2[12] == pytest.approx(d2[6] + slope * math.log(2))

    def test_log_extrapolate_needs_two_points(self, kin_nr):
        with pytest.raises(ValueError):
            build_table(kin_nr, 5, 1, extension_policy="log-extrapolate")

    def test_zero_coupling(self):
        t = build_table(Kinematics(0.02, alpha=0.0), 8, 0)
        assert np.all(t.delta1_bar_array() == 0) and np.all(t.delta2_array() == 0)

    def test_first_order_only(self, kin_nr):
        t = build_table(kin_nr, 8, 8, order=1)
        assert np.all(t.delta2_array() == 0)

    def test_deterministic(self, kin_nr):
        a = build_table(kin_nr, 15, 15)
        b = build_table(kin_nr, 15, 15)
        assert a.delta1_bar_array().tobytes() == b.delta1_bar_array().tobytes()
        assert a.delta2_array().tobytes() == b.delta2_array().tobytes()

    def test_parallel_matches_serial(self, kin_nr):
        a = build_table(kin_nr, 6, 6)
        b = build_table(kin_nr, 6, 6, workers=2)
        assert a.delta2_array().tobytes() == b.delta2_array().tobytes()

    def test_fig1_table(self, table_nr, kin_nr):
        assert table_nr.l_max_delta2 == 50
        sigma = np.array([coulomb_sigma_exact(l, kin_nr.eta) for l in range(51)])
        d1 = table_nr.delta1_bar_array()[:51]
        assert np.max(np.abs(d1[1:] - sigma[1:])) <= 2e-3
        assert np.all(np.abs(table_nr.delta2_array()[1:51]) < np.abs(sigma[1:]))

    @pytest.mark.parametrize("args", [(5, 6), (3, -1)])
    def test_bad_ranges(self, kin_nr, args):
        with pytest.raises(ValueError):
            build_table(kin_nr, *args)

    def test_failure_propagates(self, kin_nr, monkeypatch):
        def boom(l, kin, qcfg=None):
            if l == 2:
                raise PVConvergenceError("forced")
            return 0.0, None

        monkeypatch.setattr(ps, "delta2", boom)
        with pytest.raises(PVConvergenceError):
            build_table(kin_nr, 5, 5)
