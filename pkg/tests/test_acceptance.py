"""Acceptance criteria, one test and one PASS/FAIL report line each.

Run with ``pytest tests/test_acceptance.py -v``; the report lines are
written straight to the terminal, bypassing output capture.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from coulomb_pt.coulomb_potential import c_l, matrix_element
from coulomb_pt.cross_section import (
    XSecConfig,
    delta_profile,
    differential_cross_section,
    moller,
    rutherford,
)
from coulomb_pt.kinematics import make_kinematics
from coulomb_pt.phase_shifts import build_table, delta1_bar, delta2
from coulomb_pt.pv_quadrature import PVQuadConfig, principal_value, sinc_log_identity
from coulomb_pt.special_functions import coulomb_sigma_exact

DEG = math.pi / 180
ALPHA = 7.2973525693e-3
SHI_1 = 1.0572508753757285146


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail, elapsed, budget):
        ok = bool(ok and elapsed < budget)
        with capsys.disabled():
            print(f"\nACCEPTANCE {number} {'PASS' if ok else 'FAIL'}  {title}: {detail}; {elapsed:.2f} s (< {budget:g} s)")
        return ok

    return emit


def test_1_phase_shift_agreement(report):
    t0 = time.perf_counter()
    kin = make_kinematics(0.02)
    err = max(abs(delta1_bar(l, kin) - coulomb_sigma_exact(l, kin.eta)) for l in range(1, 51))
    d0 = delta1_bar(0, kin)
    elapsed = time.perf_counter() - t0
    ok = err <= 2e-3 and d0 < 0
    assert report(1, "first-order phase shifts vs arg Gamma", ok, f"max err {err:.3e} rad (tol 2e-3), d1bar_0 = {d0:.4e}", elapsed, 1)


def test_2_second_order_finite_and_small(report):
    t0 = time.perf_counter()
    kin = make_kinematics(0.02)
    table = build_table(kin, 50, 50)
    elapsed = time.perf_counter() - t0
    d2 = table.delta2_array()
    rel_err = table.delta2_errors() / np.abs(d2)
    sigma = np.array([coulomb_sigma_exact(l, kin.eta) for l in range(51)])
    finite = np.all(np.isfinite(d2))
    ok = finite and np.all(rel_err < 1e-2) and np.all(np.abs(d2[1:]) < np.abs(sigma[1:]))
    detail = f"max quad err/value {rel_err.max():.2e} (tol 1e-2), max |d2|/|arg Gamma| {np.max(np.abs(d2[1:] / sigma[1:])):.2e} (< 1)"
    assert report(2, "second-order shifts finite and small", ok, detail, elapsed, 120)


def test_3_pv_oracles(report):
    t0 = time.perf_counter()
    errors = {
        "odd": abs(principal_value(lambda x: (0.3 - np.log(np.abs(x))) ** 2 / x, -0.7, 0.7).value),
        "ln2": abs(principal_value(lambda x: 1.0 / x, -1.0, 2.0).value - math.log(2.0)),
        "exp": abs(principal_value(lambda x: np.exp(x) / x, -1.0, 1.0).value / (2 * SHI_1) - 1),
    }
    sinc = 0.0
    for l in (0, 1, 5):
        for pr in (10.0, 100.0, 1000.0):
            chk = sinc_log_identity(l, pr, ALPHA)
            sinc = max(sinc, abs(chk.numeric - chk.analytic) / ALPHA)
    elapsed = time.perf_counter() - t0
    ok = max(errors.values()) <= 1e-10 and sinc <= 1e-6
    detail = ", ".join(f"{k} {v:.1e}" for k, v in errors.items()) + f" (tol 1e-10); sinc-log {sinc:.2e} alpha (tol 1e-6)"
    assert report(3, "principal-value oracle suite", ok, detail, elapsed, 30)


def test_4_rutherford_reproduction(report):
    t0 = time.perf_counter()
    kin = make_kinematics(0.02)
    cfg = XSecConfig()
    table = build_table(kin, cfg.l_max, 50)
    theta = np.arange(30, 151, 1.0) * DEG
    model = differential_cross_section(theta, table, cfg)
    forward = differential_cross_section(0.0, table, cfg)
    elapsed = time.perf_counter() - t0
    dev = np.abs(model / rutherford(theta, kin) - 1)
    ok = np.all(dev <= 0.05) and math.isfinite(forward)
    detail = f"max rel dev {dev.max():.3f} (tol 0.05), model/R in [{(model / rutherford(theta, kin)).min():.4f}, {(model / rutherford(theta, kin)).max():.4f}], sigma(0) = {forward:.3e} MeV^-2"
    assert report(4, "Rutherford reproduction at p = 0.02 MeV", ok, detail, elapsed, 300)


def test_5_moller_proximity_and_momentum_sweep(report):
    t0 = time.perf_counter()
    kin = make_kinematics(5.0)
    sym = XSecConfig(symmetrize=True)
    table = build_table(kin, sym.l_max, 50)
    theta = np.arange(30, 151, 1.0) * DEG
    mol_ratio = differential_cross_section(theta, table, sym) / moller(theta, kin)
    band_ok = np.all((mol_ratio >= 0.1) & (mol_ratio <= 10))

    cfg = XSecConfig()
    momenta = np.geomspace(0.03, 19.0, 40)
    ratio = np.empty(momenta.size)
    for i, p in enumerate(momenta):
        k = make_kinematics(float(p))
        t = build_table(k, cfg.l_max, 0, order=1)
        ratio[i] = differential_cross_section(math.pi / 2, t, cfg) / rutherford(math.pi / 2, k)
    elapsed = time.perf_counter() - t0
    low = momenta <= 0.1
    low_ok = np.all(np.abs(ratio[low] - 1) <= 0.05)
    high_ok = np.all(ratio[momenta >= 5.0] > 1)
    ok = band_ok and low_ok and high_ok
    detail = (
        f"Moller ratio in [{mol_ratio.min():.3f}, {mol_ratio.max():.3f}] ({'ok' if band_ok else 'out of [0.1, 10]'}); "
        f"low-p model/R in [{ratio[low].min():.4f}, {ratio[low].max():.4f}] ({'ok' if low_ok else 'not 1 +- 0.05'}); "
        f"p >= 5 MeV model/R min {ratio[momenta >= 5.0].min():.3f} ({'ok' if high_ok else 'not > 1'})"
    )
    assert report(5, "Moller proximity and momentum sweep", ok, detail, elapsed, 600)


def test_6_delta_profile(report):
    t0 = time.perf_counter()
    kin = make_kinematics(0.02)
    cfg = XSecConfig()
    table = build_table(kin, cfg.l_max, 50)
    grid = np.round(np.arange(-100, 101) * 0.05, 12)
    prof = delta_profile(math.pi / 2, table, cfg, grid)
    elapsed = time.perf_counter() - t0
    ok = abs(prof.delta_star) <= 0.1
    assert report(6, "delta profile peak", ok, f"delta* = {prof.delta_star:+.2f} (tol |delta*| <= 0.1)", elapsed, 300)


def _property_results():
    out = {}
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(200):
        k1, k2 = rng.uniform(1e-3, 50.0, 2)
        l = int(rng.integers(0, 60))
        a, b = matrix_element(l, k1, k2, ALPHA).value, matrix_element(l, k2, k1, ALPHA).value
        worst = max(worst, abs(a - b) / abs(a))
    out["V_l symmetry"] = (worst <= 1e-12, f"{worst:.1e}")

    rems = []
    for x in (1e-2, 1e-3, 1e-4):
        v = matrix_element(2, 1.0 + x, 1.0, ALPHA).value
        rems.append(abs(v - ALPHA / math.pi * (c_l(2) - math.log(x))) / x)
    linear = all(np.isfinite(rems)) and abs(rems[-1] / rems[-2] - 1) < 0.1
    out["singular limit O(x)"] = (linear, "slopes " + "/".join(f"{r:.3e}" for r in rems))

    kin, kin2 = make_kinematics(0.02), make_kinematics(0.02).with_alpha(2 * ALPHA)
    r1 = max(abs(delta1_bar(l, kin2) / delta1_bar(l, kin) - 2) for l in range(0, 51))
    r2 = max(abs(delta2(l, kin2)[0] / delta2(l, kin)[0] - 4) for l in (0, 1, 5, 20, 50))
    out["alpha scaling"] = (r1 <= 1e-12 and r2 <= 1e-6, f"order-1 {r1:.1e}, order-2 {r2:.1e}")

    base = PVQuadConfig()
    fine = replace(base, inner_cutoff=base.inner_cutoff / 2, grading_ratio=base.grading_ratio / 2)
    ratio = 0.0
    for l in (0, 5, 50):
        a, qa = delta2(l, kin, base)
        b, _ = delta2(l, kin, fine)
        ratio = max(ratio, abs(a - b) / (2 * (qa.est_error + qa.tail_bound)))
    out["refinement stability"] = (ratio < 1, f"change/(2 err) {ratio:.2e}")

    rel = make_kinematics(5.0)
    sym = XSecConfig(symmetrize=True)
    table = build_table(rel, sym.l_max, 50)
    theta = np.linspace(1, 89, 45) * DEG
    a = differential_cross_section(theta, table, sym)
    b = differential_cross_section(math.pi - theta, table, sym)
    par = float(np.max(np.abs(a - b) / a))
    out["symmetrized parity"] = (par < 1e-12, f"{par:.1e}")

    cfg = XSecConfig()
    longer = XSecConfig(l_max=int(1.5 * cfg.l_max))
    big = build_table(kin, longer.l_max, 50)
    angles = np.array([5, 30, 60, 90, 120, 150, 175]) * DEG
    a = differential_cross_section(angles, big, cfg)
    b = differential_cross_section(angles, big, longer)
    tail = float(np.max(np.abs(a - b) / a))
    out["l_max tail"] = (tail < 1e-10, f"{tail:.1e}")
    return out


def test_7_property_suite(report):
    t0 = time.perf_counter()
    results = _property_results()
    elapsed = time.perf_counter() - t0
    ok = all(passed for passed, _ in results.values())
    detail = "; ".join(f"{name} {'ok' if passed else 'FAILED'} ({d})" for name, (passed, d) in results.items())
    assert report(7, "property suite", ok, detail, elapsed, 600)
