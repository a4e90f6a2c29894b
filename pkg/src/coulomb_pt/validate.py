"""Self-check suite behind ``coulomb-pt validate``.

Every check computes an error measure and compares it with a tolerance.
Passing ``tolerance=`` replaces all per-check tolerances, which is how the
failure path is exercised.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coulomb_potential import c_l, matrix_element, matrix_element_offset
from .kinematics import make_kinematics
from .phase_shifts import delta1_bar
from .pv_quadrature import principal_value, sinc_log_identity
from .special_functions import (
    EULER_GAMMA,
    coulomb_sigma_exact,
    digamma,
    hyp2f1_half,
    legendre_p,
)


@dataclass
class CheckResult:
    name: str
    error: float
    tolerance: float
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.error <= self.tolerance)


def _digamma_checks():
    yield "digamma(1) = -gamma_E", abs(digamma(1.0) + EULER_GAMMA), 1e-12, {}
    xs = np.geomspace(0.5, 100.0, 60)
    resid = np.abs(digamma(xs + 1.0) - digamma(xs) - 1.0 / xs)
    yield "digamma recurrence", float(resid.max()), 1e-12, {}


def _brute_hyp2f1(l, z, terms=20000):
    total, term = 1.0, 1.0
    for k in range(terms):
        term *= (k + 0.5) * (l + 1 + k) / ((l + 1.5 + k) * (k + 1)) * z
        total += term
        if term < 1e-18 * total:
            break
    return total


def _hyp2f1_checks():
    zs = np.linspace(0.01, 0.99, 50)
    rel = [abs(hyp2f1_half(0, z).value / (math.atanh(math.sqrt(z)) / math.sqrt(z)) - 1) for z in zs]
    yield "2F1 l=0 closed form", max(rel), 1e-10, {}
    rel = [
        abs(hyp2f1_half(l, z).value / _brute_hyp2f1(l, z) - 1)
        for l in (1, 3, 10, 50)
        for z in (0.3, 0.6, 0.9, 0.99)
    ]
    yield "2F1 vs term-by-term series", max(rel), 1e-10, {}


def _legendre_checks():
    # explicit coefficient sum for P_50 using exact integers
    l, x = 50, 0.1
    explicit = sum(
        (-1) ** k * math.comb(l, k) * math.comb(2 * l - 2 * k, l) * x ** (l - 2 * k) for k in range(l // 2 + 1)
    ) / 2**l
    yield "P_50(0.1) vs explicit sum", abs(legendre_p(l, x) - explicit), 1e-10, {"value": explicit}


def _sigma_checks():
    worst = 0.0
    for l in range(0, 51, 5):
        for eta in (0.01, 0.05, 0.1):
            worst = max(worst, abs(coulomb_sigma_exact(l, eta) - eta * digamma(l + 1.0)) / (2 * eta**3))
    yield "arg Gamma small-eta Taylor (ratio to 2 eta^3)", worst, 1.0, {}


def _potential_checks():
    alpha = 7.2973525693e-3
    rng = np.random.default_rng(12345)
    worst = 0.0
    for _ in range(40):
        k1, k2 = rng.uniform(0.01, 10.0, 2)
        l = int(rng.integers(0, 20))
        a = matrix_element(l, k1, k2, alpha).value
        b = matrix_element(l, k2, k1, alpha).value
        worst = max(worst, abs(a - b) / abs(a))
    yield "V_l symmetry", worst, 1e-12, {}
    slopes = []
    for x in (1e-2, 1e-3, 1e-4):
        slopes.append(abs(matrix_element_offset(3, x, alpha) - alpha / math.pi * (c_l(3) + -math.log(x))) / x)
    yield "V_l singular limit remainder O(x)", abs(slopes[-1] - slopes[-2]) / slopes[-1], 0.1, {"slopes": slopes}


def _pv_checks():
    r = principal_value(lambda x: (0.3 - np.log(np.abs(x))) ** 2 / x, -0.7, 0.7)
    yield "PV odd integrand = 0", abs(r.value), 1e-10, {}
    r = principal_value(lambda x: 1.0 / x, -1.0, 2.0)
    yield "PV 1/x on [-1,2] = ln 2", abs(r.value - math.log(2.0)), 1e-10, {}
    shi1 = 1.0572508753757285146  # Shi(1)
    r = principal_value(lambda x: np.exp(x) / x, -1.0, 1.0)
    yield "PV e^x/x on [-1,1] = 2 Shi(1)", abs(r.value - 2 * shi1), 1e-10, {}


def _sinc_checks():
    alpha = 7.2973525693e-3
    for l in (0, 1, 5):
        for pr in (10.0, 100.0, 1000.0):
            chk = sinc_log_identity(l, pr, alpha)
            yield (
                f"sinc-log identity l={l} pr={pr:g} (in units of alpha)",
                abs(chk.numeric - chk.analytic) / alpha,
                1e-6,
                {"numeric": chk.numeric, "analytic": chk.analytic},
            )


def _phase_checks():
    kin = make_kinematics(0.02)
    worst = max(abs(delta1_bar(l, kin) - coulomb_sigma_exact(l, kin.eta)) for l in range(1, 51))
    yield "first order vs arg Gamma, p=0.02 MeV, l=1..50 (rad)", worst, 2e-3, {"eta": kin.eta}


SUITES = (
    _digamma_checks,
    _hyp2f1_checks,
    _legendre_checks,
    _sigma_checks,
    _potential_checks,
    _pv_checks,
    _sinc_checks,
    _phase_checks,
)


def run_checks(tolerance: float | None = None) -> list[CheckResult]:
    results = []
    for suite in SUITES:
        for name, error, tol, details in suite():
            results.append(CheckResult(name, float(error), tol if tolerance is None else tolerance, details))
    return results
