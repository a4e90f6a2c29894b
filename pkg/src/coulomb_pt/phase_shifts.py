"""First- and second-order phase shifts of the Coulomb problem.

The first-order shift with the logarithmic phase stripped is
eta * psi(l + 1). The second-order shift is the principal-value integral

    delta2_l = (1/2) pi/(2 beta)^2 PV int_{-1}^{inf} dx V_l(p(1+x), p)^2 g(p, x) / x

with g(p, x) = 2 beta (E(p(1+x)) + E(p)) / (4 p (2 + x)).
"""

from __future__ import annotations

import enum
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .coulomb_potential import matrix_element_offset
from .kinematics import Kinematics
from .pv_quadrature import PVQuadConfig, PVResult, principal_value
from .special_functions import digamma


class ExtensionPolicy(str, enum.Enum):
    """How delta2 is continued above the last l where it was computed."""

    HOLD = "hold"
    ZERO = "zero"
    LOG_EXTRAPOLATE = "log-extrapolate"


@dataclass(frozen=True)
class PhaseShiftEntry:
    l: int
    delta1_bar: float
    delta2: float
    delta2_quad: PVResult | None = None


@dataclass(frozen=True)
class PhaseShiftTable:
    kin: Kinematics
    entries: tuple
    l_max_delta2: int
    extension_policy: ExtensionPolicy = ExtensionPolicy.HOLD

    def __post_init__(self):
        if [e.l for e in self.entries] != list(range(len(self.entries))):
            raise ValueError("entries must be indexed contiguously from l = 0")

    @property
    def l_max(self) -> int:
        return len(self.entries) - 1

    def delta1_bar_array(self) -> np.ndarray:
        return np.array([e.delta1_bar for e in self.entries])

    def delta2_array(self) -> np.ndarray:
        return np.array([e.delta2 for e in self.entries])

    def delta2_errors(self) -> np.ndarray:
        return np.array(
            [e.delta2_quad.est_error + e.delta2_quad.tail_bound if e.delta2_quad else 0.0 for e in self.entries]
        )


def delta1_bar(l, kin: Kinematics):
    """First-order phase shift without its logarithmic part, eta psi(l + 1)."""
    if kin.alpha == 0:
        return 0.0 if np.ndim(l) == 0 else np.zeros(np.shape(l))
    return kin.eta * digamma(np.asarray(l, dtype=float) + 1.0)


def g_factor(p: float, x, kin: Kinematics):
    """Kinematic factor g(p, x); equals 1 at x = 0."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs <= -1.0):
        raise ValueError("g_factor requires x > -1")
    if p <= 0:
        raise ValueError("g_factor requires p > 0")
    m = kin.mass
    beta = p / math.hypot(p, m)
    e_x = 2.0 * np.hypot(p * (1.0 + xs), m)
    e_0 = 2.0 * math.hypot(p, m)
    out = 2.0 * beta * (e_x + e_0) / (4.0 * p * (2.0 + xs))
    return float(out) if np.ndim(out) == 0 else out


def delta2(l: int, kin: Kinematics, qcfg: PVQuadConfig | None = None) -> tuple[float, PVResult]:
    """Second-order phase shift and the quadrature diagnostics behind it."""
    if kin.p <= 0:
        raise ValueError("delta2 requires p > 0")
    beta = kin.beta

    def integrand(x):
        v = matrix_element_offset(l, x, kin.alpha)
        return v * v * g_factor(kin.p, x, kin) / x

    res = principal_value(integrand, -1.0, math.inf, qcfg)
    scale = 0.5 * math.pi / (2.0 * beta) ** 2
    scaled = PVResult(scale * res.value, scale * res.est_error, res.evaluations, scale * res.tail_bound)
    return scaled.value, scaled


def _delta2_job(args):
    l, kin, qcfg = args
    return delta2(l, kin, qcfg)


def _extend(policy, computed, l_values):
    last_l = len(computed) - 1
    if policy is ExtensionPolicy.HOLD:
        return np.full(len(l_values), computed[-1])
    if policy is ExtensionPolicy.ZERO:
        return np.zeros(len(l_values))
    if last_l < 2:
        raise ValueError("log-extrapolate needs delta2 up to at least l = 2")
    slope = (computed[-1] - computed[-2]) / math.log(last_l / (last_l - 1))
    return computed[-1] + slope * np.log(np.asarray(l_values, dtype=float) / last_l)


def build_table(
    kin: Kinematics,
    l_max: int,
    l_max_delta2: int,
    qcfg: PVQuadConfig | None = None,
    extension_policy: ExtensionPolicy | str = ExtensionPolicy.HOLD,
    order: int = 2,
    workers: int = 1,
) -> PhaseShiftTable:
    """Phase shifts for l = 0..l_max.

    delta2 is integrated for l <= l_max_delta2 and continued above that by
    ``extension_policy``. With ``order=1`` every delta2 is zero and no
    quadrature runs. Any quadrature failure propagates; no partial table is
    returned.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if not (l_max >= l_max_delta2 >= 0):
        raise ValueError("need l_max >= l_max_delta2 >= 0")
    policy = ExtensionPolicy(extension_policy)
    qcfg = qcfg or PVQuadConfig()
    d1 = np.atleast_1d(delta1_bar(np.arange(l_max + 1), kin))
    d2 = np.zeros(l_max + 1)
    quads = [None] * (l_max + 1)
    if order == 2 and kin.alpha != 0:
        jobs = [(l, kin, qcfg) for l in range(l_max_delta2 + 1)]
        if workers > 1:
            with ProcessPoolExecutor(workers) as pool:
                results = list(pool.map(_delta2_job, jobs))
        else:
            results = [_delta2_job(j) for j in jobs]
        for l, (val, quad) in enumerate(results):
            d2[l] = val
            quads[l] = quad
        if l_max > l_max_delta2:
            d2[l_max_delta2 + 1:] = _extend(policy, d2[: l_max_delta2 + 1], range(l_max_delta2 + 1, l_max + 1))
    entries = tuple(
        PhaseShiftEntry(l, float(d1[l]), float(d2[l]), quads[l]) for l in range(l_max + 1)
    )
    return PhaseShiftTable(kin, entries, l_max_delta2, policy)
