"""Wavepacket-regularised partial-wave differential cross section.

    dsigma/dOmega = |f|^2,
    f = 1/(2p) sum_l (2l+1) S_l exp(-eps^2 (l+1/2)^2) exp(2i(d1bar_l + d2_l))
                  exp(-(delta - Delta_l)^2 / 4) P_l(cos theta)

with S_l = 1, or 1 + (-1)^l for the symmetrised (identical boson) amplitude,
and Delta_l = 4 eps eta (ln(4 p R / e) - psi(l + 1)). Cross sections are in
MeV^-2; multiply by ``MEV2_TO_MBARN`` for millibarn.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .kinematics import Kinematics
from .phase_shifts import PhaseShiftTable
from .special_functions import digamma, legendre_stream

# exp(-36) ~ 2e-16: regulator must have switched the sum off by l_max
_REGULATOR_FLOOR = 36.0


class CrossSectionError(ValueError):
    pass


def default_l_max(epsilon: float) -> int:
    return int(math.ceil(7.0 / epsilon))


@dataclass(frozen=True)
class XSecConfig:
    epsilon: float = 1e-3
    delta_shift: float = 0.0
    l_max: int | None = None
    symmetrize: bool = False
    R_over_sigma_x: float | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise CrossSectionError("epsilon must lie in (0, 1)")
        if self.l_max is None:
            object.__setattr__(self, "l_max", default_l_max(self.epsilon))
        if self.R_over_sigma_x is None:
            object.__setattr__(self, "R_over_sigma_x", math.sqrt(self.epsilon))
        if self.l_max < 1:
            raise CrossSectionError("l_max must be at least 1")
        if self.epsilon**2 * (self.l_max + 0.5) ** 2 < _REGULATOR_FLOOR:
            raise CrossSectionError(
                f"l_max={self.l_max} truncates the sum before the Gaussian regulator "
                f"falls below exp(-{_REGULATOR_FLOOR:g})"
            )
        if not self.R_over_sigma_x > 0:
            raise CrossSectionError("R_over_sigma_x must be positive")


@dataclass(frozen=True)
class XSecRecord:
    p: float
    theta: float
    model: float
    rutherford: float
    moller: float
    delta_shift_used: float = 0.0


def delta_l_shift(l, kin: Kinematics, cfg: XSecConfig):
    """Centre Delta_l of the Gaussian time-shift profile for partial wave l.

    Uses sigma_x = 1/(2 sigma_p) and sigma_p = eps p, so 4 p R = 2 (R/sigma_x)/eps.
    """
    if kin.alpha == 0:
        return 0.0 if np.ndim(l) == 0 else np.zeros(np.shape(l))
    log_term = math.log(2.0 * cfg.R_over_sigma_x / cfg.epsilon) - 1.0
    return 4.0 * cfg.epsilon * kin.eta * (log_term - digamma(np.asarray(l, dtype=float) + 1.0))


def partial_wave_coefficients(table: PhaseShiftTable, cfg: XSecConfig, delta_shift=None) -> np.ndarray:
    """Complex coefficients multiplying P_l(cos theta) inside the sum (no 1/2p)."""
    if cfg.l_max > table.l_max:
        raise CrossSectionError(f"table covers l <= {table.l_max}, cfg.l_max is {cfg.l_max}")
    delta = cfg.delta_shift if delta_shift is None else delta_shift
    l = np.arange(cfg.l_max + 1)
    lf = l.astype(float)
    phase = table.delta1_bar_array()[: cfg.l_max + 1] + table.delta2_array()[: cfg.l_max + 1]
    big_delta = np.atleast_1d(delta_l_shift(l, table.kin, cfg))
    coef = (2.0 * lf + 1.0) * np.exp(-(cfg.epsilon**2) * (lf + 0.5) ** 2)
    coef = coef * np.exp(-((delta - big_delta) ** 2) / 4.0)
    if cfg.symmetrize:
        coef = coef * (1.0 + (-1.0) ** l)
    return coef * np.exp(2j * phase)


def folded_cosine(theta):
    """cos(theta) evaluated so that theta and fl(pi - theta) give exactly opposite values.

    Both members of the pair are reduced to the same canonical angle in
    [0, pi/2]; this keeps the symmetrised sum parity-exact in floating point.
    """
    th = np.asarray(theta, dtype=float)
    upper = th > math.pi / 2
    canon = np.where(upper, math.pi - th, math.pi - (math.pi - th))
    x = np.cos(canon)
    return np.where(upper, -x, x)


def radians_mirrored(theta_deg):
    """Degrees to radians, mapping d and 180 - d onto an exact floating-point mirror pair."""
    d = np.asarray(theta_deg, dtype=float)
    return np.where(d > 90.0, math.pi - np.radians(180.0 - d), np.radians(d))


def scattering_amplitude(theta, table: PhaseShiftTable, cfg: XSecConfig, delta_shift=None):
    """Regularised amplitude f(theta) in MeV^-1 (momentum taken from ``table.kin``)."""
    th = np.asarray(theta, dtype=float)
    if np.any(th < 0) or np.any(th > math.pi):
        raise CrossSectionError("theta must lie in [0, pi]")
    coef = partial_wave_coefficients(table, cfg, delta_shift)
    x = folded_cosine(th)
    total = np.zeros(np.shape(x), dtype=complex)
    for l, p_l in legendre_stream(cfg.l_max, x):
        total += coef[l] * p_l
    out = total / (2.0 * table.kin.p)
    return complex(out) if np.ndim(out) == 0 else out


def differential_cross_section(theta, table: PhaseShiftTable, cfg: XSecConfig, delta_shift=None):
    """Model dsigma/dOmega = |f|^2 in MeV^-2; finite at theta = 0."""
    f = scattering_amplitude(theta, table, cfg, delta_shift)
    out = np.abs(f) ** 2
    return float(out) if np.ndim(out) == 0 else out


def _check_open_angle(theta, upper):
    th = np.asarray(theta, dtype=float)
    if np.any(th <= 0) or np.any(th >= upper):
        raise CrossSectionError("reference formula diverges at the requested angle")
    return th


def rutherford(theta, kin: Kinematics):
    """Rutherford formula m^2 alpha^2 / (4 p^4 sin^4(theta/2)) in MeV^-2."""
    th = _check_open_angle(theta, 2 * math.pi)
    out = kin.mass**2 * kin.alpha**2 / (4.0 * kin.p**4 * np.sin(th / 2.0) ** 4)
    return float(out) if np.ndim(out) == 0 else out


def rutherford_reduced_mass(theta, kin: Kinematics):
    """Rutherford formula with the two-body reduced mass m/2 (a quarter of :func:`rutherford`)."""
    return rutherford(theta, kin) / 4.0


def moller(theta, kin: Kinematics):
    """Spin-averaged tree-level Moller cross section in MeV^-2."""
    th = _check_open_angle(theta, math.pi)
    b2 = kin.beta**2
    s2 = np.sin(th) ** 2
    first = (1.0 + b2) * (1.0 - b2 * b2) / (4.0 * b2 * b2) * (4.0 / s2**2 - 3.0 / s2)
    second = (1.0 - b2) / 4.0 * (1.0 + 4.0 / s2)
    out = kin.alpha**2 / kin.mass**2 * (first + second)
    return float(out) if np.ndim(out) == 0 else out


def angular_scan(theta, table: PhaseShiftTable, cfg: XSecConfig) -> list[XSecRecord]:
    th = np.atleast_1d(np.asarray(theta, dtype=float))
    model = np.atleast_1d(differential_cross_section(th, table, cfg))
    kin = table.kin
    return [
        XSecRecord(kin.p, float(t), float(m), rutherford(t, kin), moller(t, kin), cfg.delta_shift)
        for t, m in zip(th, model)
    ]


@dataclass(frozen=True)
class DeltaProfile:
    delta: np.ndarray
    xsec: np.ndarray
    delta_star: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "delta_star", float(self.delta[int(np.argmax(self.xsec))]))


def delta_profile(theta: float, table: PhaseShiftTable, cfg: XSecConfig, delta_grid) -> DeltaProfile:
    """Cross section at fixed theta as a function of the time-shift parameter."""
    grid = np.asarray(delta_grid, dtype=float)
    if grid.size == 0:
        raise CrossSectionError("delta grid is empty")
    x = float(folded_cosine(theta))
    legendre = np.fromiter((float(p) for _, p in legendre_stream(cfg.l_max, x)), float, cfg.l_max + 1)
    xs = np.empty(grid.size)
    for i, d in enumerate(grid):
        amp = partial_wave_coefficients(table, cfg, d) @ legendre / (2.0 * table.kin.p)
        xs[i] = abs(amp) ** 2
    return DeltaProfile(grid, xs)
