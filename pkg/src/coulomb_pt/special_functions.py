"""Special functions used throughout the package.

Everything here is written for the narrow parameter families the scattering
code needs: digamma on the positive axis, the hypergeometric family
2F1(1/2, l+1; l+3/2; z) on [0, 1), Legendre polynomials by recurrence and
arg Gamma(l + 1 + i eta) for the exact Coulomb phase shifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EULER_GAMMA = 0.57721566490153286061
LN2 = math.log(2.0)

# psi asymptotic coefficients B_2k / (2k), k = 1..8
_PSI_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
)

# Stirling coefficients B_2k / (2k (2k - 1)), k = 1..10
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
    43867.0 / 244188.0,
    -174611.0 / 125400.0,
)

_PSI_SHIFT = 10.0
_LOGGAMMA_SHIFT = 15


class SpecialFunctionError(ArithmeticError):
    """Raised for out-of-domain arguments or failed series convergence."""


class ConvergenceError(SpecialFunctionError):
    pass


@dataclass(frozen=True)
class SpecialFnResult:
    value: float
    est_error: float
    terms_used: int

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise SpecialFunctionError(f"non-finite special function value {self.value}")
        if self.est_error < 0 or self.terms_used < 1:
            raise SpecialFunctionError("invalid diagnostics")


def digamma(x):
    """Digamma function psi(x) for x > 0.

    Shifts the argument up to x >= 10 with psi(x) = psi(x + 1) - 1/x and
    then uses the asymptotic series. Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(arr)) or np.any(arr <= 0):
        raise SpecialFunctionError("digamma is only defined here for finite x > 0")
    y = arr.copy()
    acc = np.zeros_like(y)
    while True:
        small = y < _PSI_SHIFT
        if not np.any(small):
            break
        acc = np.where(small, acc - 1.0 / y, acc)
        y = np.where(small, y + 1.0, y)
    inv2 = 1.0 / (y * y)
    series = np.zeros_like(y)
    for c in reversed(_PSI_ASYMPTOTIC):
        series = (series + c) * inv2
    out = acc + np.log(y) - 0.5 / y - series
    return float(out) if np.ndim(out) == 0 else out


def _direct_series(l, z):
    # 2F1(1/2, l+1; l+3/2; z) by its power series; all terms positive.
    zmax = float(np.max(z)) if z.size else 0.0
    if zmax == 0.0:
        return np.ones_like(z), np.zeros_like(z), 1
    n_terms = int(math.ceil(math.log(1e-18) / math.log(zmax))) + 8
    k = np.arange(n_terms, dtype=float)
    ratio = (k + 0.5) * (l + 1.0 + k) / ((l + 1.5 + k) * (k + 1.0))
    terms = np.cumprod(ratio[None, :] * z[:, None], axis=1)
    value = 1.0 + terms.sum(axis=1)
    # remaining tail is bounded by a geometric series with ratio z
    tail = terms[:, -1] * z / (1.0 - z)
    return value, tail + 4e-16 * value, n_terms + 1


def _log_series(l, omz, n_max=4000):
    # Expansion about z = 1 for the c = a + b family (logarithmic case).
    omz_max = float(np.max(omz))
    if omz_max >= 1.0:
        raise SpecialFunctionError("log expansion requires 1 - z < 1")
    n_terms = 8
    if omz_max > 0:
        n_terms = int(math.ceil(math.log(1e-18) / math.log(omz_max))) + 8
    # extra room for the hump of (l+1)_k / k! when (l+1)(1-z) is near 2
    n_terms = min(n_max, n_terms + 2 * (l + 1))
    k = np.arange(n_terms, dtype=float)
    coef = np.ones(n_terms)
    coef[1:] = np.cumprod((k[:-1] + 0.5) * (l + 1.0 + k[:-1]) / (k[:-1] + 1.0) ** 2)
    inv_k1 = np.concatenate(([0.0], 1.0 / k[1:]))
    psi_k1 = -EULER_GAMMA + np.cumsum(inv_k1)
    psi_half = -EULER_GAMMA - 2.0 * LN2 + np.concatenate(([0.0], np.cumsum(1.0 / (k[:-1] + 0.5))))
    psi_l = digamma(l + 1.0) + np.concatenate(([0.0], np.cumsum(1.0 / (l + 1.0 + k[:-1]))))
    base = 2.0 * psi_k1 - psi_half - psi_l
    log_omz = np.log(omz)
    powers = omz[:, None] ** k[None, :]
    terms = coef[None, :] * powers * (base[None, :] - log_omz[:, None])
    total = terms.sum(axis=1)
    prefactor = math.exp(math.lgamma(l + 1.5) - math.lgamma(l + 1.0) - 0.5 * math.log(math.pi))
    value = prefactor * total
    last = np.abs(terms[:, -1])
    if np.any(last > 1e-14 * np.abs(total)):
        raise ConvergenceError(f"log expansion of 2F1 did not converge (l={l}, 1-z={omz_max})")
    scale = prefactor * np.abs(terms).sum(axis=1)
    return value, 8e-16 * scale + prefactor * last, n_terms


def hyp2f1_half_array(l, z, one_minus_z=None):
    """Vectorised 2F1(1/2, l+1; l+3/2; z) returning ``(value, est_error, terms)``.

    ``one_minus_z`` may be passed explicitly when it is known to more digits
    than ``1 - z`` would give.
    """
    if l < 0 or int(l) != l:
        raise SpecialFunctionError("l must be a nonnegative integer")
    l = int(l)
    z = np.atleast_1d(np.asarray(z, dtype=float))
    omz = 1.0 - z if one_minus_z is None else np.atleast_1d(np.asarray(one_minus_z, dtype=float))
    if np.any(z < 0) or np.any(omz <= 0) or np.any(~np.isfinite(z)):
        raise SpecialFunctionError("hyp2f1_half requires 0 <= z < 1")
    value = np.empty_like(z)
    err = np.empty_like(z)
    # direct series is cheap and cancellation-free unless z is close to 1
    use_log = (z > 0.5) & ((l + 1.0) * omz <= 2.0)
    terms = 1
    if np.any(~use_log):
        v, e, n = _direct_series(l, z[~use_log])
        value[~use_log], err[~use_log] = v, e
        terms = max(terms, n)
    if np.any(use_log):
        v, e, n = _log_series(l, omz[use_log])
        value[use_log], err[use_log] = v, e
        terms = max(terms, n)
    return value, err, terms


def hyp2f1_half(l: int, z: float) -> SpecialFnResult:
    """Gauss hypergeometric function 2F1(1/2, l+1; l+3/2; z) for 0 <= z < 1.

    Uses the power series for moderate z and the logarithmic expansion about
    z = 1 once ``(l + 1)(1 - z)`` is small enough for it to be well conditioned.

    Raises
    ------
    SpecialFunctionError
        For z outside [0, 1) or negative l.
    ConvergenceError
        If the selected expansion fails to reach tolerance.
    """
    if not (0.0 <= z < 1.0):
        raise SpecialFunctionError(f"z={z} outside [0, 1)")
    value, err, n = hyp2f1_half_array(l, z)
    return SpecialFnResult(float(value[0]), float(err[0]), n)


def legendre_p(l: int, x):
    """Legendre polynomial P_l(x) by the three-term recurrence."""
    if l < 0 or int(l) != l:
        raise SpecialFunctionError("l must be a nonnegative integer")
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise SpecialFunctionError("legendre_p requires |x| <= 1")
    p_prev, p = np.ones_like(arr), arr.copy()
    if l == 0:
        out = p_prev
    else:
        for n in range(1, l):
            p_prev, p = p, ((2 * n + 1) * arr * p - n * p_prev) / (n + 1)
        out = p
    return float(out) if np.ndim(out) == 0 else out


def legendre_stream(l_max: int, x):
    """Yield ``(l, P_l(x))`` for l = 0..l_max without storing the table."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.abs(arr) > 1.0):
        raise SpecialFunctionError("legendre_stream requires |x| <= 1")
    p_prev = np.ones_like(arr)
    yield 0, p_prev
    if l_max == 0:
        return
    p = arr.copy()
    yield 1, p
    for n in range(1, l_max):
        p_prev, p = p, ((2 * n + 1) * arr * p - n * p_prev) / (n + 1)
        yield n + 1, p


def loggamma_complex(z: complex) -> complex:
    """Continuous branch of log Gamma(z) for Re z > 0 (Stirling plus recurrence)."""
    z = complex(z)
    if not (z.real > 0 and math.isfinite(z.real) and math.isfinite(z.imag)):
        raise SpecialFunctionError("loggamma_complex requires finite z with Re z > 0")
    shift = max(0, _LOGGAMMA_SHIFT - int(z.real))
    correction = 0j
    for k in range(shift):
        correction += np.log(z + k)
    w = z + shift
    inv = 1.0 / w
    inv2 = inv * inv
    series = 0j
    for c in reversed(_STIRLING):
        series = series * inv2 + c
    series *= inv
    lg = (w - 0.5) * np.log(w) - w + 0.5 * math.log(2.0 * math.pi) + series
    return complex(lg - correction)


def coulomb_sigma_exact(l: int, eta: float) -> float:
    """Exact Coulomb phase shift sigma_l = arg Gamma(l + 1 + i eta), in radians."""
    if l < 0 or int(l) != l:
        raise SpecialFunctionError("l must be a nonnegative integer")
    if not math.isfinite(eta):
        raise SpecialFunctionError("eta must be finite")
    if eta == 0.0:
        return 0.0
    return loggamma_complex(complex(l + 1, eta)).imag
