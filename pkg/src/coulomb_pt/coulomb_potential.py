"""Partial-wave matrix elements of the Coulomb potential alpha/r.

V_l(k1, k2) = alpha/sqrt(pi) * l!/Gamma(l+3/2) * rho^(l+1) * 2F1(1/2, l+1; l+3/2; rho^2)

with rho = min(k1, k2)/max(k1, k2). The function has a logarithmic
singularity at k1 = k2,

    V_l(k (1 + x), k) -> (alpha/pi) (C_l - ln|x|) + O(x),

with C_l = ln 2 - gamma_E - psi(l + 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special_functions import EULER_GAMMA, LN2, digamma, hyp2f1_half_array

DEFAULT_CROSSOVER = 1e-4


class PotentialError(ValueError):
    pass


@dataclass(frozen=True)
class PotentialMatrixElement:
    l: int
    k1: float
    k2: float
    value: float
    near_singular: bool


def c_l(l: int) -> float:
    """Constant of the logarithmic singularity, ln 2 - gamma_E - psi(l+1)."""
    if l < 0 or int(l) != l:
        raise PotentialError("l must be a nonnegative integer")
    return LN2 - EULER_GAMMA - digamma(l + 1.0)


def singular_approx(l: int, x, alpha: float):
    """Leading behaviour (alpha/pi)(C_l - ln|x|) of V_l(k(1+x), k)."""
    x = np.asarray(x, dtype=float)
    if np.any(x == 0):
        raise PotentialError("singular_approx is undefined at x = 0")
    out = alpha / math.pi * (c_l(l) - np.log(np.abs(x)))
    return float(out) if np.ndim(out) == 0 else out


def _prefactor(l: int) -> float:
    # 1/sqrt(pi) * l!/Gamma(l + 3/2), via log-gamma so large l cannot overflow
    return math.exp(math.lgamma(l + 1.0) - math.lgamma(l + 1.5) - 0.5 * math.log(math.pi))


def _from_rho(l, rho, one_minus_rho2, alpha):
    f, _, _ = hyp2f1_half_array(l, rho * rho, one_minus_rho2)
    return alpha * _prefactor(l) * rho ** (l + 1) * f


def matrix_element_offset(l: int, x, alpha: float):
    """V_l(p(1+x), p) as a function of the relative offset x > -1, x != 0.

    The result does not depend on p. Vectorised over ``x``; 1 - rho^2 is
    formed from x directly so the logarithmic region stays accurate.
    """
    if l < 0 or int(l) != l:
        raise PotentialError("l must be a nonnegative integer")
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs <= -1.0):
        raise PotentialError("offset x must exceed -1")
    if np.any(xs == 0.0):
        raise PotentialError("V_l has a pole at equal momenta")
    above = xs > 0
    rho = np.where(above, 1.0 / (1.0 + np.abs(xs)), 1.0 + xs)
    omr2 = np.where(above, xs * (2.0 + xs) / (1.0 + xs) ** 2, -xs * (2.0 + xs))
    out = _from_rho(int(l), rho, omr2, alpha)
    return float(out[0]) if np.ndim(x) == 0 else out


def matrix_element(
    l: int,
    k1: float,
    k2: float,
    alpha: float,
    crossover: float = DEFAULT_CROSSOVER,
) -> PotentialMatrixElement:
    """Coulomb matrix element V_l(k1, k2) for positive, unequal momenta.

    ``near_singular`` is set when |rho - 1| < ``crossover``. In that region the
    value comes from the full logarithmic expansion about rho = 1, whose
    leading term is :func:`singular_approx`.
    """
    if l < 0 or int(l) != l:
        raise PotentialError("l must be a nonnegative integer")
    if not (k1 > 0 and k2 > 0):
        raise PotentialError("momenta must be positive")
    if k1 == k2:
        raise PotentialError("V_l has a pole at k1 = k2")
    lo, hi = min(k1, k2), max(k1, k2)
    rho = lo / hi
    omr2 = (hi - lo) * (hi + lo) / (hi * hi)
    value = float(_from_rho(int(l), np.array([rho]), np.array([omr2]), alpha)[0])
    return PotentialMatrixElement(int(l), k1, k2, value, (1.0 - rho) < crossover)
