"""Cauchy principal-value integration for a simple pole at x = 0.

Inside a window [-w, w] the integrand is folded, h(x) = f(x) + f(-x), which
removes the odd non-integrable part of the pole exactly and leaves at most a
log^2-type singularity. The fold is integrated on geometrically graded panels
down to ``inner_cutoff``; the last sliver [0, cutoff] is integrated from a
three-term log fit. Outside the window plain adaptive Gauss-Legendre is used,
with power-law tail estimation when the upper limit is truncated.

Integrands must accept and return numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple

import numpy as np

from .coulomb_potential import c_l
from .special_functions import digamma


_MAX_PANELS = 200_000


class PVError(ValueError):
    pass


class PVConvergenceError(ArithmeticError):
    def __init__(self, message, value=math.nan, est_error=math.inf, evaluations=0):
        super().__init__(message)
        self.value = value
        self.est_error = est_error
        self.evaluations = evaluations


@dataclass(frozen=True)
class PVQuadConfig:
    window_half_width: float = 0.5
    inner_cutoff: float = 1e-10
    grading_ratio: float = 0.5
    outer_x_max: float = 1e4
    abs_tol: float = 1e-10
    rel_tol: float = 1e-8
    nodes: int = 20
    max_depth: int = 30

    def __post_init__(self):
        if not 0 < self.inner_cutoff < self.window_half_width <= 1:
            raise PVError("need 0 < inner_cutoff < window_half_width <= 1")
        if not self.outer_x_max > self.window_half_width:
            raise PVError("outer_x_max must exceed window_half_width")
        if not (0 < self.grading_ratio < 1):
            raise PVError("grading_ratio must lie in (0, 1)")
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise PVError("tolerances must be positive")
        if self.nodes < 2 or self.max_depth < 1:
            raise PVError("nodes >= 2 and max_depth >= 1 required")

    def refined(self) -> "PVQuadConfig":
        """Halve the cutoff, grading ratio and tolerances; double the truncation."""
        return replace(
            self,
            inner_cutoff=self.inner_cutoff / 2,
            grading_ratio=self.grading_ratio / 2,
            outer_x_max=self.outer_x_max * 2,
            abs_tol=self.abs_tol / 2,
            rel_tol=self.rel_tol / 2,
        )


@dataclass(frozen=True)
class PVResult:
    value: float
    est_error: float
    evaluations: int
    tail_bound: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise PVError("non-finite principal value")
        if self.est_error < 0 or self.tail_bound < 0:
            raise PVError("error estimates must be nonnegative")


class _Counter:
    def __init__(self, f):
        self.f = f
        self.n = 0

    def __call__(self, x):
        self.n += x.size
        y = np.asarray(self.f(x), dtype=float)
        if y.shape != x.shape:
            y = np.broadcast_to(y, x.shape)
        if not np.all(np.isfinite(y)):
            raise PVError("integrand returned non-finite values")
        return y


def _split(values):
    # integrands may return (value, roundoff_scale) to expose cancellation
    if isinstance(values, tuple):
        return values
    return values, np.abs(values)


def _gl_panels(f, a, b, t, w):
    # Gauss-Legendre on many panels in one vectorised call
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = mid[:, None] + half[:, None] * t[None, :]
    values, scale = _split(f(x))
    return half * (values @ w), np.abs(half) * (scale @ w)


def adaptive_gauss_legendre(f, a, b, abs_tol, rel_tol, nodes=20, max_depth=30, breakpoints=()):
    """Adaptive bisection Gauss-Legendre over [a, b].

    Returns ``(value, est_error, converged)``. The error estimate is the
    difference between the panel rule and the rule on its two halves, which
    bounds the error of the coarser result and so overestimates the error
    of the value returned. ``f`` may return ``(values, scale)`` where
    ``scale`` is the pointwise magnitude of the terms that were summed; a
    panel whose difference is below the resulting roundoff level is accepted.
    """
    t, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.unique(np.concatenate(([a], [p for p in breakpoints if a < p < b], [b])))
    lo, hi = edges[:-1], edges[1:]
    coarse, _ = _gl_panels(f, lo, hi, t, w)
    length = b - a
    total = 0.0
    err = 0.0
    magnitude = 0.0
    converged = True
    depth = 0
    while lo.size:
        mid = 0.5 * (lo + hi)
        left, left_scale = _gl_panels(f, lo, mid, t, w)
        right, right_scale = _gl_panels(f, mid, hi, t, w)
        fine = left + right
        noise = 64 * np.finfo(float).eps * (left_scale + right_scale)
        diff = np.abs(fine - coarse)
        tol = np.maximum(abs_tol * (hi - lo) / length, rel_tol * np.abs(fine))
        ok = diff <= np.maximum(tol, noise)
        depth += 1
        if depth >= max_depth or lo.size > _MAX_PANELS:
            converged = bool(np.all(ok))
            ok[:] = True
        total += fine[ok].sum()
        err += np.maximum(diff[ok], noise[ok]).sum()
        magnitude += (left_scale[ok] + right_scale[ok]).sum()
        keep = ~ok
        lo, mid, hi = lo[keep], mid[keep], hi[keep]
        lo, hi = np.concatenate((lo, mid)), np.concatenate((mid, hi))
        coarse = np.concatenate((left[keep], right[keep]))
    err += 16 * np.finfo(float).eps * magnitude
    return float(total), float(err), converged


def _sliver(h, c, r):
    # integral of h over [0, c] from a fit h ~ A + B ln x + D ln^2 x
    xs = np.array([c, c * r, c * r * r])
    hs = h(xs)
    ls = np.log(xs)
    lc = math.log(c)
    m0, m1, m2 = c, c * (lc - 1.0), c * (lc * lc - 2.0 * lc + 2.0)
    coef3 = np.linalg.solve(np.vander(ls, 3, increasing=True), hs)
    coef2 = np.linalg.solve(np.vander(ls[:2], 2, increasing=True), hs[:2])
    fit3 = coef3[0] * m0 + coef3[1] * m1 + coef3[2] * m2
    fit2 = coef2[0] * m0 + coef2[1] * m1
    return float(fit3), float(abs(fit3 - fit2))


def _tail_bound(f, x_max, sign):
    # |f| ~ A x^-s near the truncation point; remainder ~ |f(X)| X/(s - 1)
    xs = sign * np.array([0.5 * x_max, x_max])
    fa, fb = np.abs(f(xs))
    if fb == 0.0:
        return 0.0
    if fa == 0.0:
        return math.inf
    s = math.log2(fa / fb)
    if s <= 1.05:
        return math.inf
    return float(fb * x_max / (s - 1.0))


def _graded_edges(start, stop, ratio):
    # geometric breakpoints from start down to stop (start > stop > 0)
    edges = [start]
    while edges[-1] * ratio > stop:
        edges.append(edges[-1] * ratio)
    edges.append(stop)
    return np.array(edges[::-1])


def principal_value(
    f: Callable[[np.ndarray], np.ndarray],
    x_lo: float,
    x_hi: float,
    config: PVQuadConfig | None = None,
) -> PVResult:
    """Principal value of the integral of ``f`` over [x_lo, x_hi], pole at 0.

    Either limit may be infinite, in which case it is truncated at
    ``config.outer_x_max`` and the neglected remainder is reported in
    ``tail_bound`` (not added to the value).

    Raises
    ------
    PVError
        If 0 is not strictly inside the interval or the integrand is not finite.
    PVConvergenceError
        If adaptive refinement exhausts ``max_depth`` or a truncated tail does
        not decay faster than 1/x.
    """
    cfg = config or PVQuadConfig()
    if not (x_lo < 0 < x_hi):
        raise PVError("the pole x = 0 must lie strictly inside (x_lo, x_hi)")
    fc = _Counter(f)
    w = min(cfg.window_half_width, -x_lo, x_hi)
    c = cfg.inner_cutoff
    if c >= w:
        raise PVError("inner_cutoff must be smaller than the window")

    def fold(x):
        a, b = fc(x), fc(-x)
        return a + b, np.abs(a) + np.abs(b)

    def fold_value(x):
        return fold(x)[0]

    pieces = []
    edges = _graded_edges(w, c, cfg.grading_ratio)
    span = max(x_hi if math.isfinite(x_hi) else cfg.outer_x_max, 0) + max(
        -x_lo if math.isfinite(x_lo) else cfg.outer_x_max, 0
    )

    def integrate(g, a, b, bps=()):
        val, err, ok = adaptive_gauss_legendre(
            g, a, b, cfg.abs_tol * (b - a) / span, cfg.rel_tol, cfg.nodes, cfg.max_depth, bps
        )
        pieces.append((val, err, ok))

    integrate(fold, c, w, edges[1:-1])
    sliver_val, sliver_err = _sliver(fold_value, c, cfg.grading_ratio)
    pieces.append((sliver_val, sliver_err, True))

    tail = 0.0
    for sign, limit in ((1.0, x_hi), (-1.0, -x_lo)):
        end = min(limit, cfg.outer_x_max)
        if end <= w:
            continue
        bps = []
        b = 2.0 * w
        while b < end:
            bps.append(b)
            b *= 2.0
        g = fc if sign > 0 else (lambda x: fc(-x))
        integrate(g, w, end, bps)
        if limit > cfg.outer_x_max:
            tail += _tail_bound(fc, end, sign)

    value = sum(p[0] for p in pieces)
    est = sum(p[1] for p in pieces)
    if not all(p[2] for p in pieces):
        raise PVConvergenceError(
            f"adaptive refinement hit max_depth={cfg.max_depth}", value, est, fc.n
        )
    if not math.isfinite(tail):
        raise PVConvergenceError("truncated tail does not decay faster than 1/x", value, est, fc.n)
    return PVResult(value, est, fc.n, tail)


class SincLogCheck(NamedTuple):
    numeric: float
    analytic: float
    est_error: float


def _sinc_log_half_periods(const, z_max, nodes=16, levels=6):
    # integral over (0, inf) of sin(z)/z (const - ln z), split at multiples of pi
    t, w = np.polynomial.legendre.leggauss(nodes)
    # first half period: subtract the log singularity analytically, then
    # integrate the weakly singular remainder on panels graded toward 0
    def remainder(z):
        return (np.sin(z) / z - 1.0) * (const - np.log(z))

    first, first_err, _ = adaptive_gauss_legendre(
        remainder, 0.0, math.pi, 1e-15, 1e-14, nodes, breakpoints=_graded_edges(math.pi, 1e-6, 0.25)
    )
    first += math.pi * const - (math.pi * math.log(math.pi) - math.pi)
    n = max(int(math.ceil(z_max / math.pi)), levels + 2)
    k = np.arange(1, n, dtype=float)
    zz = math.pi * (k[:, None] + 0.5 * (1.0 + t[None, :]))
    g = np.sin(zz) / zz * (const - np.log(zz))
    chunks = 0.5 * math.pi * (g @ w)
    partial = first + np.cumsum(np.concatenate(([0.0], chunks)))
    # repeated pairwise averaging of the alternating partial sums
    tail = partial[-(levels + 1):]
    history = [tail[-1]]
    for _ in range(levels):
        tail = 0.5 * (tail[1:] + tail[:-1])
        history.append(tail[-1])
    return history[-1], abs(history[-1] - history[-2]) + first_err


def sinc_log_identity(l: int, pr: float, alpha: float, z_max: float = 1e6) -> SincLogCheck:
    """Check the sinc-log delta-function identity numerically.

    numeric  = -(alpha/pi) * integral over R of sinc(z) (C_l - ln|z/pr|)
    analytic = alpha (psi(l+1) - ln(2 pr))
    """
    if not pr > 0:
        raise PVError("pr must be positive")
    const = c_l(l) + math.log(pr)
    half, err = _sinc_log_half_periods(const, z_max)
    scale = -2.0 * alpha / math.pi
    analytic = alpha * (digamma(l + 1.0) - math.log(2.0 * pr))
    return SincLogCheck(float(scale * half), float(analytic), float(abs(scale) * err))
