"""Norming constants and conditional tail limits for the Gaussian family.

The Gaussian copula is asymptotically independent, so the concomitant
maxima need their own normalisation.  On the normal scale the maxima use the
classical ``(a_n, b_n)``; the concomitants of the top X values are shifted by
``rho * b_n``.  On the unit-exponential scale the conditional exceedance
``P(Y_E > a_nE y + b_nE | X_E > log n)`` is compared with the closed form
``exp(-(rho y)^2 / 2) / (y sqrt(2 pi))``.  Exact quadrature of that
probability drifts towards ``1 - Phi(y)`` as the threshold grows, so the
closed form only matches at moderate thresholds (see demos/05).
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np
from scipy.special import ndtr

from .errors import DomainError
from .sampler import SeedSpec, sample_tail_conditioned_gaussian

_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class NormingConstants:
    n: float
    rho: float
    a_n: float
    b_n: float
    a_tilde_n: float
    b_tilde_n: float
    a_tilde_nE: float
    b_tilde_nE: float

    @property
    def log_n(self):
        return math.log(self.n)

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class WTModelPoint:
    zeta1: float
    kappa: float
    L1: float


def _check_rho(rho, allow_zero=False):
    rho = float(rho)
    lo_ok = rho >= 0 if allow_zero else rho > 0
    if not (lo_ok and rho < 1):
        raise DomainError(f"rho={rho!r} must lie in (0, 1)")
    return rho


def norming_constants_log(log_n, rho):
    """Constants with ``log n`` given directly, so ``n`` never has to be representable."""
    log_n = float(log_n)
    if not log_n >= math.log(2.0):
        raise DomainError("need n >= 2")
    rho = _check_rho(rho, allow_zero=True)
    root = math.sqrt(2.0 * log_n)
    ell = math.log(4.0 * math.pi * log_n)
    a_n = 1.0 / root
    b_n = root - 0.5 * ell / root
    s = math.sqrt(1.0 - rho * rho)
    r2 = rho * rho
    b_e = r2 * log_n - 0.5 * r2 * ell + r2 / 16.0 * ell * ell / log_n
    n = math.exp(log_n) if log_n < 709.0 else math.inf
    return NormingConstants(n, rho, a_n, b_n, s, rho * b_n, rho * s * b_n, b_e)


def norming_constants(n, rho):
    """Norming constants for sample size ``n`` and correlation ``rho``."""
    if not n >= 2:
        raise DomainError("need n >= 2")
    out = norming_constants_log(math.log(n), rho)
    return NormingConstants(float(n), *list(asdict(out).values())[1:])


def wt_kappa(rho, zeta1):
    """Joint tail decay exponent ``kappa(zeta1, 1)``."""
    rho = _check_rho(rho)
    zeta1 = float(zeta1)
    if not rho * rho < min(zeta1, 1.0):
        raise DomainError("need rho^2 < min(zeta1, 1)")
    return (zeta1 + 1.0 - 2.0 * rho * math.sqrt(zeta1)) / (1.0 - rho * rho)


def wt_L1(n, rho, zeta1, log_n=None):
    """Slowly varying factor ``L1(n; zeta1, 1)`` of the conditional tail."""
    rho = _check_rho(rho)
    zeta1 = float(zeta1)
    if not rho * rho < min(zeta1, 1.0):
        raise DomainError("need rho^2 < min(zeta1, 1)")
    sz = math.sqrt(zeta1)
    if not 1.0 - rho * sz > 0:
        raise DomainError("1 - rho sqrt(zeta1) must be positive")
    log_n = math.log(n) if log_n is None else float(log_n)
    one_m = 1.0 - rho * rho
    expo = (2.0 * rho * rho - rho * (sz + 1.0 / sz)) / (2.0 * one_m)
    zpow = (1.0 - rho / sz) / (2.0 * one_m)
    return ((4.0 * math.pi * log_n) ** expo * zeta1 ** zpow * one_m ** 1.5
            / ((sz - rho) * (1.0 - rho * sz)))


def zeta1(log_n, rho, y):
    """Exceedance level ``(a_nE y + b_nE) / log n`` of ``Y_E`` in units of ``log n``."""
    c = norming_constants_log(log_n, rho)
    return (c.a_tilde_nE * y + c.b_tilde_nE) / c.log_n


def wt_model_point(log_n, rho, y):
    z = zeta1(log_n, rho, y)
    return WTModelPoint(z, wt_kappa(rho, z), wt_L1(None, rho, z, log_n=log_n))


def gaussian_conditional_tail_limit(rho, y):
    """``exp(-(rho y)^2 / 2) / (y sqrt(2 pi))``; exceeds 1 for small ``y``."""
    rho = _check_rho(rho, allow_zero=True)
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0)):
        raise DomainError("y must be positive")
    out = np.exp(-0.5 * (rho * y) ** 2) / (y * _SQRT_2PI)
    return float(out) if out.ndim == 0 else out


def mills_approx(rho, y):
    """Mills-ratio form ``rho (1 - Phi(rho y))`` of the same limit."""
    rho = _check_rho(rho, allow_zero=True)
    y = np.asarray(y, dtype=float)
    if np.any(~(y > 0)):
        raise DomainError("y must be positive")
    out = rho * ndtr(-rho * y)
    return float(out) if out.ndim == 0 else out


@dataclass(frozen=True)
class GaussianTailPoint:
    y: float
    threshold: float
    empirical: float
    limit: float
    mills: float
    rel_gap: float


@dataclass(frozen=True)
class GaussianTailReport:
    rho: float
    threshold_u: float
    sample_count: int
    seed: int
    constants: NormingConstants
    points: tuple

    def to_dict(self):
        return {
            "rho": self.rho,
            "threshold_u": self.threshold_u,
            "sample_count": self.sample_count,
            "seed": self.seed,
            "constants": self.constants.to_dict(),
            "points": [asdict(p) for p in self.points],
        }


def validate_gaussian_limit(rho, threshold_u, y_grid, sample_count, seed, threads=1):
    """Compare empirical conditional exceedances with the limit on ``y_grid``.

    ``log n`` is set to ``threshold_u``.  Each ``y`` gets its own stream
    ``(seed, index)`` of ``sample_count`` draws of ``X_E > threshold_u``.
    Grid points where the limit exceeds 1 are rejected.
    """
    rho = _check_rho(rho)
    if not threshold_u > 0:
        raise DomainError("threshold_u must be positive")
    y_grid = [float(y) for y in y_grid]
    for y in y_grid:
        if not y > 0:
            raise DomainError("y values must be positive")
        if gaussian_conditional_tail_limit(rho, y) > 1.0:
            raise DomainError(f"limit at y={y!r} exceeds 1 and is not a probability")
    consts = norming_constants_log(threshold_u, rho)

    def one(item):
        i, y = item
        batch = sample_tail_conditioned_gaussian(rho, threshold_u, sample_count, SeedSpec(seed, i))
        level = consts.a_tilde_nE * y + consts.b_tilde_nE
        emp = float(np.mean(batch.ys > level))
        lim = gaussian_conditional_tail_limit(rho, y)
        return GaussianTailPoint(y, level, emp, lim, mills_approx(rho, y), abs(emp - lim) / lim)

    items = list(enumerate(y_grid))
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            points = tuple(pool.map(one, items))
    else:
        points = tuple(one(it) for it in items)
    return GaussianTailReport(rho, float(threshold_u), int(sample_count), int(seed), consts, points)
