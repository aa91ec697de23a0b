"""Limit laws for the concomitant maxima and the exact finite-sample cdf.

With unit-Frechet marginals and ``(V1 / n, V2 / n)`` the joint cdf of the
concomitant maxima converges to

    integral_0^inf H1(v1|x)^k H2(v2|x) x^(-k-2) exp(-1/x) / k! dx,

where ``H1`` is the limit of the "above" conditional and ``H2`` the product
of the limits of ``F2^n`` and ``F3``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy import stats
from scipy.special import gammaln

from . import models
from .errors import DomainError, QuadratureError, UnsupportedFamilyError
from .models import Family, ModelSpec, Scale
from .quadrature import QuadratureConfig, Substitution, gauss_kronrod, integrate_positive_axis

_LOG_FLOOR = -745.0


class Provenance(enum.Enum):
    ASYMPTOTIC = "asymptotic_eq14"
    FINITE_SAMPLE = "finite_sample_oracle"


@dataclass(frozen=True, eq=False)
class LimitSurface:
    grid: np.ndarray
    values: np.ndarray
    errors: np.ndarray
    provenance: Provenance
    model: ModelSpec
    k: int
    n: Optional[int] = None
    quad_tolerance: float = field(default=0.0)


def _extremal(model):
    if model.family is Family.GAUSSIAN:
        raise UnsupportedFamilyError(
            "the joint limit requires a nondegenerate slowly varying limit; "
            "the Gaussian family does not have one")


def _pos(*vals):
    out = [np.asarray(v, dtype=float) for v in vals]
    for a in out:
        if np.any(~(a > 0)):
            raise DomainError("arguments must be strictly positive")
    return out


def _out(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


# ---------------------------------------------------------------------------
# H1

def H1(model, y, x):
    """Limit of ``P(Y <= n y | X > n x)``: ``1 - ctilde(x,y) x^(1-alpha) y^(-beta)``."""
    _extremal(model)
    x, y = _pos(x, y)
    ts = models.tail_summary(model)
    c = np.asarray(models.ctilde(model, x, y))
    return _out(1.0 - c * x ** (1.0 - ts.alpha) * y ** (-ts.beta))


def H1_closed(model, y, x):
    """Family-specific closed form of :func:`H1`."""
    _extremal(model)
    x, y = _pos(x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        t = model.theta
        return _out(1.0 - (1.0 + (y / x) ** t) ** (-1.0 / t))
    v = models._logistic_V(model.gamma, x, y)
    return _out(x * (v - 1.0 / y))


# ---------------------------------------------------------------------------
# conditional limits

def _dependence_indicator(model, dependent):
    if dependent is not None:
        return bool(dependent)
    return models.tail_summary(model).asymptotically_dependent


def F2_limit(model, y, x, dependent=None):
    """Limit of ``F2(n y | n x)^n``.

    ``dependent`` overrides the asymptotic-dependence indicator; with it
    off the result is ``exp(-1/y)`` for any model.
    """
    x, y = _pos(x, y)
    if not _dependence_indicator(model, dependent):
        return _out(np.exp(-1.0 / y) + 0.0 * x)
    ts = models.tail_summary(model)
    r = np.asarray(models.r_limit(model, x, y))
    return _out(np.exp(-(1.0 - ts.lambda_u * r * (y / x) ** ts.alpha) / y))


def F3_limit(model, y, x, dependent=None):
    """Limit of ``F3(n y | n x)``; identically 1 without asymptotic dependence."""
    x, y = _pos(x, y)
    if not _dependence_indicator(model, dependent):
        return _out(np.ones(np.broadcast(x, y).shape))
    ts = models.tail_summary(model)
    r = np.asarray(models.r_limit(model, x, y))
    rx = np.asarray(models.r_limit_dx(model, x, y))
    a = ts.alpha
    return _out(1.0 + ts.lambda_u * x ** (2.0 - a) * y ** (a - 1.0) * (rx - a / x * r))


def H2(model, y, x, dependent=None):
    """Product of :func:`F2_limit` and :func:`F3_limit`."""
    return _out(np.asarray(F2_limit(model, y, x, dependent))
                * np.asarray(F3_limit(model, y, x, dependent)))


def H2_closed(model, y, x):
    """Stand-alone closed forms of ``H2`` for the two extremal families.

    The survival Clayton expression carries the exponent
    ``-1/y + (1 + (y/x)^theta)^(-1/theta)`` without the ``1/x`` factor
    and therefore matches :func:`H2` only at ``x = 1``; the logistic one
    matches everywhere.
    """
    _extremal(model)
    x, y = _pos(x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        t = model.theta
        z = 1.0 + (y / x) ** t
        return _out((1.0 - z ** (-1.0 / t - 1.0)) * np.exp(-1.0 / y + z ** (-1.0 / t)))
    g = model.gamma
    z = 1.0 + (y / x) ** (-1.0 / g)
    return _out(z ** (g - 1.0) * np.exp(-(z ** g - 1.0) / x))


def _log_h1_h2(model, v1, v2, x):
    """Stable ``(log H1(v1|x), log H2(v2|x))`` used inside the integrands."""
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        lx = np.log(x)
        if model.family is Family.SURVIVAL_CLAYTON_PARETO:
            t = model.theta
            l1 = np.logaddexp(0.0, t * (np.log(v1) - lx))
            log_h1 = np.log(-np.expm1(-l1 / t))
            l2 = np.logaddexp(0.0, t * (np.log(v2) - lx))
            log_f3 = np.log(-np.expm1(-(1.0 + 1.0 / t) * l2))
            log_f2 = -1.0 / v2 + np.exp(-l2 / t - lx)
            return log_h1, log_f2 + log_f3
        g = model.gamma
        lv1 = np.log(v1)
        z1 = np.logaddexp(0.0, (lv1 - lx) / g)
        log_h1 = lx - lv1 + np.log(np.expm1(g * z1))
        z2 = np.logaddexp(0.0, (lx - np.log(v2)) / g)
        excess = np.expm1(g * z2) / x  # V(x, v2) - 1/x
        return log_h1, (g - 1.0) * z2 - excess


# ---------------------------------------------------------------------------
# normalising sequences

def limit_norming(model, n):
    """``(a_tilde_n, b_tilde_n)`` for the implemented equality case ``a_tilde_n = n^((1-alpha)/beta)``."""
    _extremal(model)
    ts = models.tail_summary(model)
    if not 0 < ts.alpha < 1:
        raise DomainError("a nondegenerate limit needs alpha in (0, 1)")
    return float(n) ** ((1.0 - ts.alpha) / ts.beta), 0.0


def check_norming(model, n, a_tilde, b_tilde):
    """Raise :class:`DomainError` unless ``(a_tilde, b_tilde)`` is the supported choice."""
    expected, _ = limit_norming(model, n)
    if not math.isclose(a_tilde, expected, rel_tol=1e-12):
        raise DomainError(
            f"a_tilde_n={a_tilde!r} differs from n^((1-alpha)/beta)={expected!r}; "
            "only the equality case is implemented")
    if b_tilde != 0.0:
        raise DomainError("only b_tilde_n = 0 is implemented")


# ---------------------------------------------------------------------------
# joint limit cdf

def joint_limit_cdf(model, k, v1, v2, quad=None):
    """Joint limit cdf of ``(V1 / n, V2 / n)``; returns ``(value, error_estimate)``."""
    _extremal(model)
    quad = quad or QuadratureConfig()
    k = int(k)
    if k < 1:
        raise DomainError("k must be at least 1")
    v1 = float(v1)
    v2 = float(v2)
    if not (v1 > 0 and v2 > 0):
        raise DomainError("v1 and v2 must be positive")
    log_kfact = gammaln(k + 1.0)

    if quad.substitution is Substitution.RATIONAL_T:
        def integrand(x):
            log_h1, log_h2 = _log_h1_h2(model, v1, v2, x)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                expo = k * log_h1 + log_h2 - (k + 2.0) * np.log(x) - 1.0 / x - log_kfact
            return np.where(expo > _LOG_FLOOR, np.exp(expo), 0.0)
        marks = (1.0 / (k + 2.0), v1, v2)
    else:
        def integrand(u):
            with np.errstate(divide="ignore"):
                x = 1.0 / u
            log_h1, log_h2 = _log_h1_h2(model, v1, v2, x)
            with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
                expo = k * log_h1 + log_h2 + k * np.log(u) - u - log_kfact
            return np.where(expo > _LOG_FLOOR, np.exp(expo), 0.0)
        marks = (float(k), 1.0 / v1, 1.0 / v2)
    value, err = integrate_positive_axis(integrand, quad, breakpoints=marks)
    return min(max(value, 0.0), 1.0), err


def limit_surface(model, k, grid, quad=None, strict=True):
    """Evaluate :func:`joint_limit_cdf` on a sequence of ``(v1, v2)`` points.

    With ``strict=False`` quadrature failures are recorded as error ``-1``
    with the best estimate kept as the value.
    """
    quad = quad or QuadratureConfig()
    grid = np.asarray(grid, dtype=float).reshape(-1, 2)
    values = np.empty(len(grid))
    errors = np.empty(len(grid))
    for i, (a, b) in enumerate(grid):
        try:
            values[i], errors[i] = joint_limit_cdf(model, k, a, b, quad)
        except QuadratureError as exc:
            if strict:
                raise
            values[i], errors[i] = exc.value, -1.0
    return LimitSurface(grid, values, errors, Provenance.ASYMPTOTIC, model, int(k),
                        None, quad.abs_tol)


# ---------------------------------------------------------------------------
# finite-sample oracle

_BETA_MARKS = (1e-12, 1e-8, 1e-5, 1e-3, 0.02, 0.1, 0.3, 0.5, 0.7, 0.9, 0.98,
               1 - 1e-3, 1 - 1e-5, 1 - 1e-8)


def finite_sample_cdf(model, n, k, v1, v2, quad=None, scale=None):
    """Exact ``P(V1 <= v1, V2 <= v2)`` for samples of size ``n``.

    Conditions on the ``(n-k)``-th X order statistic and integrates
    ``F1^k(v1|x) F2^(n-k-1)(v2|x) F3(v2|x)`` against its density, written in
    the tail probability ``p = P(X > x)`` where it is Beta(k+1, n-k).
    ``(v1, v2)`` are on ``scale`` (default: the model's working scale).
    Returns ``(value, error_estimate)``.
    """
    quad = quad or QuadratureConfig()
    n = int(n)
    k = int(k)
    if not 1 <= k <= n - 1:
        raise DomainError(f"k={k} must lie in [1, n-1] for n={n}")
    working = model.working_scale
    scale = working if scale is None else Scale(scale)
    v1 = float(models.marginal_transform(model, v1, scale, working))
    v2 = float(models.marginal_transform(model, v2, scale, working))
    if working is Scale.UNIT_FRECHET and not (v1 > 0 and v2 > 0):
        raise DomainError("v1 and v2 must be positive on the Frechet scale")
    m = n - k - 1
    log_norm = gammaln(n + 1.0) - gammaln(k + 1.0) - gammaln(n - k)

    def integrand(p):
        x = np.asarray(models.marginal_isf(model, p))
        _, log_f2, f3 = models.log_conditionals(model, x, v2)
        log_f1, _, _ = models.log_conditionals(model, x, v1)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            expo = (log_norm + k * np.log(p) + m * np.log1p(-p)
                    + k * log_f1 + np.log(f3))
            if m:
                expo = expo + m * log_f2
        expo = np.where(np.isnan(expo), -np.inf, expo)
        return np.where(expo > _LOG_FLOOR, np.exp(expo), 0.0)

    marks = stats.beta.ppf(_BETA_MARKS, k + 1, n - k)
    value, err = gauss_kronrod(integrand, 0.0, 1.0, quad.abs_tol, quad.rel_tol,
                               quad.max_subdivisions, breakpoints=marks)
    return min(max(value, 0.0), 1.0), err


def finite_sample_surface(model, n, k, grid, quad=None, strict=True, scale=None):
    quad = quad or QuadratureConfig()
    grid = np.asarray(grid, dtype=float).reshape(-1, 2)
    values = np.empty(len(grid))
    errors = np.empty(len(grid))
    for i, (a, b) in enumerate(grid):
        try:
            values[i], errors[i] = finite_sample_cdf(model, n, k, a, b, quad, scale)
        except QuadratureError as exc:
            if strict:
                raise
            values[i], errors[i] = exc.value, -1.0
    return LimitSurface(grid, values, errors, Provenance.FINITE_SAMPLE, model, int(k),
                        int(n), quad.abs_tol)


# ---------------------------------------------------------------------------
# surface providers for the empirical validation

def limit_cdf_provider(model, k, quad=None):
    """Callable ``(v1, v2) -> cdf`` on the rescaled axes, backed by the joint limit."""
    quad = quad or QuadratureConfig()

    def provider(v1, v2):
        v1, v2 = np.broadcast_arrays(np.asarray(v1, float), np.asarray(v2, float))
        out = np.array([joint_limit_cdf(model, k, a, b, quad)[0]
                        for a, b in zip(v1.ravel(), v2.ravel())])
        return out.reshape(v1.shape)

    return provider


def finite_sample_provider(model, n, k, quad=None, scaling=(1.0, 1.0)):
    """Callable on rescaled axes backed by :func:`finite_sample_cdf`.

    ``scaling`` holds the divisors that were applied to raw ``(V1, V2)``.
    """
    quad = quad or QuadratureConfig()
    s1, s2 = scaling

    def provider(v1, v2):
        v1, v2 = np.broadcast_arrays(np.asarray(v1, float), np.asarray(v2, float))
        out = np.array([finite_sample_cdf(model, n, k, a * s1, b * s2, quad)[0]
                        for a, b in zip(v1.ravel(), v2.ravel())])
        return out.reshape(v1.shape)

    return provider
