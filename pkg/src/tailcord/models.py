"""Exact descriptions of the three bivariate families.

Families 1 and 2 are evaluated on the unit-Frechet scale (cdf ``exp(-1/x)``),
family 3 on the standard-normal scale.  All functions broadcast over numpy
arrays and return plain floats for scalar input.

Notation used in comments: ``s(x) = 1 - exp(-1/x)`` is the unit-Frechet
survival function, ``V`` the logistic exponent measure.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import log_ndtr, ndtr, ndtri

from .bvn import bvnu
from .errors import (
    ConditioningError,
    DomainError,
    InvalidModelError,
    UnsupportedFamilyError,
)

#: Smallest conditioning probability accepted by the public conditionals.
GUARD = 1e-300
#: Smallest tail probability handed to an inverse cdf.
_P_FLOOR = 1e-300


class Family(enum.Enum):
    SURVIVAL_CLAYTON_PARETO = "survival_clayton"
    LOGISTIC_FRECHET = "logistic"
    GAUSSIAN = "gaussian"


class Scale(enum.Enum):
    PARETO_LOMAX = "pareto"
    UNIT_FRECHET = "frechet"
    STANDARD_NORMAL = "normal"
    UNIT_EXPONENTIAL = "exponential"


@dataclass(frozen=True)
class ModelSpec:
    """A bivariate family with its parameters.

    Use the ``survival_clayton``, ``logistic`` and ``gaussian``
    constructors rather than filling fields by hand.
    """

    family: Family
    theta: Optional[float] = None
    nu: Optional[float] = None
    gamma: Optional[float] = None
    rho: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.family, Family):
            try:
                object.__setattr__(self, "family", Family(self.family))
            except ValueError as exc:
                raise InvalidModelError(f"unknown family {self.family!r}") from exc
        required = {
            Family.SURVIVAL_CLAYTON_PARETO: {"theta", "nu"},
            Family.LOGISTIC_FRECHET: {"gamma"},
            Family.GAUSSIAN: {"rho"},
        }[self.family]
        for name in ("theta", "nu", "gamma", "rho"):
            value = getattr(self, name)
            if (value is not None) != (name in required):
                state = "requires" if name in required else "does not take"
                raise InvalidModelError(f"{self.family.value} {state} parameter {name}")
            if value is not None:
                object.__setattr__(self, name, float(value))
        if self.family is Family.SURVIVAL_CLAYTON_PARETO:
            if not (self.theta > 0 and self.nu > 0):
                raise InvalidModelError("theta and nu must be positive")
        elif self.family is Family.LOGISTIC_FRECHET:
            if not 0 < self.gamma < 1:
                raise InvalidModelError("gamma must lie in (0, 1)")
        elif not 0 <= self.rho < 1:
            # rho = 0 is admitted as the independence reference model.
            raise InvalidModelError("rho must lie in [0, 1)")

    @classmethod
    def survival_clayton(cls, theta, nu=1.0):
        return cls(Family.SURVIVAL_CLAYTON_PARETO, theta=theta, nu=nu)

    @classmethod
    def logistic(cls, gamma):
        return cls(Family.LOGISTIC_FRECHET, gamma=gamma)

    @classmethod
    def gaussian(cls, rho):
        return cls(Family.GAUSSIAN, rho=rho)

    @property
    def working_scale(self) -> Scale:
        if self.family is Family.GAUSSIAN:
            return Scale.STANDARD_NORMAL
        return Scale.UNIT_FRECHET

    @property
    def native_scale(self) -> Scale:
        """Scale on which the sampler produces draws."""
        if self.family is Family.SURVIVAL_CLAYTON_PARETO:
            return Scale.PARETO_LOMAX
        return self.working_scale

    def to_dict(self):
        out = {"family": self.family.value}
        for name in ("theta", "nu", "gamma", "rho"):
            if getattr(self, name) is not None:
                out[name] = getattr(self, name)
        return out

    @classmethod
    def from_dict(cls, data):
        data = dict(data)
        family = Family(data.pop("family"))
        if family is Family.SURVIVAL_CLAYTON_PARETO:
            data.setdefault("nu", 1.0)
        return cls(family, **data)


@dataclass(frozen=True)
class TailSummary:
    alpha: float
    beta: float
    eta: float
    lambda_u: float
    asymptotically_dependent: bool


def _out(a):
    a = np.asarray(a, dtype=float)
    return float(a) if a.ndim == 0 else a


def _check_model(model):
    if not isinstance(model, ModelSpec):
        raise InvalidModelError(f"expected ModelSpec, got {type(model).__name__}")


def _frechet_args(*values):
    arrs = [np.asarray(v, dtype=float) for v in values]
    for a in arrs:
        if np.any(np.isnan(a)) or np.any(a < 0):
            raise DomainError("unit-Frechet arguments must be nonnegative")
    return arrs


def _normal_args(*values):
    arrs = [np.asarray(v, dtype=float) for v in values]
    for a in arrs:
        if np.any(np.isnan(a)):
            raise DomainError("normal-scale arguments must not be NaN")
    return arrs


def _args(model, *values):
    _check_model(model)
    if model.family is Family.GAUSSIAN:
        return _normal_args(*values)
    return _frechet_args(*values)


# ---------------------------------------------------------------------------
# unit-Frechet helpers (x = 0 is the lower endpoint, x = inf the upper one)

def _frechet_sf(x):
    with np.errstate(divide="ignore"):
        return -np.expm1(-1.0 / x)


def _frechet_logcdf(x):
    with np.errstate(divide="ignore"):
        return -1.0 / x


def _frechet_pdf(x):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        inv = 1.0 / x
        out = inv * inv * np.exp(-inv)
    return np.where(x > 0, np.nan_to_num(out, nan=0.0, posinf=0.0), 0.0)


def _log(x):
    with np.errstate(divide="ignore"):
        return np.log(x)


# ---------------------------------------------------------------------------
# family 1: survival Clayton on the Frechet scale

def _clayton_parts(theta, x, y):
    """Return ``(P(X>x, Y<=y), P(X<=x, Y>y), F3)`` for the survival Clayton model."""
    sx = _frechet_sf(x)
    sy = _frechet_sf(y)
    with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
        lsx = _log(sx)
        lsy = _log(sy)
        # B_x = (s(y)^-theta - 1) s(x)^theta,   B_y = (s(x)^-theta - 1) s(y)^theta
        bx = np.expm1(-theta * lsy) * np.exp(theta * lsx)
        by = np.expm1(-theta * lsx) * np.exp(theta * lsy)
        above_x = sx * -np.expm1(-np.log1p(bx) / theta)
        above_y = sy * -np.expm1(-np.log1p(by) / theta)
        f3 = -np.expm1(-(1.0 + 1.0 / theta) * np.log1p(bx))
    # Endpoint conventions: s = 0 at x = inf, s = 1 at x = 0.
    above_x = np.where(sx == 0, 0.0, np.where(sy == 0, sx, above_x))
    above_y = np.where(sy == 0, 0.0, np.where(sx == 0, sy, above_y))
    f3 = np.where(sy == 0, 1.0, np.where(sy == 1, 0.0, f3))
    return above_x, above_y, np.nan_to_num(f3, nan=1.0)


# ---------------------------------------------------------------------------
# family 2: symmetric logistic on the Frechet scale

def _logistic_excess(gamma, a, b):
    """``V(a, b) - 1/a`` computed without cancellation."""
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        z = (_log(a) - _log(b)) / gamma
        excess = np.expm1(gamma * np.logaddexp(0.0, z)) / a
    return excess


def _logistic_V(gamma, x, y):
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        return np.exp(gamma * np.logaddexp(-_log(x) / gamma, -_log(y) / gamma))


def _logistic_parts(gamma, x, y):
    dx = _logistic_excess(gamma, x, y)  # V - 1/x
    dy = _logistic_excess(gamma, y, x)  # V - 1/y
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        above_x = np.exp(_frechet_logcdf(y)) * -np.expm1(-dy)
        above_y = np.exp(_frechet_logcdf(x)) * -np.expm1(-dx)
        z = (_log(x) - _log(y)) / gamma
        log_f3 = (gamma - 1.0) * np.logaddexp(0.0, z) - dx
        f3 = np.exp(log_f3)
    above_x = np.where(y == np.inf, 0.0, np.nan_to_num(above_x, nan=0.0))
    above_y = np.where(x == np.inf, 0.0, np.nan_to_num(above_y, nan=0.0))
    f3 = np.where(y == np.inf, 1.0, np.where(y == 0, 0.0, np.nan_to_num(f3, nan=0.0)))
    return above_x, above_y, dx, f3


# ---------------------------------------------------------------------------
# marginals on the working scale

def marginal_cdf(model, x):
    (x,) = _args(model, x)
    if model.family is Family.GAUSSIAN:
        return _out(ndtr(x))
    return _out(np.exp(_frechet_logcdf(x)))


def marginal_sf(model, x):
    (x,) = _args(model, x)
    if model.family is Family.GAUSSIAN:
        return _out(ndtr(-x))
    return _out(_frechet_sf(x))


def marginal_pdf(model, x):
    (x,) = _args(model, x)
    if model.family is Family.GAUSSIAN:
        return _out(np.exp(-0.5 * x * x) / np.sqrt(2.0 * np.pi))
    return _out(_frechet_pdf(x))


def marginal_isf(model, p):
    """Working-scale value whose survival probability is ``p``."""
    _check_model(model)
    p = np.asarray(p, dtype=float)
    if model.family is Family.GAUSSIAN:
        return _out(-ndtri(p))
    with np.errstate(divide="ignore"):
        return _out(-1.0 / np.log1p(-p))


# ---------------------------------------------------------------------------
# joint law

def joint_survival(model, x, y):
    """``P(X > x, Y > y)`` on the model's working scale."""
    x, y = _args(model, x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        above_x, _, _ = _clayton_parts(model.theta, x, y)
        return _out(np.clip(_frechet_sf(x) - above_x, 0.0, 1.0))
    if model.family is Family.LOGISTIC_FRECHET:
        above_x, _, _, _ = _logistic_parts(model.gamma, x, y)
        return _out(np.clip(_frechet_sf(x) - above_x, 0.0, 1.0))
    return _out(bvnu(x, y, model.rho))


def joint_cdf(model, x, y):
    """``P(X <= x, Y <= y)`` on the model's working scale."""
    x, y = _args(model, x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        _, above_y, _ = _clayton_parts(model.theta, x, y)
        return _out(np.clip(np.exp(_frechet_logcdf(x)) - above_y, 0.0, 1.0))
    if model.family is Family.LOGISTIC_FRECHET:
        return _out(np.exp(-_logistic_V(model.gamma, x, y)))
    return _out(bvnu(-x, -y, model.rho))


def log_conditionals(model, x, y):
    """Unguarded ``(log F1, log F2, F3)`` of ``y`` given ``x``.

    Meant for integrands: no conditioning checks, values at degenerate
    conditioning events are whatever the limiting formulas produce.
    """
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        above_x, above_y, f3 = _clayton_parts(model.theta, x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_f1 = _log(above_x / _frechet_sf(x))
            log_f2 = np.log1p(-above_y / np.exp(_frechet_logcdf(x)))
        return log_f1, log_f2, f3
    if model.family is Family.LOGISTIC_FRECHET:
        above_x, _, dx, f3 = _logistic_parts(model.gamma, x, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_f1 = _log(above_x / _frechet_sf(x))
        return log_f1, -dx, f3
    rho = model.rho
    with np.errstate(divide="ignore", invalid="ignore"):
        log_f1 = _log(bvnu(x, -y, -rho)) - log_ndtr(-x)
        log_f2 = np.log1p(-bvnu(-x, y, -rho) / ndtr(x))
    f3 = ndtr((y - rho * x) / np.sqrt(1.0 - rho * rho))
    return log_f1, log_f2, f3


def conditional_F1(model, y, x):
    """``P(Y <= y | X > x)``."""
    x, y = _args(model, x, y)
    if np.any(np.asarray(marginal_sf(model, x)) < GUARD):
        raise ConditioningError("P(X > x) is below the guard threshold")
    log_f1, _, _ = log_conditionals(model, x, y)
    return _out(np.clip(np.exp(log_f1), 0.0, 1.0))


def conditional_F2(model, y, x):
    """``P(Y <= y | X <= x)``."""
    x, y = _args(model, x, y)
    if np.any(np.asarray(marginal_cdf(model, x)) < GUARD):
        raise ConditioningError("P(X <= x) is below the guard threshold")
    _, log_f2, _ = log_conditionals(model, x, y)
    return _out(np.clip(np.exp(log_f2), 0.0, 1.0))


def conditional_F3(model, y, x):
    """``P(Y <= y | X = x)`` from the analytic partial derivative of the joint cdf."""
    x, y = _args(model, x, y)
    _, _, f3 = log_conditionals(model, x, y)
    return _out(np.clip(f3, 0.0, 1.0))


# ---------------------------------------------------------------------------
# slowly varying part and its limits

def _require_extremal(model):
    _check_model(model)
    if model.family is Family.GAUSSIAN:
        raise UnsupportedFamilyError(
            "the Gaussian family has no nondegenerate slowly varying limit")


def _positive(*values):
    arrs = [np.asarray(v, dtype=float) for v in values]
    for a in arrs:
        if np.any(~(a > 0)):
            raise DomainError("arguments must be strictly positive")
    return arrs


def bsv_L(model, x, y):
    """Slowly varying factor with ``P(X>x, Y>y) ~ L(x, y) x^-1/2 y^-1/2``.

    For the survival Clayton family this is
    ``(x^theta + y^theta - 1)^(-1/theta) (xy)^(1/2)``, valid where
    ``x^theta + y^theta > 1``.
    """
    _require_extremal(model)
    x, y = _positive(x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        t = model.theta
        base = x ** t + y ** t - 1.0
        if np.any(base <= 0):
            raise DomainError("x^theta + y^theta must exceed 1")
        return _out(base ** (-1.0 / t) * np.sqrt(x * y))
    v = _logistic_V(model.gamma, x, y)
    return _out((x + y) / np.sqrt(x * y) - np.sqrt(x * y) * v)


def ctilde(model, x, y):
    """Limit of ``L(n x, n y)`` as ``n -> inf``; homogeneous of degree 0."""
    _require_extremal(model)
    x, y = _positive(x, y)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        t = model.theta
        # (x^t + y^t)^(-1/t) sqrt(xy) = sqrt(y/x) (1 + (y/x)^t)^(-1/t)
        ratio = y / x
        return _out(np.sqrt(ratio) * np.exp(-np.logaddexp(0.0, t * np.log(ratio)) / t))
    v = _logistic_V(model.gamma, x, y)
    return _out((x + y) / np.sqrt(x * y) - np.sqrt(x * y) * v)


def ctilde_dx(model, x, y):
    """Analytic partial derivative of :func:`ctilde` in ``x``."""
    _require_extremal(model)
    x, y = _positive(x, y)
    c = np.asarray(ctilde(model, x, y))
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        t = model.theta
        return _out(c / x * (0.5 - 1.0 / (1.0 + (y / x) ** t)))
    g = model.gamma
    v = _logistic_V(g, x, y)
    sxy = np.sqrt(x * y)
    tail = (1.0 + (x / y) ** (1.0 / g)) ** (g - 1.0)
    return _out(0.5 / sxy - 0.5 * np.sqrt(y) * x ** -1.5 - 0.5 * np.sqrt(y / x) * v
                + sxy * tail / (x * x))


def r_limit(model, x, y):
    """Normalised limit ``r = ctilde / lambda_u``; equals 1 on the diagonal."""
    return _out(np.asarray(ctilde(model, x, y)) / tail_summary(model).lambda_u)


def r_limit_dx(model, x, y):
    return _out(np.asarray(ctilde_dx(model, x, y)) / tail_summary(model).lambda_u)


def tail_summary(model):
    """Tail-dependence summary of the family.

    For the Gaussian family ``eta = (1 + rho) / 2`` (the classical
    joint-tail exponent of the bivariate normal) split evenly between
    ``alpha`` and ``beta``.
    """
    _check_model(model)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        lam = 2.0 ** (-1.0 / model.theta)
        return TailSummary(0.5, 0.5, 1.0, lam, True)
    if model.family is Family.LOGISTIC_FRECHET:
        lam = 2.0 - 2.0 ** model.gamma
        return TailSummary(0.5, 0.5, 1.0, lam, lam > 0)
    eta = 0.5 * (1.0 + model.rho)
    half = 1.0 / (1.0 + model.rho)
    return TailSummary(half, half, eta, 0.0, False)


# ---------------------------------------------------------------------------
# marginal transforms

def _scale_probs(model, value, scale):
    """Return ``(cdf, sf)`` of ``value`` on ``scale``."""
    v = np.asarray(value, dtype=float)
    if np.any(np.isnan(v)):
        raise DomainError("NaN input")
    if scale is Scale.STANDARD_NORMAL:
        return ndtr(v), ndtr(-v)
    if np.any(v < 0):
        raise DomainError(f"{scale.value} values must be nonnegative")
    with np.errstate(divide="ignore"):
        if scale is Scale.UNIT_FRECHET:
            return np.exp(-1.0 / v), -np.expm1(-1.0 / v)
        if scale is Scale.UNIT_EXPONENTIAL:
            return -np.expm1(-v), np.exp(-v)
    if model is None or model.nu is None:
        raise InvalidModelError("Pareto-Lomax scale needs a model with nu")
    log_sf = -model.nu * np.log1p(v)
    return -np.expm1(log_sf), np.exp(log_sf)


def _scale_inverse(model, cdf, sf, scale):
    use_sf = sf < 0.5
    c = np.maximum(cdf, _P_FLOOR)
    s = np.maximum(sf, _P_FLOOR)
    with np.errstate(divide="ignore", invalid="ignore"):
        if scale is Scale.STANDARD_NORMAL:
            return np.where(use_sf, -ndtri(s), ndtri(c))
        if scale is Scale.UNIT_FRECHET:
            return np.where(use_sf, -1.0 / np.log1p(-s), -1.0 / np.log(c))
        if scale is Scale.UNIT_EXPONENTIAL:
            return np.where(use_sf, -np.log(s), -np.log1p(-c))
        if model is None or model.nu is None:
            raise InvalidModelError("Pareto-Lomax scale needs a model with nu")
        nu = model.nu
        return np.where(use_sf, np.expm1(-np.log(s) / nu), np.expm1(-np.log1p(-c) / nu))


def marginal_transform(model, value, from_scale, to_scale):
    """Map ``value`` between marginal scales by probability-integral transform.

    The smaller of the cdf and survival probability is carried through so
    both tails keep relative precision.  ``model`` supplies ``nu`` for the
    Pareto-Lomax scale and may be ``None`` otherwise.
    """
    from_scale = Scale(from_scale)
    to_scale = Scale(to_scale)
    if from_scale is to_scale:
        _scale_probs(model, value, from_scale)
        return _out(value)
    cdf, sf = _scale_probs(model, value, from_scale)
    return _out(_scale_inverse(model, cdf, sf, to_scale))
