"""Seeded, stream-splittable samplers for the three families.

Every draw is a pure function of ``(master_seed, stream_index)``: the pair is
fed to :class:`numpy.random.SeedSequence` as entropy plus spawn key, so the
stream for replicate ``r`` is available in O(1) without touching any other
stream.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import log_ndtr, ndtri

from .errors import DomainError, InvalidModelError, PrecisionError
from .models import Family, ModelSpec, Scale

_UINT64 = 2 ** 64
#: Largest exponential-scale value whose tail probability still maps to a
#: finite normal quantile with useful precision.
MAX_EXPONENTIAL = 700.0


@dataclass(frozen=True)
class SeedSpec:
    master_seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("master_seed", "stream_index"):
            value = int(getattr(self, name))
            if not 0 <= value < _UINT64:
                raise ValueError(f"{name} must be an unsigned 64-bit integer")
            object.__setattr__(self, name, value)

    def generator(self) -> np.random.Generator:
        seq = np.random.SeedSequence(self.master_seed, spawn_key=(self.stream_index,))
        return np.random.Generator(np.random.PCG64(seq))


@dataclass(frozen=True, eq=False)
class BivariateBatch:
    xs: np.ndarray
    ys: np.ndarray
    scale: Scale
    model: ModelSpec

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=float)
        if xs.ndim != 1 or xs.shape != ys.shape or xs.size < 1:
            raise ValueError("xs and ys must be 1-d arrays of equal length >= 1")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)

    def __len__(self):
        return self.xs.size


def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    if isinstance(seed, SeedSpec):
        return seed.generator()
    return SeedSpec(int(seed)).generator()


def _positive_stable(rng, gamma, count):
    # Kanter's representation of the totally skewed stable law with
    # Laplace transform exp(-t^gamma).
    u = rng.uniform(0.0, np.pi, size=count)
    w = rng.standard_exponential(size=count)
    a = np.sin(gamma * u) / np.sin(u) ** (1.0 / gamma)
    b = (np.sin((1.0 - gamma) * u) / w) ** ((1.0 - gamma) / gamma)
    return a * b


def sample_positive_stable(seed, gamma, count):
    """Draw ``count`` positive stable variates with ``E exp(-tS) = exp(-t^gamma)``."""
    if not 0 < gamma < 1:
        raise DomainError("gamma must lie in (0, 1)")
    return _positive_stable(_rng(seed), float(gamma), int(count))


def sample_model(model, n, seed):
    """Draw ``n`` i.i.d. pairs from ``model`` on its native scale.

    Survival Clayton pairs come out on the Pareto-Lomax scale, logistic
    pairs on the unit-Frechet scale and Gaussian pairs on the normal scale.
    """
    if not isinstance(model, ModelSpec):
        raise InvalidModelError("expected a ModelSpec")
    n = int(n)
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = _rng(seed)
    if model.family is Family.SURVIVAL_CLAYTON_PARETO:
        # Gamma frailty: survival probabilities (1 + E/G)^(-1/theta) follow a
        # Clayton copula; X = S^(-1/nu) - 1 is then Pareto-Lomax.
        g = rng.gamma(1.0 / model.theta, 1.0, size=n)
        e = rng.standard_exponential(size=(2, n))
        pareto = np.expm1(np.log1p(e / g) / (model.theta * model.nu))
        return BivariateBatch(pareto[0], pareto[1], Scale.PARETO_LOMAX, model)
    if model.family is Family.LOGISTIC_FRECHET:
        s = _positive_stable(rng, model.gamma, n)
        w = rng.standard_exponential(size=(2, n))
        z = (s / w) ** model.gamma
        return BivariateBatch(z[0], z[1], Scale.UNIT_FRECHET, model)
    x = rng.standard_normal(n)
    z = rng.standard_normal(n)
    y = model.rho * x + np.sqrt(1.0 - model.rho ** 2) * z
    return BivariateBatch(x, y, Scale.STANDARD_NORMAL, model)


def sample_tail_conditioned_gaussian(rho, threshold_u, count, seed):
    """Gaussian pairs on the exponential scale, conditioned on ``X_E > threshold_u``.

    The exponential marginal is memoryless, so ``X_E = threshold_u + E``
    is an exact draw from the conditional law.
    """
    if threshold_u < 0:
        raise DomainError("threshold_u must be nonnegative")
    if threshold_u >= MAX_EXPONENTIAL:
        raise PrecisionError("threshold beyond the precision of the normal quantile")
    model = ModelSpec.gaussian(rho)
    rng = _rng(seed)
    count = int(count)
    x_e = threshold_u + rng.standard_exponential(count)
    if count and x_e.max() > MAX_EXPONENTIAL:
        raise PrecisionError("a draw exceeded the representable exponential range")
    x_n = -ndtri(np.exp(-x_e))
    y_n = model.rho * x_n + np.sqrt(1.0 - model.rho ** 2) * rng.standard_normal(count)
    y_e = -log_ndtr(-y_n)
    return BivariateBatch(x_e, y_e, Scale.UNIT_EXPONENTIAL, model)
