import math

import numpy as np
import pytest

from tailcord import models as m
from tailcord.errors import DomainError, PrecisionError
from tailcord.models import ModelSpec, Scale
from tailcord.sampler import (SeedSpec, sample_model, sample_positive_stable,
                              sample_tail_conditioned_gaussian)

SEED = 20240917


def _within_3_sigma(hits, p):
    n = hits.size
    return abs(hits.mean() - p) <= 3 * math.sqrt(p * (1 - p) / n)


def test_positive_stable_laplace_transform():
    s = sample_positive_stable(SeedSpec(SEED, 1), 0.5, 10 ** 5)
    assert abs(np.mean(np.exp(-s)) - math.exp(-1.0)) <= 0.01


def test_positive_stable_near_one_degenerates():
    s = sample_positive_stable(SeedSpec(SEED, 2), 0.999, 10 ** 4)
    assert 0.8 <= np.median(s) <= 1.25


def test_positive_stable_domain():
    for g in (0.0, 1.0, 1.2):
        with pytest.raises(DomainError):
            sample_positive_stable(SeedSpec(SEED), g, 10)


def test_determinism_and_stream_independence(clayton):
    a = sample_model(clayton, 1000, SeedSpec(SEED, 3))
    b = sample_model(clayton, 1000, SeedSpec(SEED, 3))
    assert np.array_equal(a.xs, b.xs) and np.array_equal(a.ys, b.ys)
    g = ModelSpec.gaussian(0.5)
    x0 = sample_model(g, 10 ** 5, SeedSpec(SEED, 0)).xs
    x1 = sample_model(g, 10 ** 5, SeedSpec(SEED, 1)).xs
    assert abs(np.corrcoef(x0, x1)[0, 1]) < 0.01


def test_seed_range():
    with pytest.raises(ValueError):
        SeedSpec(-1)
    with pytest.raises(ValueError):
        SeedSpec(1, 2 ** 64)


def test_logistic_marginal_and_joint(logistic):
    b = sample_model(logistic, 10 ** 6, SeedSpec(SEED, 4))
    assert b.scale is Scale.UNIT_FRECHET
    assert abs(np.mean(b.xs <= 1) - math.exp(-1)) <= 0.003
    assert abs(np.mean((b.xs <= 1) & (b.ys <= 1)) - math.exp(-math.sqrt(2))) <= 0.003
    for x, y in [(0.5, 2.0), (1.0, 3.0), (4.0, 0.7), (2.0, 2.0)]:
        assert _within_3_sigma((b.xs <= x) & (b.ys <= y), m.joint_cdf(logistic, x, y))


def test_clayton_survival_copula(clayton):
    b = sample_model(clayton, 10 ** 6, SeedSpec(SEED, 5))
    assert b.scale is Scale.PARETO_LOMAX
    s1 = (1 + b.xs) ** -clayton.nu
    s2 = (1 + b.ys) ** -clayton.nu
    p = (2 * 0.5 ** -2.0 - 1) ** -0.5
    assert _within_3_sigma((s1 > 0.5) & (s2 > 0.5), p)
    assert _within_3_sigma(s1 > 0.5, 0.5)


def test_gaussian_correlation():
    b = sample_model(ModelSpec.gaussian(0.5), 10 ** 6, SeedSpec(SEED, 6))
    assert abs(np.corrcoef(b.xs, b.ys)[0, 1] - 0.5) <= 0.005


def test_tail_conditioning():
    u = math.log(1e5)
    b = sample_tail_conditioned_gaussian(0.5, u, 10 ** 6, SeedSpec(SEED, 7))
    assert b.scale is Scale.UNIT_EXPONENTIAL
    assert np.all(b.xs > u)
    assert abs(np.mean(b.xs - u) - 1.0) <= 0.01


def test_zero_threshold_is_unconditional():
    b = sample_tail_conditioned_gaussian(0.5, 0.0, 10 ** 5, SeedSpec(SEED, 8))
    # unit exponential marginals, Gaussian dependence
    assert abs(np.mean(b.ys) - 1.0) < 0.02
    xn = -m.marginal_transform(None, b.xs, Scale.UNIT_EXPONENTIAL, Scale.STANDARD_NORMAL)
    yn = -m.marginal_transform(None, b.ys, Scale.UNIT_EXPONENTIAL, Scale.STANDARD_NORMAL)
    assert abs(np.corrcoef(xn, yn)[0, 1] - 0.5) < 0.02


def test_precision_guard():
    with pytest.raises(PrecisionError):
        sample_tail_conditioned_gaussian(0.5, 700.0, 10, SeedSpec(SEED))
