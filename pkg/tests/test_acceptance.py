"""Acceptance checks, one per criterion, each printing a single PASS/FAIL line.

Seeds below were fixed before any run and are not tuned.  Run with
``pytest tests/test_acceptance.py -v`` or ``python3 tests/test_acceptance.py``.
"""
import math
import sys

import numpy as np
import pytest

from tailcord import asymptotics as A
from tailcord import gaussian_norming as G
from tailcord import models as m
from tailcord.concomitants import run_replicates, sample_split_maxima
from tailcord.empirics import lambda_u_hat, validate_against_limit
from tailcord.models import ModelSpec
from tailcord.quadrature import QuadratureConfig
from tailcord.sampler import SeedSpec, sample_model, sample_positive_stable

DESK_SEED = 12345
CLAYTON = ModelSpec.survival_clayton(2.0)
LOGISTIC = ModelSpec.logistic(0.5)


def _line(tag, ok, detail):
    return f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}"


def _emit(capsys, tag, ok, detail):
    text = _line(tag, ok, detail)
    if capsys is None:
        print(text)
    else:
        with capsys.disabled():
            print("\n" + text)
    return ok


def _desk_validation(model):
    records = run_replicates(model, 10 ** 4, [10], 1000, DESK_SEED, parallelism_hint=4)
    return validate_against_limit(records, A.limit_cdf_provider(model, 10), 10)


def check_1(capsys=None):
    rep = _desk_validation(CLAYTON)
    return _emit(capsys, "C1 survival Clayton desk validation", rep.max_abs_error <= 0.03,
                 f"max_abs_error={rep.max_abs_error:.5f} (bound 0.03), "
                 f"mean={rep.mean_abs_error:.5f}")


def check_2(capsys=None):
    rep = _desk_validation(LOGISTIC)
    return _emit(capsys, "C2 logistic desk validation", rep.max_abs_error <= 0.03,
                 f"max_abs_error={rep.max_abs_error:.5f} (bound 0.03), "
                 f"mean={rep.mean_abs_error:.5f}")


def check_3(capsys=None):
    n, k, count = 200, 5, 200_000
    v1, v2 = sample_split_maxima(CLAYTON, n, k, count, DESK_SEED)
    levels = n * np.array([0.3, 0.6, 1.2, 3.0, 10.0])
    worst = 0.0
    for a in levels:
        for b in levels:
            p = A.finite_sample_cdf(CLAYTON, n, k, a, b)[0]
            worst = max(worst, abs(p - np.mean((v1 <= a) & (v2 <= b))))
    return _emit(capsys, "C3 finite-sample oracle vs direct Monte Carlo", worst <= 0.01,
                 f"max gap over 5x5 grid={worst:.5f} (bound 0.01)")


def check_4(capsys=None):
    quad = QuadratureConfig(abs_tol=1e-13, rel_tol=1e-13)
    gaps = {}
    for name, model in (("clayton", CLAYTON), ("logistic", LOGISTIC)):
        for k in (1, 10):
            gaps[(name, k)] = abs(A.joint_limit_cdf(model, k, 1e6, 1e6, quad)[0] - 1.0)
    worst = max(gaps.values())
    return _emit(capsys, "C4 normalisation at (1e6, 1e6)", worst <= 1e-6,
                 f"max |F - 1|={worst:.9e} (bound 1e-6)")


def check_5(capsys=None):
    g = np.geomspace(0.01, 100.0, 20)
    y, x = np.meshgrid(g, g)
    errs = [
        np.max(np.abs(A.H1(CLAYTON, y, x) - A.H1_closed(CLAYTON, y, x))),
        np.max(np.abs(A.H1(LOGISTIC, y, x) - A.H1_closed(LOGISTIC, y, x))),
        np.max(np.abs(A.H2(LOGISTIC, y, x) - A.H2_closed(LOGISTIC, y, x))),
        np.max(np.abs(A.H2(CLAYTON, g, 1.0) - A.H2_closed(CLAYTON, g, 1.0))),
    ]
    worst = max(errs)
    return _emit(capsys, "C5 generic vs closed-form H1/H2", worst <= 1e-10,
                 f"max gap={worst:.3e} (bound 1e-10)")


def check_6(capsys=None):
    out = []
    for model, target, stream in ((CLAYTON, 2 ** -0.5, 0), (LOGISTIC, 2 - math.sqrt(2), 1)):
        est = lambda_u_hat(sample_model(model, 10 ** 6, SeedSpec(DESK_SEED, stream)), 0.999)
        out.append((est, target))
    ok = all(abs(e - t) <= 0.05 for e, t in out)
    detail = ", ".join(f"{e:.4f} vs {t:.4f}" for e, t in out)
    return _emit(capsys, "C6 empirical tail dependence", ok, detail + " (bound 0.05)")


def check_7(capsys=None):
    worst = 0.0
    for i, gam in enumerate((0.3, 0.5, 0.8)):
        s = sample_positive_stable(SeedSpec(DESK_SEED, i), gam, 10 ** 5)
        for t in (0.5, 1.0, 2.0):
            worst = max(worst, abs(np.mean(np.exp(-t * s)) - math.exp(-t ** gam)))
    return _emit(capsys, "C7 positive-stable Laplace transform", worst <= 0.01,
                 f"max gap={worst:.5f} (bound 0.01)")


def check_8(capsys=None):
    b_n = G.norming_constants(1e5, 0.5).b_n
    rep = G.validate_gaussian_limit(0.5, 20.0, [2.0], 10 ** 6, DESK_SEED)
    pt = rep.points[0]
    ok_b = abs(b_n - 4.28019) <= 1e-4
    ok_tail = pt.rel_gap <= 0.25
    return _emit(capsys, "C8 Gaussian norming", ok_b and ok_tail,
                 f"b_n(1e5)={b_n:.6f} ({'ok' if ok_b else 'off'}); "
                 f"tail freq={pt.empirical:.5f} vs limit {pt.limit:.5f}, "
                 f"rel gap={pt.rel_gap:.3f} (bound 0.25)")


def check_9(capsys=None):
    worst = 0.0
    h = 1e-5
    grid = np.geomspace(0.3, 5.0, 8)
    for model in (CLAYTON, LOGISTIC, ModelSpec.gaussian(0.5)):
        for x in grid:
            for y in grid:
                xx, yy = (x - 1.5, y - 1.5) if model.family is m.Family.GAUSSIAN else (x, y)
                fd = (m.joint_cdf(model, xx + h, yy) - m.joint_cdf(model, xx - h, yy)) / (2 * h)
                worst = max(worst, abs(m.conditional_F3(model, yy, xx) - fd / m.marginal_pdf(model, xx)))
                if model.family is not m.Family.GAUSSIAN:
                    hx = h * x
                    rfd = (m.r_limit(model, x + hx, y) - m.r_limit(model, x - hx, y)) / (2 * hx)
                    worst = max(worst, abs(m.r_limit_dx(model, x, y) - rfd))
    return _emit(capsys, "C9 analytic F3 and dr/dx vs finite differences", worst <= 1e-6,
                 f"max gap={worst:.3e} (bound 1e-6)")


def check_10(capsys=None):
    ks = [1, 50, 500]
    recs = run_replicates(CLAYTON, 10 ** 4, ks, 1000, DESK_SEED, parallelism_hint=4)
    v2 = np.array([[r.split(k).v2 for k in ks] for r in recs])
    per_rep = float(np.mean(np.all(np.diff(v2, axis=1) <= 0, axis=1)))
    med = np.median(v2, axis=0)
    ok = per_rep == 1.0 and med[0] > med[1] > med[2]
    return _emit(capsys, "C10 V2 nonincreasing in k", ok,
                 f"replicates monotone={per_rep:.3f}, medians={np.round(med, 2).tolist()}")


CHECKS = [check_1, check_2, check_3, check_4, check_5, check_6, check_7, check_8, check_9, check_10]


@pytest.mark.parametrize("check", CHECKS, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(check, capsys):
    assert check(capsys)


if __name__ == "__main__":
    results = [c() for c in CHECKS]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
