"""Empirical cdfs, the tail-dependence estimate and error summaries."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .concomitants import limit_scaling
from .errors import EstimationError, ValidationError

_CHUNK = 2048
MARGINAL_GRID_POINTS = 100
MARGINAL_FAR = 1e6


def ecdf(points, eval_at):
    """Univariate ecdf ``#{x_i <= t} / R`` at each ``t``."""
    pts = np.sort(np.asarray(points, dtype=float).ravel())
    if pts.size == 0:
        raise ValueError("need at least one point")
    return np.searchsorted(pts, np.asarray(eval_at, dtype=float), side="right") / pts.size


def ecdf_bivariate(points, eval_at=None):
    """Bivariate ecdf ``#{v1_i <= a, v2_i <= b} / R``.

    ``points`` and ``eval_at`` are ``(m, 2)`` arrays; ``eval_at`` defaults
    to the points themselves.  Plain O(R M) counting, done in chunks.
    """
    pts = np.asarray(points, dtype=float).reshape(-1, 2)
    if pts.shape[0] == 0:
        raise ValueError("need at least one point")
    at = pts if eval_at is None else np.asarray(eval_at, dtype=float).reshape(-1, 2)
    out = np.empty(at.shape[0])
    for lo in range(0, at.shape[0], _CHUNK):
        blk = at[lo:lo + _CHUNK]
        hit = (pts[None, :, 0] <= blk[:, None, 0]) & (pts[None, :, 1] <= blk[:, None, 1])
        out[lo:lo + _CHUNK] = hit.sum(axis=1)
    return out / pts.shape[0]


def lambda_u_hat(batch, q):
    """Empirical ``P(Y > y_q | X > x_q)`` at the ``ceil(qR)``-th order statistics."""
    if not 0 < q < 1:
        raise ValueError("q must lie in (0, 1)")
    xs = np.asarray(batch.xs)
    ys = np.asarray(batch.ys)
    r = xs.size
    idx = math.ceil(q * r) - 1
    if idx < 0 or idx >= r:
        raise EstimationError("q leaves an empty conditioning set")
    x_q = np.partition(xs, idx)[idx]
    y_q = np.partition(ys, idx)[idx]
    above = xs > x_q
    count = int(above.sum())
    if count == 0:
        raise EstimationError(f"no sample exceeds the {q} quantile of X")
    return float(np.sum(above & (ys > y_q)) / count)


@dataclass(frozen=True)
class ValidationReport:
    point_errors: np.ndarray  # rows (v1, v2, empirical, theoretical, abs_error)
    max_abs_error: float
    mean_abs_error: float
    quartiles: tuple
    marginal_l1_v1: np.ndarray  # rows (v1, l1_error)
    marginal_l1_v2: np.ndarray
    metadata: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "point_errors": self.point_errors.tolist(),
            "max_abs_error": self.max_abs_error,
            "mean_abs_error": self.mean_abs_error,
            "quartiles": list(self.quartiles),
            "marginal_l1_v1": self.marginal_l1_v1.tolist(),
            "marginal_l1_v2": self.marginal_l1_v2.tolist(),
            "metadata": self.metadata,
        }


def _marginal_curve(sample, grid, theory):
    # mean |ecdf - theory| over the grid, reported as a running curve
    diff = np.abs(ecdf(sample, grid) - theory)
    return np.column_stack([grid, diff]), float(diff.mean())


def validate_against_limit(records, surface_provider: Callable, k, with_marginals=True):
    """Compare the ecdf of rescaled ``(V1, V2)`` with ``surface_provider``.

    ``surface_provider(v1, v2)`` takes arrays on the rescaled axes.  The
    marginal curves use a 100-point geometric grid spanning the sample,
    with the other argument sent to 1e6.
    """
    records = list(records)
    if not records:
        raise ValidationError("no records")
    first = records[0]
    for r in records:
        if r.model != first.model or r.n != first.n:
            raise ValidationError("records mix models or sample sizes")
    try:
        raw = np.array([(r.split(k).v1, r.split(k).v2) for r in records], dtype=float)
    except KeyError as exc:
        raise ValidationError(f"k={k} missing from some record") from exc
    s1, s2 = limit_scaling(first.model, first.n)
    pts = raw / np.array([s1, s2])
    # lexicographic order makes the report independent of record order
    pts = pts[np.lexsort((pts[:, 1], pts[:, 0]))]

    emp = ecdf_bivariate(pts)
    theo = np.asarray(surface_provider(pts[:, 0], pts[:, 1]), dtype=float)
    err = np.abs(emp - theo)
    point_errors = np.column_stack([pts, emp, theo, err])

    l1_v1 = np.empty((0, 2))
    l1_v2 = np.empty((0, 2))
    l1_means = {}
    if with_marginals:
        curves = []
        for col in (0, 1):
            lo, hi = pts[:, col].min(), pts[:, col].max()
            if lo > 0 and hi > lo:
                grid = np.geomspace(lo, hi, MARGINAL_GRID_POINTS)
            else:
                grid = np.linspace(lo, hi if hi > lo else lo + 1.0, MARGINAL_GRID_POINTS)
            far = np.full_like(grid, MARGINAL_FAR)
            theory = surface_provider(grid, far) if col == 0 else surface_provider(far, grid)
            curve, mean = _marginal_curve(pts[:, col], grid, np.asarray(theory, dtype=float))
            curves.append(curve)
            l1_means["v1" if col == 0 else "v2"] = mean
        l1_v1, l1_v2 = curves

    meta = {
        "model": first.model.to_dict(),
        "n": int(first.n),
        "k": int(k),
        "replicate_count": len(records),
        "seed": int(first.seed.master_seed),
        "scaling": [s1, s2],
        "marginal_l1_mean": l1_means,
    }
    q25, q50, q75 = np.quantile(err, [0.25, 0.5, 0.75])
    return ValidationReport(point_errors, float(err.max()), float(err.mean()),
                            (float(q25), float(q50), float(q75)), l1_v1, l1_v2, meta)


def ecdf_provider(records, k):
    """Surface provider built from the records' own ecdf (self-test)."""
    records = list(records)
    s1, s2 = limit_scaling(records[0].model, records[0].n)
    pts = np.array([(r.split(k).v1 / s1, r.split(k).v2 / s2) for r in records])

    def provider(v1, v2):
        v1, v2 = np.broadcast_arrays(np.asarray(v1, float), np.asarray(v2, float))
        at = np.column_stack([v1.ravel(), v2.ravel()])
        return ecdf_bivariate(pts, at).reshape(v1.shape)

    return provider
