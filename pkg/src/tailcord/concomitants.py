"""Concomitants of order statistics and the split maxima ``(V1, V2)``.

For a sample sorted by X, ``V1`` is the largest Y among the pairs carrying
the top ``k`` X values and ``V2`` the largest Y among the rest.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, TailcordError
from .models import Family, ModelSpec, Scale, marginal_transform
from .sampler import BivariateBatch, SeedSpec, sample_model


class ResourceExhaustedError(TailcordError, MemoryError):
    """The replicate harness ran out of memory; partial output was dropped."""


@dataclass(frozen=True)
class ConcomitantSplit:
    k: int
    v1: float
    v2: float
    n: int


@dataclass(frozen=True)
class ReplicateRecord:
    replicate_index: int
    splits: tuple
    seed: SeedSpec
    model: ModelSpec
    scale: Scale

    def split(self, k):
        for s in self.splits:
            if s.k == k:
                return s
        raise KeyError(k)

    @property
    def n(self):
        return self.splits[0].n


def concomitant_order(xs, ys):
    """Sort pairs by ``xs`` (stable), returning an ``(n, 2)`` array.

    Column 0 holds the X order statistics, column 1 their concomitants.
    """
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise ValueError("xs and ys must be 1-d arrays of equal length")
    if xs.size < 1:
        raise ValueError("need at least one pair")
    order = np.argsort(xs, kind="stable")
    return np.column_stack([xs[order], ys[order]])


def _check_k(k, n):
    if not 1 <= k <= n - 1:
        raise DomainError(f"k={k} must lie in [1, n-1] for n={n}")


def split_maxima(ordered_pairs, k) -> ConcomitantSplit:
    """Split maxima for a single ``k`` from the output of :func:`concomitant_order`."""
    conc = np.asarray(ordered_pairs, dtype=float)[:, 1]
    n = conc.size
    k = int(k)
    _check_k(k, n)
    return ConcomitantSplit(k, float(conc[n - k:].max()), float(conc[:n - k].max()), n)


def split_maxima_many(ordered_pairs, k_list: Sequence[int]):
    """Split maxima for several ``k`` at once via running maxima."""
    conc = np.asarray(ordered_pairs, dtype=float)[:, 1]
    n = conc.size
    for k in k_list:
        _check_k(int(k), n)
    top = np.maximum.accumulate(conc[::-1])  # top[j] = max of the last j+1
    bottom = np.maximum.accumulate(conc)  # bottom[j] = max of the first j+1
    return tuple(
        ConcomitantSplit(int(k), float(top[k - 1]), float(bottom[n - k - 1]), n)
        for k in k_list
    )


def to_working_scale(batch: BivariateBatch) -> BivariateBatch:
    """Convert a batch to the model's working scale (unit Frechet for families 1-2)."""
    target = batch.model.working_scale
    if batch.scale is target:
        return batch
    xs = marginal_transform(batch.model, batch.xs, batch.scale, target)
    ys = marginal_transform(batch.model, batch.ys, batch.scale, target)
    return BivariateBatch(np.asarray(xs), np.asarray(ys), target, batch.model)


def _one_replicate(model, n, k_list, master_seed, index):
    seed = SeedSpec(master_seed, index)
    batch = to_working_scale(sample_model(model, n, seed))
    ordered = concomitant_order(batch.xs, batch.ys)
    splits = split_maxima_many(ordered, k_list)
    return ReplicateRecord(index, splits, seed, model, batch.scale)


def run_replicates(model, n, k_list, replicate_count, master_seed, parallelism_hint=1):
    """Simulate ``replicate_count`` samples of size ``n`` and split each one.

    Replicate ``r`` draws from stream ``r`` of ``master_seed``; the output
    is ordered by replicate index whatever ``parallelism_hint`` is.
    """
    n = int(n)
    k_list = [int(k) for k in k_list]
    if replicate_count < 1:
        raise DomainError("replicate_count must be at least 1")
    if not k_list:
        raise DomainError("k_list must not be empty")
    for k in k_list:
        _check_k(k, n)
    threads = max(1, int(parallelism_hint or 1))
    job = lambda r: _one_replicate(model, n, k_list, master_seed, r)  # noqa: E731
    try:
        if threads == 1:
            return [job(r) for r in range(replicate_count)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(job, range(replicate_count)))
    except MemoryError as exc:
        raise ResourceExhaustedError(
            f"out of memory after partial replicate run (n={n})") from exc


def replicate_arrays(records, k):
    """Stack the raw ``(V1, V2)`` of every record for a given ``k``."""
    pairs = np.array([(r.split(k).v1, r.split(k).v2) for r in records], dtype=float)
    return pairs[:, 0], pairs[:, 1]


def read_pairs(path):
    """Load a two-column numeric text file (whitespace or comma separated)."""
    with open(path) as fh:
        sample = fh.read(4096)
    delimiter = "," if "," in sample else None
    data = np.loadtxt(path, delimiter=delimiter, ndmin=2, comments="#")
    if data.shape[1] != 2:
        raise ValueError(f"{path}: expected two columns, found {data.shape[1]}")
    return data[:, 0], data[:, 1]


def limit_scaling(model: ModelSpec, n):
    """Divisors ``(a_tilde_n, n)`` applied to raw ``(V1, V2)`` before comparison.

    Families 1-2 use ``(n, n)``; the Gaussian family has no such limit and
    is left unscaled.
    """
    if model.family is Family.GAUSSIAN:
        return 1.0, 1.0
    return float(n), float(n)


def sample_split_maxima(model, n, k, count, master_seed, chunk=None):
    """Raw working-scale ``(V1, V2)`` for ``count`` independent samples of size ``n``.

    Vectorised path for many small samples; chunk ``c`` uses stream ``c``
    of ``master_seed``.  Returns two arrays of length ``count``.
    """
    n = int(n)
    k = int(k)
    _check_k(k, n)
    chunk = int(chunk or max(1, 4_000_000 // n))
    v1 = np.empty(count)
    v2 = np.empty(count)
    for c, lo in enumerate(range(0, count, chunk)):
        m = min(chunk, count - lo)
        batch = to_working_scale(sample_model(model, m * n, SeedSpec(master_seed, c)))
        xs = batch.xs.reshape(m, n)
        ys = batch.ys.reshape(m, n)
        conc = np.take_along_axis(ys, np.argsort(xs, axis=1, kind="stable"), axis=1)
        v1[lo:lo + m] = conc[:, n - k:].max(axis=1)
        v2[lo:lo + m] = conc[:, :n - k].max(axis=1)
    return v1, v2
