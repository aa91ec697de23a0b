import numpy as np
import pytest

from tailcord.concomitants import (ResourceExhaustedError, concomitant_order, read_pairs,
                                   run_replicates, split_maxima, split_maxima_many,
                                   to_working_scale)
from tailcord.errors import DomainError
from tailcord.sampler import SeedSpec, sample_model


def test_order_examples():
    assert concomitant_order([1, 3, 2], [10, 30, 20]).tolist() == [[1, 10], [2, 20], [3, 30]]
    assert concomitant_order([5, 5], [1, 2]).tolist() == [[5, 1], [5, 2]]
    ys = [4.0, 1.0, 3.0]
    assert concomitant_order([1, 2, 3], ys)[:, 1].tolist() == ys
    with pytest.raises(ValueError):
        concomitant_order([1, 2], [1])


def test_split_examples():
    pairs = concomitant_order([1, 2, 3], [10, 20, 30])
    s = split_maxima(pairs, 1)
    assert (s.v1, s.v2) == (30, 20)
    s = split_maxima(pairs, 2)
    assert (s.v1, s.v2) == (30, 10)
    for k in (0, 3):
        with pytest.raises(DomainError):
            split_maxima(pairs, k)


def test_comonotone_case():
    rng = np.random.default_rng(1)
    x = rng.standard_normal(50)
    xs = np.sort(x)
    for s in split_maxima_many(concomitant_order(x, x), [1, 5, 20]):
        assert s.v1 == xs[-1] and s.v2 == xs[-s.k - 1]


def test_many_matches_single_and_invariants():
    rng = np.random.default_rng(2)
    x, y = rng.standard_normal((2, 300))
    pairs = concomitant_order(x, y)
    ks = [1, 2, 10, 150, 299]
    many = split_maxima_many(pairs, ks)
    for s in many:
        one = split_maxima(pairs, s.k)
        assert (one.v1, one.v2) == (s.v1, s.v2)
        assert max(s.v1, s.v2) == y.max()
    v1 = [s.v1 for s in many]
    v2 = [s.v2 for s in many]
    assert v1 == sorted(v1) and v2 == sorted(v2, reverse=True)
    perm = rng.permutation(300)
    shuffled = split_maxima_many(concomitant_order(x[perm], y[perm]), ks)
    assert shuffled == many


def test_replicates_compose_and_are_schedule_free(clayton):
    recs = run_replicates(clayton, 500, [1, 10], 1, 99)
    batch = to_working_scale(sample_model(clayton, 500, SeedSpec(99, 0)))
    direct = split_maxima_many(concomitant_order(batch.xs, batch.ys), [1, 10])
    assert recs[0].splits == direct
    a = run_replicates(clayton, 500, [1, 10], 12, 99, parallelism_hint=1)
    b = run_replicates(clayton, 500, [1, 10], 12, 99, parallelism_hint=4)
    assert a == b
    assert [r.replicate_index for r in b] == list(range(12))


def test_v1_usually_exceeds_v2(clayton):
    recs = run_replicates(clayton, 10 ** 4, [10], 1000, 4242, parallelism_hint=4)
    assert np.mean([r.split(10).v1 > r.split(10).v2 for r in recs]) > 0.9


def test_harness_domain(clayton):
    with pytest.raises(DomainError):
        run_replicates(clayton, 10, [10], 1, 0)
    with pytest.raises(DomainError):
        run_replicates(clayton, 10, [1], 0, 0)


def test_memory_errors_are_wrapped(clayton, monkeypatch):
    import tailcord.concomitants as c

    def boom(*_):
        raise MemoryError

    monkeypatch.setattr(c, "_one_replicate", boom)
    with pytest.raises(ResourceExhaustedError):
        run_replicates(clayton, 10, [1], 2, 0)


def test_read_pairs(tmp_path):
    p = tmp_path / "pairs.csv"
    p.write_text("# x,y\n1.0,2.0\n3.0,4.5\n")
    x, y = read_pairs(p)
    assert x.tolist() == [1.0, 3.0] and y.tolist() == [2.0, 4.5]
    q = tmp_path / "pairs.txt"
    q.write_text("1 2 3\n")
    with pytest.raises(ValueError):
        read_pairs(q)
