"""Signed-sum distributions, exact and Monte Carlo moments, convexity probe."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np
import pytest

from conftest import random_sequence
from dsslab import (
    BudgetExceededError,
    VectorSequence,
    convexity_probe,
    exact_moment,
    extremal_moment,
    mc_estimate,
    signed_sum_distribution,
    variance_identity_check,
)


def test_distribution_examples():
    assert signed_sum_distribution((1,)).support == {-1: 1, 1: 1}
    assert signed_sum_distribution((1, 1)).support == {-2: 1, 0: 2, 2: 1}
    assert signed_sum_distribution((1, 2)).support == {-3: 1, -1: 1, 1: 1, 3: 1}


def test_distribution_counts_and_symmetry():
    rng = np.random.default_rng(31)
    for trial in range(40):
        n = int(rng.integers(1, 14))
        coords = tuple(int(c) for c in rng.integers(0, 9, size=n))
        dist = signed_sum_distribution(coords)
        assert dist.total() == 2**n
        for value, count in dist.support.items():
            assert dist.support[-value] == count


def test_distribution_matches_direct_enumeration():
    rng = np.random.default_rng(32)
    for trial in range(25):
        n = int(rng.integers(1, 9))
        coords = tuple(int(c) for c in rng.integers(0, 7, size=n))
        expect = {}
        for signs in itertools.product((-1, 1), repeat=n):
            s = sum(e * c for e, c in zip(signs, coords))
            expect[s] = expect.get(s, 0) + 1
        assert signed_sum_distribution(coords).support == expect


def test_distribution_sparse_path_matches_direct_enumeration():
    # Wide coordinate spread forces the dictionary path; small n keeps
    # the direct product affordable.
    coords = (1000, 3000, 50000, 12345)
    expect = {}
    for signs in itertools.product((-1, 1), repeat=len(coords)):
        s = sum(e * c for e, c in zip(signs, coords))
        expect[s] = expect.get(s, 0) + 1
    assert signed_sum_distribution(coords).support == expect


def test_distribution_budget_error():
    # Dense table would need 8.4e6 cells against a 2^22 budget, and the
    # 2^25 subset count rules the sparse path out.
    with pytest.raises(BudgetExceededError):
        signed_sum_distribution((168000,) * 25)


def test_exact_moment_examples():
    seq = VectorSequence(3, 1, 4, ((1,), (2,), (4,)))
    assert exact_moment(seq, 1).value == 2
    assert exact_moment(seq, 2).value == Fraction(21, 4)
    assert exact_moment(seq, 3).value == Fraction(31, 2)
    pair = VectorSequence(2, 1, 1, ((1,), (1,)))
    assert exact_moment(pair, 1).value == Fraction(1, 2)


def test_exact_moment_metadata():
    seq = VectorSequence(2, 2, 3, ((1, 2), (3, 0)))
    mv = exact_moment(seq, 1)
    assert mv.provenance == "exact_dp"
    assert mv.stderr is None and mv.samples is None


def test_exact_moment_validation():
    seq = VectorSequence(1, 1, 1, ((1,),))
    for bad in (0, 4):
        with pytest.raises(ValueError):
            exact_moment(seq, bad)


def test_extremal_matches_exact_on_all_max_sequences():
    for n in range(1, 13):
        for k in (1, 2, 3):
            for m in (1, 3):
                seq = VectorSequence(n, k, m, ((m,) * k,) * n)
                for p in (1, 3):
                    assert (
                        exact_moment(seq, p).value == extremal_moment(n, k, m, p).value
                    ), (n, k, m, p)


def test_extremal_metadata_and_validation():
    mv = extremal_moment(4, 2, 3, 3)
    assert mv.value == 81
    assert mv.provenance == "closed_form"
    with pytest.raises(ValueError):
        extremal_moment(4, 2, 3, 2)


def test_random_sequences_never_beat_extremal():
    rng = np.random.default_rng(20260816)
    for trial in range(300):
        n = int(rng.integers(1, 13))
        k = int(rng.integers(1, 4))
        m = int(rng.integers(1, 9))
        seq = random_sequence(rng, n, k, m)
        for p in (1, 3):
            assert exact_moment(seq, p).value <= extremal_moment(n, k, m, p).value


def test_variance_identity_examples():
    seq = VectorSequence(3, 1, 4, ((1,), (2,), (4,)))
    assert variance_identity_check(seq) is None
    assert exact_moment(seq, 2).value == Fraction(1 + 4 + 16, 4)

    plane = VectorSequence(2, 2, 1, ((1, 0), (0, 1)))
    assert variance_identity_check(plane) is None
    assert exact_moment(plane, 2).value == Fraction(1, 2)


def test_variance_identity_on_randoms():
    rng = np.random.default_rng(777)
    for trial in range(100):
        seq = random_sequence(
            rng, int(rng.integers(1, 13)), int(rng.integers(1, 4)), int(rng.integers(1, 9))
        )
        assert variance_identity_check(seq) is None
        squares = sum(c * c for v in seq.vectors for c in v)
        assert exact_moment(seq, 2).value == Fraction(squares, 4)


def test_mc_estimate_is_deterministic_per_seed():
    seq = VectorSequence(3, 1, 4, ((1,), (2,), (4,)))
    a = mc_estimate(seq, 2, samples=4096, seed=11)
    b = mc_estimate(seq, 2, samples=4096, seed=11)
    assert (a.value, a.stderr) == (b.value, b.stderr)
    assert a.samples == 4096
    assert a.provenance == "monte_carlo"
    c = mc_estimate(seq, 2, samples=4096, seed=12)
    assert c.value != a.value


def test_mc_estimate_tracks_exact_value():
    seq = VectorSequence(4, 2, 5, ((1, 0), (2, 3), (5, 1), (0, 4)))
    exact = float(exact_moment(seq, 1).value)
    for seed in (0, 1, 2):
        mv = mc_estimate(seq, 1, samples=20000, seed=seed)
        assert abs(mv.value - exact) <= 4.0 * mv.stderr, seed


def test_mc_estimate_single_sample_has_no_stderr():
    seq = VectorSequence(2, 1, 2, ((1,), (2,)))
    mv = mc_estimate(seq, 1, samples=1, seed=5)
    assert mv.stderr is None
    assert mv.samples == 1


def test_mc_estimate_validation():
    seq = VectorSequence(1, 1, 1, ((1,),))
    with pytest.raises(ValueError):
        mc_estimate(seq, 1, samples=0, seed=1)
    with pytest.raises(ValueError):
        mc_estimate(seq, 0, samples=10, seed=1)
    # unlike the exact path, any real p > 0 is fair game here
    mv = mc_estimate(seq, 2.5, samples=16, seed=1)
    assert mv.value >= 0.0


def test_convexity_probe_finds_nothing():
    assert convexity_probe(4, 8, trials=200, seed=1) is None
    assert convexity_probe(8, 5, trials=200, seed=2) is None


def test_convexity_probe_linear_case():
    # With one vector the mean absolute sum is linear in the component,
    # so midpoint convexity holds with equality.
    assert convexity_probe(1, 9, trials=50, seed=4) is None


def test_convexity_probe_validation():
    with pytest.raises(ValueError):
        convexity_probe(0, 4, trials=5, seed=1)
    with pytest.raises(ValueError):
        convexity_probe(17, 4, trials=5, seed=1)
    with pytest.raises(ValueError):
        convexity_probe(4, 4, trials=0, seed=1)
