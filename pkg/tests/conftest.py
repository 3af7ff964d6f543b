"""Shared helpers for the test suite.

Tests that need randomness build their own ``numpy.random.default_rng``
with an explicit seed so every run sees the same inputs.
"""

from __future__ import annotations

import numpy as np

from dsslab import VectorSequence


def random_sequence(rng: np.random.Generator, n: int, k: int, bound: int) -> VectorSequence:
    """Draw a sequence with components uniform on [0, bound].

    Zero vectors and duplicates are allowed; the verifier is expected to
    cope with whatever this produces.
    """

    vectors = tuple(
        tuple(int(c) for c in rng.integers(0, bound + 1, size=k)) for _ in range(n)
    )
    return VectorSequence(n, k, bound, vectors)


def subset_total(seq: VectorSequence, indices) -> tuple:
    total = [0] * seq.k
    for i in indices:
        for j in range(seq.k):
            total[j] += seq.vectors[i][j]
    return tuple(total)
