"""Exact and Monte Carlo evaluation of signed-sum moments E[||X||_p^p].

For a sequence of vectors a_1..a_n and independent uniform signs
eps_i in {-1/2, +1/2}, X = sum eps_i a_i. Internally signs are modeled as
+-1 and every value is halved at the API boundary, which keeps the
dynamic-programming tables integral: coordinate j's distribution lives on
the integer grid [-S_j, S_j] with S_j = sum_i a_ij.

Exact paths return rationals; the Monte Carlo path returns a float with a
standard error, bit-for-bit reproducible from (seed, samples, seq, p).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .combinatorics import closed_form_s1, closed_form_s3
from .errors import BudgetExceededError
from .sequences import VectorSequence

__all__ = [
    "DEFAULT_TABLE_BUDGET",
    "MC_CHUNK",
    "SignedSumDistribution",
    "signed_sum_distribution",
    "MomentValue",
    "exact_moment",
    "extremal_moment",
    "mc_estimate",
    "ConvexityCounterexample",
    "convexity_probe",
    "VarianceDiscrepancy",
    "variance_identity_check",
]

# Dense DP table slots (or sparse support entries) per coordinate.
DEFAULT_TABLE_BUDGET = 1 << 22

# Monte Carlo block size. Fixed: summation order is part of the
# reproducibility contract, so the chunking must not depend on the host.
MC_CHUNK = 1 << 15

# Dense storage is wasteful below this support density; see
# signed_sum_distribution.
_SPARSE_DENSITY = 8


@dataclass(frozen=True)
class SignedSumDistribution:
    """Distribution of sum eps_i * c_i over sign patterns eps in {-1,+1}^n.

    support maps value -> exact count of sign patterns; counts total 2^n
    and the map is symmetric under negation. Values are in the doubled
    convention (signs +-1); divide by 2 to read them on the +-1/2 scale.
    coordinate records which coordinate of the owning sequence this is,
    when there is one.
    """

    n: int
    support: dict[int, int]
    coordinate: int | None = None

    def total(self) -> int:
        return sum(self.support.values())

    def moment_power_sum(self, p: int) -> int:
        """sum over the support of count * |value|^p, an exact integer."""
        return sum(count * abs(value) ** p for value, count in self.support.items())


def signed_sum_distribution(
    coords, budget: int = DEFAULT_TABLE_BUDGET, coordinate: int | None = None
) -> SignedSumDistribution:
    """Exact convolution of the two-point distributions {-c, +c}.

    Dense array DP over the offset range [-S, S] by default; when the
    support can fill at most 1/8 of that range (2^n * 8 < 2S + 1) a sparse
    dict DP is used instead. Both are exact; the choice is spent memory.
    """
    coords = [int(c) for c in coords]
    if any(c < 0 for c in coords):
        raise ValueError(f"coordinates must be nonnegative, got {coords}")
    n = len(coords)
    span = sum(coords)
    width = 2 * span + 1
    sparse = n < 60 and (1 << n) * _SPARSE_DENSITY < width
    if not sparse and width > budget:
        raise BudgetExceededError("signed-sum DP table", width, budget)

    if sparse:
        table = {0: 1}
        for c in coords:
            nxt: dict[int, int] = {}
            for v, cnt in table.items():
                nxt[v - c] = nxt.get(v - c, 0) + cnt
                nxt[v + c] = nxt.get(v + c, 0) + cnt
            table = nxt
            if len(table) > budget:
                raise BudgetExceededError("signed-sum DP support", len(table), budget)
        support = dict(sorted(table.items()))
        return SignedSumDistribution(n=n, support=support, coordinate=coordinate)

    # dense path: index i holds the count for value i - span
    counts = [0] * width
    counts[span] = 1
    reach = 0  # values outside [-reach, reach] are all zero
    for c in coords:
        reach += c
        lo, hi = span - reach, span + reach
        nxt = [0] * width
        if c == 0:
            for i in range(lo, hi + 1):
                if counts[i]:
                    nxt[i] = counts[i] * 2
        else:
            for i in range(lo, hi + 1):
                cnt = counts[i]
                if cnt:
                    nxt[i - c] += cnt
                    nxt[i + c] += cnt
        counts = nxt
    support = {i - span: cnt for i, cnt in enumerate(counts) if cnt}
    return SignedSumDistribution(n=n, support=support, coordinate=coordinate)


@dataclass(frozen=True)
class MomentValue:
    """E[||X||_p^p] with provenance.

    Exact paths (exact_dp, closed_form) carry a Fraction value and no
    stderr; the monte_carlo path carries a float value, a positive stderr
    (None when samples == 1, where it is undefined), and the sample count.
    """

    p: int | float
    value: Fraction | float
    provenance: str
    stderr: float | None = None
    samples: int | None = None


def exact_moment(seq: VectorSequence, p: int, budget: int = DEFAULT_TABLE_BUDGET) -> MomentValue:
    """E[||X||_p^p] as an exact rational, p in {1, 2, 3}.

    Sums per-coordinate contributions E|X_j|^p; each coordinate is one
    exact DP. The halving of values enters as the factor 2^p.
    """
    if p not in (1, 2, 3):
        raise ValueError(f"exact path supports p in {{1, 2, 3}}, got {p}")
    total = Fraction(0)
    denom = (1 << seq.n) * 2**p
    for j in range(seq.k):
        dist = signed_sum_distribution(
            (vec[j] for vec in seq.vectors), budget=budget, coordinate=j
        )
        total += Fraction(dist.moment_power_sum(p), denom)
    return MomentValue(p=p, value=total, provenance="exact_dp", stderr=None, samples=None)


def extremal_moment(n: int, k: int, bound: int, p: int) -> MomentValue:
    """Closed form of E[||X||_p^p] for the all-components-equal-M sequence.

    k * M^p * S_p(n) / 2^n for p in {1, 3}, where S_p comes from the exact
    closed forms. This is the extremal configuration the moment chains
    compare against.
    """
    if n < 1 or k < 1 or bound < 0:
        raise ValueError(f"bad shape: n={n}, k={k}, bound={bound}")
    if p == 1:
        s = closed_form_s1(n)
    elif p == 3:
        s = closed_form_s3(n)
    else:
        raise ValueError(f"closed forms exist for p in {{1, 3}}, got {p}")
    value = Fraction(k) * bound**p * s / (1 << n)
    return MomentValue(p=p, value=value, provenance="closed_form", stderr=None, samples=None)


def mc_estimate(seq: VectorSequence, p: float, samples: int, seed: int) -> MomentValue:
    """Monte Carlo estimate of E[||X||_p^p] with standard error.

    Signs are drawn in fixed-size blocks from numpy's seeded generator;
    block size and accumulation order are fixed, so identical inputs give
    bit-identical results on any host. Accepts any real p > 0.
    """
    if samples < 1:
        raise ValueError(f"need samples >= 1, got {samples}")
    if not p > 0:
        raise ValueError(f"need p > 0, got {p}")
    rng = np.random.default_rng(seed)
    matrix = np.asarray(seq.vectors, dtype=np.float64).reshape(seq.n, seq.k)
    values = np.empty(samples, dtype=np.float64)
    done = 0
    while done < samples:
        block = min(MC_CHUNK, samples - done)
        signs = rng.integers(0, 2, size=(block, seq.n)).astype(np.float64) * 2.0 - 1.0
        x = (signs @ matrix) * 0.5
        values[done : done + block] = (np.abs(x) ** p).sum(axis=1)
        done += block
    mean = float(values.mean())
    if samples == 1:
        stderr = None
    else:
        stderr = float(values.std(ddof=1) / np.sqrt(samples))
    return MomentValue(p=p, value=mean, provenance="monte_carlo", stderr=stderr, samples=samples)


@dataclass(frozen=True)
class ConvexityCounterexample:
    """A failed convexity or vertex check for f(t) = E|sum eps_i x_i| in x_i."""

    kind: str  # "midpoint" or "vertex"
    x: tuple[int, ...]
    index: int
    lo: int
    hi: int
    f_lo: Fraction
    f_mid: Fraction
    f_hi: Fraction


def _abs_mean(coords) -> Fraction:
    dist = signed_sum_distribution(coords)
    return Fraction(dist.moment_power_sum(1), (1 << dist.n) * 2)


def convexity_probe(
    n: int, bound: int, trials: int, seed: int
) -> ConvexityCounterexample | None:
    """Randomized exact probe of per-coordinate convexity of E|X|.

    Each trial draws an integer point x in [0, bound]^n and a coordinate
    i, then checks two exact statements about f(t) = E|X| as a function
    of x_i alone: midpoint convexity f(lo) + f(hi) >= 2 f(mid) for a
    random even-gap pair lo <= hi (so the midpoint is on the grid), and
    the vertex property f(x_i) <= max(f(0), f(bound)). All three values
    are exact rationals, so a pass is exact, not approximate. Returns the
    first counterexample, or None.
    """
    if not (1 <= n <= 16):
        raise ValueError(f"probe supports 1 <= n <= 16, got {n}")
    if bound < 1 or trials < 1:
        raise ValueError(f"need bound >= 1 and trials >= 1, got {bound}, {trials}")
    rng = np.random.default_rng(seed)
    for _ in range(trials):
        x = [int(v) for v in rng.integers(0, bound + 1, size=n)]
        i = int(rng.integers(0, n))
        while True:
            lo = int(rng.integers(0, bound + 1))
            hi = int(rng.integers(0, bound + 1))
            if lo > hi:
                lo, hi = hi, lo
            if (hi - lo) % 2 == 0:
                break
        mid = (lo + hi) // 2
        at = lambda t: _abs_mean(x[:i] + [t] + x[i + 1 :])
        f_lo, f_mid, f_hi = at(lo), at(mid), at(hi)
        if f_lo + f_hi < 2 * f_mid:
            return ConvexityCounterexample(
                kind="midpoint", x=tuple(x), index=i, lo=lo, hi=hi,
                f_lo=f_lo, f_mid=f_mid, f_hi=f_hi,
            )
        f_here = at(x[i])
        f_zero, f_full = at(0), at(bound)
        if f_here > f_zero and f_here > f_full:
            return ConvexityCounterexample(
                kind="vertex", x=tuple(x), index=i, lo=0, hi=bound,
                f_lo=f_zero, f_mid=f_here, f_hi=f_full,
            )
    return None


@dataclass(frozen=True)
class VarianceDiscrepancy:
    lhs: Fraction  # E||X||_2^2 from the DP
    rhs: Fraction  # (1/4) sum_i ||a_i||^2


def variance_identity_check(seq: VectorSequence) -> VarianceDiscrepancy | None:
    """Exact check of E||X||_2^2 = (1/4) sum_i ||a_i||_2^2.

    Independence of the signs makes the variance additive across sequence
    elements; any discrepancy would mean the DP and the identity cannot
    both be right. Returns None on agreement.
    """
    lhs = exact_moment(seq, 2).value
    rhs = Fraction(sum(c * c for vec in seq.vectors for c in vec), 4)
    if lhs == rhs:
        return None
    return VarianceDiscrepancy(lhs=lhs, rhs=rhs)
