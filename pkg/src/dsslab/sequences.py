"""Distinct-subset-sum verification and exhaustive minimal-M search in Z^k.

A sequence of n vectors with components in [0, M] has the distinctness
property when all 2^n subset sums differ. The verifier walks subsets in
Gray-code order, so each step updates the running sum by one vector; sums
are packed into a single integer in mixed radix base (n*M + 1), which
makes collision detection one hash probe. Python integers are arbitrary
precision, so one packed path covers every width.

The searcher iterates M upward and runs a depth-first search over
canonical candidate sequences per level, refuting each M below the
answer. Desk scale only.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterator

from .bounds import METHOD_FIRST, METHOD_THIRD, METHOD_VARIANCE, lower_bound
from .errors import BudgetExceededError

__all__ = [
    "VERIFY_MAX_N",
    "DEFAULT_NODE_BUDGET",
    "SEARCH_LIMITS",
    "VectorSequence",
    "Collision",
    "iter_gray_subset_sums",
    "verify_distinct",
    "verify_distinct_by_sorting",
    "SearchOutcome",
    "min_m_search",
    "baseline_construction",
    "BoundSearchRow",
    "BoundSearchReport",
    "bound_vs_search_report",
]

# Hard cap for full subset enumeration: 2^30 sums.
VERIFY_MAX_N = 30

# Search nodes are candidate vector placements; one node per attempt.
DEFAULT_NODE_BUDGET = 10**8

# Exhaustive-search desk limits on n per dimension.
SEARCH_LIMITS = {1: 7, 2: 5, 3: 4, 4: 3}


@dataclass(frozen=True)
class VectorSequence:
    """n integer vectors in [0, bound]^k with a declared component bound."""

    n: int
    k: int
    bound: int
    vectors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0 or self.k < 1 or self.bound < 0:
            raise ValueError(f"bad shape: n={self.n}, k={self.k}, bound={self.bound}")
        if len(self.vectors) != self.n:
            raise ValueError(f"expected {self.n} vectors, got {len(self.vectors)}")
        for vec in self.vectors:
            if len(vec) != self.k:
                raise ValueError(f"vector {vec} has length {len(vec)}, expected {self.k}")
            for c in vec:
                if not (0 <= c <= self.bound):
                    raise ValueError(f"component {c} of {vec} outside [0, {self.bound}]")

    def to_text(self) -> str:
        """Serialize in the sequence file format: `n k M`, then one vector per line."""
        lines = [f"{self.n} {self.k} {self.bound}"]
        for vec in self.vectors:
            lines.append(" ".join(str(c) for c in vec))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "VectorSequence":
        rows = [line.split() for line in text.splitlines() if line.strip()]
        if not rows or len(rows[0]) != 3:
            raise ValueError("first line must be `n k M`")
        n, k, bound = (int(x) for x in rows[0])
        vectors = tuple(tuple(int(x) for x in row) for row in rows[1 : n + 1])
        if len(vectors) != n:
            raise ValueError(f"expected {n} vector lines, found {len(vectors)}")
        return cls(n=n, k=k, bound=bound, vectors=vectors)


@dataclass(frozen=True)
class Collision:
    """Two distinct index subsets with equal vector sum (indices zero-based)."""

    first: tuple[int, ...]
    second: tuple[int, ...]
    total: tuple[int, ...]


def _mask_indices(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if (mask >> i) & 1)


def _subset_total(seq: VectorSequence, mask: int) -> tuple[int, ...]:
    total = [0] * seq.k
    for i in _mask_indices(mask):
        for j, c in enumerate(seq.vectors[i]):
            total[j] += c
    return tuple(total)


def _packed_vectors(seq: VectorSequence) -> list[int]:
    # Component sums stay in [0, n*bound], so base n*bound + 1 never carries.
    base = seq.n * seq.bound + 1
    packed = []
    for vec in seq.vectors:
        acc = 0
        for c in reversed(vec):
            acc = acc * base + c
        packed.append(acc)
    return packed


def iter_gray_subset_sums(seq: VectorSequence) -> Iterator[tuple[int, int]]:
    """Yield (subset mask, packed subset sum) over all 2^n subsets.

    Subsets follow the reflected Gray code, so consecutive masks differ in
    one bit and the packed sum updates by one addition or subtraction.
    """
    packed = _packed_vectors(seq)
    current = 0
    yield 0, 0
    for step in range(1, 1 << seq.n):
        bit = (step & -step).bit_length() - 1
        gray = step ^ (step >> 1)
        if (gray >> bit) & 1:
            current += packed[bit]
        else:
            current -= packed[bit]
        yield gray, current


def verify_distinct(seq: VectorSequence) -> Collision | None:
    """None when all 2^n subset sums are distinct, else the first collision.

    "First" means first in the Gray-code walk; the returned pair is the
    earlier subset and the colliding one, both as sorted index tuples.
    """
    if seq.n > VERIFY_MAX_N:
        raise BudgetExceededError("subset enumeration", 1 << seq.n, 1 << VERIFY_MAX_N)
    seen = {}
    for mask, packed in iter_gray_subset_sums(seq):
        other = seen.get(packed)
        if other is not None:
            return Collision(
                first=_mask_indices(other),
                second=_mask_indices(mask),
                total=_subset_total(seq, mask),
            )
        seen[packed] = mask
    return None


def verify_distinct_by_sorting(seq: VectorSequence) -> Collision | None:
    """Independent oracle: recompute all packed sums, sort, scan neighbors."""
    if seq.n > VERIFY_MAX_N:
        raise BudgetExceededError("subset enumeration", 1 << seq.n, 1 << VERIFY_MAX_N)
    packed = _packed_vectors(seq)
    sums = [(0, 0)]
    for i, w in enumerate(packed):
        bit = 1 << i
        sums += [(s + w, mask | bit) for s, mask in sums]
    sums.sort()
    for (s1, m1), (s2, m2) in zip(sums, sums[1:]):
        if s1 == s2:
            return Collision(
                first=_mask_indices(m1),
                second=_mask_indices(m2),
                total=_subset_total(seq, m1),
            )
    return None


@dataclass(frozen=True)
class SearchOutcome:
    """Result of the minimal-M search.

    exhaustive means every canonical sequence at every M < m_min was
    refuted. When the node budget runs out mid-level, m_min and witness
    are None and refuted_below reports how far refutation is complete
    (every M < refuted_below is impossible).
    """

    n: int
    k: int
    m_min: int | None
    witness: VectorSequence | None
    exhaustive: bool
    refuted_below: int
    nodes: int


def _canonical_permuted(vectors: tuple[tuple[int, ...], ...], k: int) -> tuple:
    """Lexicographically least coordinate permutation of a sorted sequence."""
    best = None
    for perm in itertools.permutations(range(k)):
        permuted = tuple(sorted(tuple(vec[j] for j in perm) for vec in vectors))
        if best is None or permuted < best:
            best = permuted
    return best


class _NodeBudget:
    __slots__ = ("budget", "spent")

    def __init__(self, budget: int):
        self.budget = budget
        self.spent = 0

    def tick(self) -> None:
        if self.spent >= self.budget:
            raise BudgetExceededError("search nodes", self.spent + 1, self.budget)
        self.spent += 1


def _search_level(n: int, k: int, m: int, budget: _NodeBudget) -> tuple | None:
    """DFS for one distinct-sum sequence with components in [0, m].

    Candidates are the nonzero vectors of [0, m]^k in lexicographic order;
    sequences are strictly increasing, which loses nothing because a
    repeated vector collides immediately. For k >= 2 the root is further
    restricted to vectors with nondecreasing coordinates: the lex-least
    coordinate permutation of any sorted sequence starts with such a
    vector, so at least one representative per symmetry class survives.

    Returns indices into the candidate list, or None when refuted.
    Raises BudgetExceededError when the node budget trips mid-search.
    """
    candidates = [vec for vec in itertools.product(range(m + 1), repeat=k) if any(vec)]
    packed = []
    base = n * m + 1
    for vec in candidates:
        acc = 0
        for c in reversed(vec):
            acc = acc * base + c
        packed.append(acc)

    chosen: list[int] = []
    # sums of all subsets of the chosen prefix, packed
    sums = {0}

    def extend(start: int) -> bool:
        depth = len(chosen)
        if depth == n:
            return True
        remaining = n - depth
        for idx in range(start, len(candidates) - remaining + 1):
            if depth == 0 and k >= 2:
                vec = candidates[idx]
                if any(vec[j] > vec[j + 1] for j in range(k - 1)):
                    continue
            budget.tick()
            w = packed[idx]
            fresh = [s + w for s in sums]
            if any(f in sums for f in fresh):
                continue
            sums.update(fresh)
            chosen.append(idx)
            if extend(idx + 1):
                return True
            chosen.pop()
            sums.difference_update(fresh)
        return False

    if extend(0):
        return tuple(chosen), candidates
    return None


def _bruteforce_level(n: int, k: int, m: int, budget: _NodeBudget) -> tuple | None:
    """Pruning-free reference: try every increasing sequence, verify whole."""
    candidates = [vec for vec in itertools.product(range(m + 1), repeat=k) if any(vec)]
    for combo in itertools.combinations(range(len(candidates)), n):
        budget.tick()
        vectors = tuple(candidates[i] for i in combo)
        seq = VectorSequence(n=n, k=k, bound=m, vectors=vectors)
        if verify_distinct(seq) is None:
            return combo, candidates
    return None


def min_m_search(
    n: int, k: int, budget: int = DEFAULT_NODE_BUDGET, prune: bool = True
) -> SearchOutcome:
    """Smallest M admitting a length-n distinct-sum sequence in [0, M]^k.

    Iterates M = 1, 2, ... and refutes each level exhaustively before
    moving on; feasibility is monotone in M, so the first feasible level
    is the answer. prune=False switches to the pruning-free brute-force
    reference path (same canonical ordering, no prefix pruning, no root
    symmetry break), used to certify the pruned search in tests.

    The witness is canonicalized to the lexicographically least among its
    coordinate-permuted variants.
    """
    if k not in SEARCH_LIMITS:
        raise ValueError(f"search supports k in {sorted(SEARCH_LIMITS)}, got {k}")
    if n < 0 or n > SEARCH_LIMITS[k]:
        raise ValueError(f"search supports 0 <= n <= {SEARCH_LIMITS[k]} for k={k}, got {n}")
    if n == 0:
        witness = VectorSequence(n=0, k=k, bound=0, vectors=())
        return SearchOutcome(
            n=0, k=k, m_min=0, witness=witness, exhaustive=True, refuted_below=0, nodes=0
        )

    tracker = _NodeBudget(budget)
    level = _search_level if prune else _bruteforce_level
    m = 1
    while True:
        try:
            found = level(n, k, m, tracker)
        except BudgetExceededError:
            return SearchOutcome(
                n=n,
                k=k,
                m_min=None,
                witness=None,
                exhaustive=False,
                refuted_below=m,
                nodes=tracker.spent,
            )
        if found is not None:
            indices, candidates = found
            vectors = tuple(candidates[i] for i in indices)
            canonical = _canonical_permuted(vectors, k) if k >= 2 else tuple(sorted(vectors))
            witness = VectorSequence(n=n, k=k, bound=m, vectors=canonical)
            return SearchOutcome(
                n=n,
                k=k,
                m_min=m,
                witness=witness,
                exhaustive=True,
                refuted_below=m,
                nodes=tracker.spent,
            )
        m += 1


def baseline_construction(n: int, k: int) -> VectorSequence:
    """Round-robin powers of two: index i gets value 2^(i // k) in coordinate i mod k.

    Always passes verification (each coordinate is an independent binary
    construction), with bound M = 2^(ceil(n/k) - 1). Serves as the sanity
    upper bound next to searched and bounded values of M.
    """
    if n < 1 or k < 1:
        raise ValueError(f"need n, k >= 1, got n={n}, k={k}")
    vectors = []
    for i in range(n):
        vec = [0] * k
        vec[i % k] = 1 << (i // k)
        vectors.append(tuple(vec))
    bound = 1 << (math.ceil(n / k) - 1)
    return VectorSequence(n=n, k=k, bound=bound, vectors=tuple(vectors))


@dataclass(frozen=True)
class BoundSearchRow:
    """One method's bounds next to the searched minimum.

    finite_violation marks a finite-form bound exceeding the true minimum,
    which refutes the finite chain at this size. asymptotic_exceeds is
    informational only: the asymptotic form drops a (1 + o(1)) factor, so
    exceeding the minimum at tiny n refutes nothing.
    """

    method: str
    finite_bound: float | None
    asymptotic_bound: float
    m_min: int
    baseline_m: int
    finite_violation: bool
    asymptotic_exceeds: bool


@dataclass(frozen=True)
class BoundSearchReport:
    n: int
    k: int
    m_min: int
    baseline_m: int
    exhaustive: bool
    rows: tuple[BoundSearchRow, ...]

    @property
    def any_violation(self) -> bool:
        return any(row.finite_violation for row in self.rows)


def bound_vs_search_report(n: int, k: int, budget: int = DEFAULT_NODE_BUDGET) -> BoundSearchReport:
    """Audit every lower bound against the exhaustively searched minimum."""
    outcome = min_m_search(n, k, budget=budget)
    if outcome.m_min is None:
        raise BudgetExceededError("bound audit search", budget + 1, budget)
    baseline = baseline_construction(n, k)
    rows = []
    for method in (METHOD_FIRST, METHOD_THIRD, METHOD_VARIANCE):
        report = lower_bound(n, k, method)
        finite = report.finite_bound
        rows.append(
            BoundSearchRow(
                method=method,
                finite_bound=finite,
                asymptotic_bound=report.asymptotic_bound,
                m_min=outcome.m_min,
                baseline_m=baseline.bound,
                finite_violation=finite is not None and finite > outcome.m_min,
                asymptotic_exceeds=report.asymptotic_bound > outcome.m_min,
            )
        )
    return BoundSearchReport(
        n=n,
        k=k,
        m_min=outcome.m_min,
        baseline_m=baseline.bound,
        exhaustive=outcome.exhaustive,
        rows=tuple(rows),
    )
