"""Brute-force counting oracles for the classical binomial-type families.

Each oracle builds the counted objects explicitly (subsets, set partitions,
permutations, subspaces over a prime field) and never falls back on a
formula.  Sizes beyond the caps raise ``CapExceeded`` instead of
returning a partial count.
"""
from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceeded, NonPrimeField

SUBSET_CAP = 20
PARTITION_CAP = 12
PERMUTATION_CAP = 9
# Largest ambient space (number of vectors) the subspace oracle will walk:
# admits n <= 4 over GF(2) and n <= 3 over GF(3).
FIELD_SPACE_CAP = 27


@dataclass(frozen=True)
class OracleResult:
    value: int
    enumerated: int
    capped: bool = False


def _check_size(n: int, cap: int, what: str) -> None:
    if n < 0:
        raise ValueError("n must be non-negative")
    if n > cap:
        raise CapExceeded(f"{what}: n = {n} exceeds enumeration cap {cap}")


def count_k_subsets(n: int, k: int) -> OracleResult:
    _check_size(n, SUBSET_CAP, "k-subsets")
    if k < 0 or k > n:
        return OracleResult(0, 0)
    count = sum(1 for _ in itertools.combinations(range(n), k))
    return OracleResult(count, count)


def _restricted_growth_strings(n: int):
    """Yield the number of blocks of every set partition of {0..n-1}.

    A partition is encoded by its restricted growth string: element i goes
    to block a[i] with a[0] = 0 and a[i] <= 1 + max(a[:i]).
    """
    if n == 0:
        yield 0
        return
    # stack holds (next position, blocks used so far)
    stack = [(1, 1)]
    while stack:
        pos, blocks = stack.pop()
        if pos == n:
            yield blocks
            continue
        for _ in range(blocks):
            stack.append((pos + 1, blocks))
        stack.append((pos + 1, blocks + 1))


@lru_cache(maxsize=None)
def _partition_tally(n: int) -> tuple[Counter, int]:
    tally = Counter(_restricted_growth_strings(n))
    return tally, sum(tally.values())


def count_partitions_k_blocks(n: int, k: int) -> OracleResult:
    """Number of partitions of an n-set into exactly k nonempty blocks."""
    _check_size(n, PARTITION_CAP, "set partitions")
    tally, visited = _partition_tally(n)
    return OracleResult(tally.get(k, 0), visited)


def _cycle_count(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        cycles += 1
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
    return cycles


@lru_cache(maxsize=None)
def _cycle_tally(n: int) -> tuple[Counter, int]:
    tally = Counter(_cycle_count(p) for p in itertools.permutations(range(n)))
    return tally, sum(tally.values())


def count_perms_k_cycles(n: int, k: int) -> OracleResult:
    """Number of permutations of n letters with exactly k cycles."""
    _check_size(n, PERMUTATION_CAP, "permutations")
    tally, visited = _cycle_tally(n)
    return OracleResult(tally.get(k, 0), visited)


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % d for d in range(2, int(q**0.5) + 1))


class _PrimeSpace:
    """GF(q)^n with vectors encoded as integers 0 .. q^n - 1."""

    def __init__(self, n: int, q: int) -> None:
        self.n, self.q = n, q
        self.size = q**n
        vectors = list(itertools.product(range(q), repeat=n))
        index = {v: i for i, v in enumerate(vectors)}
        self.add = [
            [index[tuple((a + b) % q for a, b in zip(u, v))] for v in vectors]
            for u in vectors
        ]
        self.scale = [
            [index[tuple((c * a) % q for a in u)] for u in vectors] for c in range(q)
        ]
        self.zero = index[(0,) * n]

    def extend(self, subspace: frozenset[int], v: int) -> frozenset[int]:
        """Span of ``subspace`` together with ``v``."""
        multiples = [self.scale[c][v] for c in range(self.q)]
        return frozenset(self.add[s][m] for s in subspace for m in multiples)

    def is_subspace(self, vectors: frozenset[int]) -> bool:
        if self.zero not in vectors:
            return False
        closed_add = all(self.add[u][v] in vectors for u in vectors for v in vectors)
        closed_scale = all(
            self.scale[c][u] in vectors for c in range(self.q) for u in vectors
        )
        return closed_add and closed_scale


def _subspaces_by_closure(space: _PrimeSpace, k: int) -> tuple[int, int]:
    """Walk every subspace (as an explicit vector set) up to dimension k."""
    level = {frozenset([space.zero])}
    visited = 1
    for _ in range(k):
        nxt = set()
        for sub in level:
            for v in range(space.size):
                if v not in sub:
                    nxt.add(space.extend(sub, v))
        level = nxt
        visited += len(level)
    target = space.q**k
    found = [s for s in level if len(s) == target and space.is_subspace(s)]
    if len(found) != len(level):
        raise AssertionError("closure walk produced a set that is not a subspace")
    return len(found), visited


def _ordered_independent_tuples(space: _PrimeSpace, k: int, within=None) -> int:
    """Count ordered k-tuples of linearly independent vectors from ``within``."""
    pool = range(space.size) if within is None else sorted(within)

    def extend(span: frozenset[int], depth: int) -> int:
        if depth == k:
            return 1
        return sum(
            extend(space.extend(span, v), depth + 1) for v in pool if v not in span
        )

    return extend(frozenset([space.zero]), 0)


def count_subspaces_bruteforce(n: int, k: int, q: int) -> OracleResult:
    """Number of k-dimensional subspaces of GF(q)^n, counted two ways.

    The closure walk lists each subspace as a vector set; the basis count
    divides ordered independent k-tuples of the whole space by those of one
    fixed k-dimensional subspace.  Disagreement raises ``AssertionError``.
    """
    if not _is_prime(q):
        raise NonPrimeField(f"q = {q} is not prime; only prime fields are enumerated")
    if n < 0:
        raise ValueError("n must be non-negative")
    if q**n > FIELD_SPACE_CAP:
        raise CapExceeded(f"GF({q})^{n} has {q**n} vectors, cap is {FIELD_SPACE_CAP}")
    if k < 0 or k > n:
        return OracleResult(0, 0)

    space = _PrimeSpace(n, q)
    by_closure, visited = _subspaces_by_closure(space, k)

    coordinate = frozenset([space.zero])
    for axis in range(k):
        unit = tuple(1 if i == axis else 0 for i in range(n))
        code = sum(d * q ** (n - 1 - i) for i, d in enumerate(unit))
        coordinate = space.extend(coordinate, code)
    tuples_total = _ordered_independent_tuples(space, k)
    bases_per_subspace = _ordered_independent_tuples(space, k, within=coordinate)
    by_bases, remainder = divmod(tuples_total, bases_per_subspace)
    if remainder or by_bases != by_closure:
        raise AssertionError(
            f"subspace strategies disagree: closure {by_closure}, "
            f"bases {tuples_total}/{bases_per_subspace}"
        )
    return OracleResult(by_closure, visited + tuples_total + bases_per_subspace)
