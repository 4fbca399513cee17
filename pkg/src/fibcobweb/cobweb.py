"""Finite prefixes of the cobweb poset.

Level s holds F_s vertices ``(s, j)`` with ``1 <= j <= F_s``.  Every vertex
of level s is covered by every vertex of level s + 1, so ``x < y`` exactly
when x sits on a lower level than y.  No synthetic root is added.

The Fibonomial link checked here is a surrogate identity: the F-nomial
``(n over k)`` times ``(n-k)_F!`` equals the number of maximal chains of the
layer spanned by levels k+1..n.  The object class counted by the original
cobweb interpretation is not reconstructed.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field

from .errors import BadRange, CapExceeded
from .fnomial import fnomial_product
from .interpret import OracleResult
from .sequences import FSequence

DEFAULT_VERTEX_CAP = 5000
DEFAULT_CHAIN_CAP = 10**6
DEFAULT_MOBIUS_PAIR_CAP = 10**6
DEFAULT_SAMPLE_FRACTION = 0.1
DEFAULT_SAMPLE_LIMIT = 256
# sampled intervals with more maximal chains than this are skipped, not walked
DEFAULT_SAMPLE_CHAIN_CAP = 10**4
DEFAULT_SEED = 20040101

Vertex = tuple[int, int]


@dataclass(frozen=True)
class CobwebPoset:
    seq: FSequence = field(repr=False)
    n_levels: int
    level_sizes: tuple[int, ...]

    @property
    def seq_kind(self) -> str:
        return self.seq.name

    @property
    def vertex_count(self) -> int:
        return sum(self.level_sizes)

    def size(self, s: int) -> int:
        return self.level_sizes[s - 1]

    def level(self, s: int) -> list[Vertex]:
        return [(s, j) for j in range(1, self.size(s) + 1)]

    def vertices(self):
        for s in range(1, self.n_levels + 1):
            yield from self.level(s)

    def __contains__(self, v) -> bool:
        s, j = v
        return 1 <= s <= self.n_levels and 1 <= j <= self.size(s)

    def leq(self, x: Vertex, y: Vertex) -> bool:
        return x == y or x[0] < y[0]

    def covers(self, x: Vertex, y: Vertex) -> bool:
        return y[0] == x[0] + 1

    def upper_covers(self, x: Vertex) -> list[Vertex]:
        if x[0] >= self.n_levels:
            return []
        return self.level(x[0] + 1)

    def covering_pair_count(self) -> int:
        sizes = self.level_sizes
        return sum(a * b for a, b in zip(sizes, sizes[1:]))

    def comparable_pair_count(self, strict: bool = True) -> int:
        sizes = self.level_sizes
        pairs = sum(sizes[s] * sizes[t] for s, t in itertools.combinations(range(len(sizes)), 2))
        return pairs if strict else pairs + self.vertex_count


def build_cobweb(seq: FSequence, n: int, cap: int = DEFAULT_VERTEX_CAP) -> CobwebPoset:
    if n < 1:
        raise BadRange(f"a cobweb prefix needs at least one level, got {n}")
    sizes = []
    total = 0
    for s in range(1, n + 1):
        sizes.append(seq.term(s))
        total += sizes[-1]
        if total > cap:
            raise CapExceeded(f"{n} levels of {seq.name} exceed {cap} vertices")
    return CobwebPoset(seq, n, tuple(sizes))


def _check_layer(p: CobwebPoset, k: int, n: int, allow_empty: bool) -> None:
    ok = 0 <= k <= n <= p.n_levels if allow_empty else 0 <= k < n <= p.n_levels
    if not ok:
        raise BadRange(f"layer k={k}, n={n} is outside a {p.n_levels}-level cobweb")


def count_max_chains_layer(p: CobwebPoset, k: int, n: int) -> int:
    """Maximal chains of the layer on levels k+1..n: F_{k+1} * ... * F_n."""
    _check_layer(p, k, n, allow_empty=False)
    return math.prod(p.size(s) for s in range(k + 1, n + 1))


def _walk_chains(p: CobwebPoset, starts, top: Vertex | int) -> int:
    """Depth-first walk along covers from each start; count arrivals at ``top``.

    ``top`` is either a level number (any vertex there ends a chain) or a
    specific vertex.  The stack is local, so walks on one poset may run
    concurrently.
    """
    if isinstance(top, int):
        done = lambda v: v[0] == top  # noqa: E731
        allowed = lambda v: v[0] <= top  # noqa: E731
    else:
        done = lambda v: v == top  # noqa: E731
        allowed = lambda v: v[0] < top[0] or v == top  # noqa: E731
    count = 0
    stack = list(starts)
    while stack:
        v = stack.pop()
        if done(v):
            count += 1
            continue
        stack.extend(w for w in p.upper_covers(v) if allowed(w))
    return count


def enumerate_max_chains(
    p: CobwebPoset, k: int, n: int, cap: int = DEFAULT_CHAIN_CAP
) -> OracleResult:
    """Count maximal chains of the layer k+1..n by explicit generation."""
    _check_layer(p, k, n, allow_empty=True)
    if k == n:
        return OracleResult(1, 1)
    predicted = math.prod(p.size(s) for s in range(k + 1, n + 1))
    if predicted > cap:
        raise CapExceeded(f"layer has {predicted} maximal chains, cap is {cap}")
    count = _walk_chains(p, p.level(k + 1), n)
    return OracleResult(count, count)


@dataclass(frozen=True)
class ChainQuotientReport:
    seq_kind: str
    k: int
    n: int
    lhs: int
    rhs: int

    @property
    def equal(self) -> bool:
        return self.lhs == self.rhs

    def to_json(self) -> dict:
        return {
            "identity": "surrogate: fnomial(n,k) * (n-k)_F! == maximal chains of layer k+1..n",
            "sequence": self.seq_kind,
            "k": self.k,
            "n": self.n,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "equal": self.equal,
        }


def chain_quotient_identity(p: CobwebPoset, k: int, n: int) -> ChainQuotientReport:
    _check_layer(p, k, n, allow_empty=True)
    lhs = fnomial_product(p.seq, n, k) * p.seq.factorial(n - k)
    rhs = 1 if k == n else count_max_chains_layer(p, k, n)
    return ChainQuotientReport(p.seq_kind, k, n, lhs, rhs)


class MobiusTable(dict):
    """``mu[(x, y)]`` for every comparable pair x <= y."""


def mobius_table(p: CobwebPoset, pair_cap: int = DEFAULT_MOBIUS_PAIR_CAP) -> MobiusTable:
    """Moebius function by mu(x,x) = 1, mu(x,y) = -sum_{x <= z < y} mu(x,z).

    For y on level t the half-open interval [x, y) is x plus every vertex
    strictly between the two levels, the same set for all y on level t, so
    the running sum is carried level by level.
    """
    pairs = p.comparable_pair_count(strict=False)
    if pairs > pair_cap:
        raise CapExceeded(f"{pairs} comparable pairs, Moebius cap is {pair_cap}")
    table = MobiusTable()
    for x in p.vertices():
        table[(x, x)] = 1
        below_sum = 1
        for t in range(x[0] + 1, p.n_levels + 1):
            value = -below_sum
            for y in p.level(t):
                table[(x, y)] = value
            below_sum += value * p.size(t)
    return table


@dataclass(frozen=True)
class ConvolutionReport:
    ok: bool
    pairs_checked: int
    first_failure: tuple[Vertex, Vertex] | None


def mobius_convolution_check(p: CobwebPoset, table: MobiusTable) -> ConvolutionReport:
    """Check sum_{x <= z <= y} mu(x, z) == [x == y] by direct summation."""
    verts = list(p.vertices())
    checked = 0
    for x in verts:
        for y in verts:
            if not p.leq(x, y):
                continue
            checked += 1
            total = sum(table[(x, z)] for z in verts if p.leq(x, z) and p.leq(z, y))
            if total != (1 if x == y else 0):
                return ConvolutionReport(False, checked, (x, y))
    return ConvolutionReport(True, checked, None)


@dataclass(frozen=True)
class BinomialCheckReport:
    seq_kind: str
    n_levels: int
    by_length: dict[int, frozenset[int]]
    counterexample: tuple | None
    pairs_examined: int
    sampled: int
    sample_skipped: int
    sample_ok: bool

    @property
    def is_binomial(self) -> bool:
        return all(len(counts) == 1 for counts in self.by_length.values())

    def to_json(self) -> dict:
        ce = None
        if self.counterexample is not None:
            (x1, y1, c1), (x2, y2, c2) = self.counterexample
            ce = [
                {"interval": [list(x1), list(y1)], "chains": str(c1)},
                {"interval": [list(x2), list(y2)], "chains": str(c2)},
            ]
        return {
            "sequence": self.seq_kind,
            "levels": self.n_levels,
            "by_length": {
                str(length): [str(c) for c in sorted(counts)]
                for length, counts in sorted(self.by_length.items())
            },
            "is_binomial": self.is_binomial,
            "counterexample": ce,
            "pairs_examined": self.pairs_examined,
            "sampled": self.sampled,
            "sample_skipped": self.sample_skipped,
            "sample_ok": self.sample_ok,
        }


def interval_chain_count(p: CobwebPoset, x: Vertex, y: Vertex) -> int:
    """Maximal chains of [x, y] for x < y: product of the level sizes strictly between."""
    return math.prod(p.size(u) for u in range(x[0] + 1, y[0]))


def _pair_at(p: CobwebPoset, index: int) -> tuple[Vertex, Vertex]:
    """Map 0 <= index < comparable_pair_count() to a strict pair x < y."""
    for s, t in itertools.combinations(range(1, p.n_levels + 1), 2):
        block = p.size(s) * p.size(t)
        if index < block:
            i, j = divmod(index, p.size(t))
            return (s, i + 1), (t, j + 1)
        index -= block
    raise IndexError(index)


def binomial_check(
    p: CobwebPoset,
    seed: int = DEFAULT_SEED,
    sample_fraction: float = DEFAULT_SAMPLE_FRACTION,
    sample_limit: int = DEFAULT_SAMPLE_LIMIT,
    chain_cap: int = DEFAULT_SAMPLE_CHAIN_CAP,
) -> BinomialCheckReport:
    """Does the maximal-chain count of [x, y] depend only on its length?

    Strict comparable pairs are grouped by level pair, since the closed form
    only sees levels.  A seeded sample of vertex pairs is re-counted by
    depth-first enumeration.
    """
    by_length: dict[int, set[int]] = {}
    first_of_length: dict[int, tuple] = {}
    counterexample = None
    examined = 0
    for length in range(1, p.n_levels):
        for s in range(1, p.n_levels - length + 1):
            t = s + length
            x, y = (s, 1), (t, 1)
            count = interval_chain_count(p, x, y)
            examined += p.size(s) * p.size(t)
            by_length.setdefault(length, set()).add(count)
            first = first_of_length.setdefault(length, (x, y, count))
            if counterexample is None and first[2] != count:
                counterexample = (first, (x, y, count))

    total = p.comparable_pair_count()
    wanted = min(math.ceil(total * sample_fraction), sample_limit, total)
    rng = random.Random(seed)
    sampled = skipped = 0
    sample_ok = True
    for index in sorted(rng.sample(range(total), wanted)):
        x, y = _pair_at(p, index)
        expected = interval_chain_count(p, x, y)
        if expected > chain_cap:
            skipped += 1
            continue
        sampled += 1
        if _walk_chains(p, [x], y) != expected:
            sample_ok = False

    return BinomialCheckReport(
        p.seq_kind,
        p.n_levels,
        {length: frozenset(c) for length, c in by_length.items()},
        counterexample,
        examined,
        sampled,
        skipped,
        sample_ok,
    )


def poset_mobius(elements, leq) -> dict:
    """Moebius function of an arbitrary finite poset by the defining recursion.

    ``elements`` must be listed in a linear extension of ``leq``.
    """
    elements = list(elements)
    mu = {}
    for i, x in enumerate(elements):
        mu[(x, x)] = 1
        for y in elements[i + 1:]:
            if leq(x, y):
                mu[(x, y)] = -sum(
                    mu[(x, z)] for z in elements if (x, z) in mu and leq(z, y) and z != y
                )
    return mu
