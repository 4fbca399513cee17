"""Path counting on finite DAGs and the Lindstrom-Gessel-Viennot lemma.

Everything is exact integer arithmetic.  "Nonintersecting" means pairwise
vertex-disjoint.  The lemma is never assumed: ``lgv_verify`` enumerates the
disjoint path systems for every source-to-sink matching and compares the
signed total against the determinant.
"""
from __future__ import annotations

import itertools
import math
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .errors import BadVertex, CapExceeded, NotNonpermutable
from .interpret import OracleResult

DEFAULT_SYSTEM_CAP = 10**6


@dataclass(frozen=True)
class PathDag:
    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[Hashable, Hashable, int], ...]
    sources: tuple[Hashable, ...]
    sinks: tuple[Hashable, ...]
    _succ: dict = field(init=False, repr=False, compare=False)
    _order: tuple = field(init=False, repr=False, compare=False)
    _known: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        known = set(self.vertices)
        if len(known) != len(self.vertices):
            raise ValueError("duplicate vertex labels")
        for u, v, _ in self.edges:
            for w in (u, v):
                if w not in known:
                    raise BadVertex(f"edge endpoint {w!r} is not a vertex")
        for w in (*self.sources, *self.sinks):
            if w not in known:
                raise BadVertex(f"{w!r} is not a vertex")
        if not self.sources or len(self.sources) != len(self.sinks):
            raise ValueError("need equally many sources and sinks, at least one")

        succ = defaultdict(list)
        indegree = dict.fromkeys(self.vertices, 0)
        for u, v, w in self.edges:
            succ[u].append((v, w))
            indegree[v] += 1
        ready = [v for v in self.vertices if indegree[v] == 0]
        order = []
        while ready:
            u = ready.pop()
            order.append(u)
            for v, _ in succ[u]:
                indegree[v] -= 1
                if indegree[v] == 0:
                    ready.append(v)
        if len(order) != len(self.vertices):
            raise ValueError("graph has a directed cycle")
        object.__setattr__(self, "_succ", dict(succ))
        object.__setattr__(self, "_order", tuple(order))
        object.__setattr__(self, "_known", frozenset(known))

    @property
    def r(self) -> int:
        return len(self.sources)

    def successors(self, u) -> list[tuple[Hashable, int]]:
        return self._succ.get(u, [])

    def with_terminals(self, sources: Sequence, sinks: Sequence) -> "PathDag":
        return PathDag(self.vertices, self.edges, tuple(sources), tuple(sinks))


def build_fib_dag(n: int, sources: Sequence[int], sinks: Sequence[int]) -> PathDag:
    """Vertices 0..n with steps i -> i+1 and i -> i+2; 0 -> m has F_{m+1} paths."""
    if n < 1:
        raise ValueError("fibonacci step graph needs n >= 1")
    for v in (*sources, *sinks):
        if not (isinstance(v, int) and 0 <= v <= n):
            raise BadVertex(f"{v!r} is not in 0..{n}")
    edges = [(i, i + step, 1) for i in range(n + 1) for step in (1, 2) if i + step <= n]
    return PathDag(tuple(range(n + 1)), tuple(edges), tuple(sources), tuple(sinks))


def build_grid_dag(
    width: int, height: int, sources: Sequence[tuple[int, int]], sinks: Sequence[tuple[int, int]]
) -> PathDag:
    """Lattice points (x, y), 0 <= x <= width, 0 <= y <= height, unit east/north steps."""
    if width < 1 or height < 1:
        raise ValueError("grid dimensions must be positive")
    pts = [(x, y) for x in range(width + 1) for y in range(height + 1)]
    for v in (*sources, *sinks):
        v = tuple(v)
        if not (len(v) == 2 and 0 <= v[0] <= width and 0 <= v[1] <= height):
            raise BadVertex(f"{v!r} is outside the {width}x{height} grid")
    edges = []
    for x, y in pts:
        if x < width:
            edges.append(((x, y), (x + 1, y), 1))
        if y < height:
            edges.append(((x, y), (x, y + 1), 1))
    return PathDag(
        tuple(pts), tuple(edges), tuple(map(tuple, sources)), tuple(map(tuple, sinks))
    )


def count_paths(d: PathDag, a, b) -> int:
    """Weighted number of directed paths a -> b (1 for a == b)."""
    for v in (a, b):
        if v not in d._known:
            raise BadVertex(f"{v!r} is not a vertex")
    return _count(d, a, b, weighted=True)


def _count(d: PathDag, a, b, weighted: bool) -> int:
    ways = {a: 1}
    for u in d._order:
        here = ways.get(u)
        if not here:
            continue
        if u == b:
            break
        for v, w in d.successors(u):
            ways[v] = ways.get(v, 0) + (here * w if weighted else here)
    return ways.get(b, 0)


def path_matrix(d: PathDag) -> list[list[int]]:
    return [[count_paths(d, a, b) for b in d.sinks] for a in d.sources]


def lgv_determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    size = len(m)
    if any(len(row) != size for row in m):
        raise ValueError("matrix must be square")
    if size == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, size) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[-1][-1]


def enumerate_paths(d: PathDag, a, b) -> list[tuple[tuple, int]]:
    """All paths a -> b as (vertex tuple, weight)."""
    out = []
    stack = [((a,), 1)]
    while stack:
        path, weight = stack.pop()
        u = path[-1]
        if u == b:
            out.append((path, weight))
            continue
        for v, w in d.successors(u):
            stack.append((path + (v,), weight * w))
    return out


def enumerate_disjoint_systems(
    d: PathDag, cap: int = DEFAULT_SYSTEM_CAP, matching: Sequence[int] | None = None
) -> OracleResult:
    """Weighted count of vertex-disjoint systems (p_1..p_r), p_i: a_i -> b_{matching[i]}.

    The identity matching is used by default.  The cap bounds the product of
    per-pair path counts and is checked before any system is assembled.
    """
    if matching is None:
        matching = range(d.r)
    sinks = [d.sinks[j] for j in matching]
    predicted = math.prod(_count(d, a, b, weighted=False) for a, b in zip(d.sources, sinks))
    if predicted > cap:
        raise CapExceeded(f"{predicted} candidate path systems, cap is {cap}")
    choices = [
        [(frozenset(p), w) for p, w in enumerate_paths(d, a, b)]
        for a, b in zip(d.sources, sinks)
    ]

    total = 0
    visited = 0
    stack = [(0, frozenset(), 1)]
    while stack:
        i, used, weight = stack.pop()
        visited += 1
        if i == len(choices):
            total += weight
            continue
        for verts, w in choices[i]:
            if used.isdisjoint(verts):
                stack.append((i + 1, used | verts, weight * w))
    return OracleResult(total, visited)


def _permutation_sign(perm: Sequence[int]) -> int:
    inversions = sum(
        1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j]
    )
    return -1 if inversions % 2 else 1


@dataclass(frozen=True)
class LgvReport:
    determinant: int
    brute_force: int
    signed_sum: int
    nonpermutable: bool
    matrix: tuple[tuple[int, ...], ...]

    @property
    def equal(self) -> bool:
        return self.determinant == self.brute_force

    @property
    def ok(self) -> bool:
        # without nonpermutability only the signed form of the lemma applies
        if self.nonpermutable:
            return self.equal
        return self.determinant == self.signed_sum

    def to_json(self) -> dict:
        return {
            "matrix": [[str(v) for v in row] for row in self.matrix],
            "determinant": str(self.determinant),
            "brute_force": str(self.brute_force),
            "signed_sum": str(self.signed_sum),
            "equal": self.equal,
            "nonpermutable": self.nonpermutable,
        }


def lgv_verify(d: PathDag, cap: int = DEFAULT_SYSTEM_CAP, strict: bool = False) -> LgvReport:
    """Compare the path-matrix determinant with enumerated disjoint systems.

    Every matching is enumerated.  A configuration where some non-identity
    matching has a disjoint system is flagged in the report, or raises
    ``NotNonpermutable`` when ``strict`` is set.
    """
    matrix = path_matrix(d)
    det = lgv_determinant(matrix)
    identity = tuple(range(d.r))
    brute = 0
    signed = 0
    nonpermutable = True
    for perm in itertools.permutations(range(d.r)):
        count = enumerate_disjoint_systems(d, cap, perm).value
        signed += _permutation_sign(perm) * count
        if perm == identity:
            brute = count
        elif count:
            nonpermutable = False
    if strict and not nonpermutable:
        raise NotNonpermutable("a non-identity matching admits a disjoint path system")
    return LgvReport(det, brute, signed, nonpermutable, tuple(map(tuple, matrix)))
