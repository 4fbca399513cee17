"""The acceptance suite behind ``report all``.

Each criterion recomputes its quantities two independent ways and also
compares a handful of spot values against an expected-values file (the
packaged ``data/expected.json`` unless another file is given).
"""
from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from . import cobweb, fnomial, interpret, lgv
from .sequences import fibonacci, gaussian, natural

REQUIRED_KEYS = (
    "binomial_check",
    "chains",
    "lgv",
    "mobius",
    "quotient_spot",
    "subspaces",
    "triangle",
)


class ExpectedValuesError(ValueError):
    """The expected-values file is unreadable or missing required entries."""


def load_expected(path: str | Path | None = None) -> dict:
    try:
        if path is None:
            text = resources.files("fibcobweb").joinpath("data/expected.json").read_text()
        else:
            text = Path(path).read_text(encoding="utf-8")
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise ExpectedValuesError(f"cannot read expected values: {exc}") from None
    if not isinstance(data, dict):
        raise ExpectedValuesError("expected values must be a JSON object")
    missing = [k for k in REQUIRED_KEYS if k not in data]
    if missing:
        raise ExpectedValuesError(f"expected values missing keys: {', '.join(missing)}")
    return data


def _int(value) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ExpectedValuesError(f"not an integer: {value!r}") from None


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    elapsed: float = 0.0
    time_limit: float | None = None

    def to_json(self) -> dict:
        # elapsed time is left out so repeated runs serialize identically
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "details": self.details,
            "time_limit_s": self.time_limit,
        }


class _Criterion:
    def __init__(self, number: int, name: str, time_limit: float | None = None):
        self.number, self.name, self.time_limit = number, name, time_limit
        self.failures: list[str] = []
        self.details: dict = {}

    def require(self, condition: bool, message: str) -> None:
        if not condition:
            self.failures.append(message)

    def __enter__(self):
        self._start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self._start
        if self.time_limit is not None and self.elapsed >= self.time_limit:
            self.failures.append(f"runtime {self.elapsed:.2f}s over {self.time_limit}s")
        return False

    def result(self) -> CriterionResult:
        details = dict(self.details)
        details["failures"] = self.failures[:10]
        return CriterionResult(
            self.number, self.name, not self.failures, details, self.elapsed, self.time_limit
        )


def triangle_cross_validation(expected: dict) -> CriterionResult:
    with _Criterion(1, "triangle cross-validation", time_limit=1.0) as c:
        for seq in (fibonacci(), natural(), gaussian(2), gaussian(3)):
            report = fnomial.triangle_report(seq, 24)
            c.require(report.agree, f"{seq.name}: engines differ at {report.first_mismatch}")
            c.require(report.symmetry_ok, f"{seq.name}: symmetry or boundary broken")
            c.require(report.integrality_ok, f"{seq.name}: non-integral entry")
        row7 = fnomial.triangle(fibonacci(), 7, fnomial.RECURRENCE).row(7)
        want = [_int(v) for v in expected["triangle"]["fibonacci_row_7"]]
        c.require(list(row7) == want, f"fibonacci row 7 is {list(row7)}, expected {want}")
        c.details["rows"] = 24
    return c.result()


def _stirling2(n_max: int) -> list[list[int]]:
    s = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    s[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            s[n][k] = k * s[n - 1][k] + s[n - 1][k - 1]
    return s


def _stirling1(n_max: int) -> list[list[int]]:
    c = [[0] * (n_max + 1) for _ in range(n_max + 1)]
    c[0][0] = 1
    for n in range(1, n_max + 1):
        for k in range(1, n + 1):
            c[n][k] = (n - 1) * c[n - 1][k] + c[n - 1][k - 1]
    return c


def interpretation_oracles(expected: dict) -> CriterionResult:
    with _Criterion(2, "interpretation oracles", time_limit=30.0) as c:
        nat = natural()
        for n in range(13):
            for k in range(n + 1):
                got = interpret.count_k_subsets(n, k).value
                c.require(got == fnomial.fnomial_product(nat, n, k), f"subsets ({n},{k})")
        for q, n_max in ((2, 4), (3, 3)):
            seq = gaussian(q)
            for n in range(n_max + 1):
                for k in range(n + 1):
                    got = interpret.count_subspaces_bruteforce(n, k, q).value
                    c.require(
                        got == fnomial.fnomial_product(seq, n, k), f"subspaces ({n},{k},{q})"
                    )
        spot = interpret.count_subspaces_bruteforce(4, 2, 2).value
        c.require(spot == _int(expected["subspaces"]["n=4,k=2,q=2"]), f"GF(2)^4 planes: {spot}")
        s2 = _stirling2(12)
        for n in range(13):
            for k in range(n + 1):
                got = interpret.count_partitions_k_blocks(n, k).value
                c.require(got == s2[n][k], f"S({n},{k}) = {got}, recurrence {s2[n][k]}")
        s1 = _stirling1(9)
        for n in range(10):
            for k in range(n + 1):
                got = interpret.count_perms_k_cycles(n, k).value
                c.require(got == s1[n][k], f"c({n},{k}) = {got}, recurrence {s1[n][k]}")
        c.details["subspaces_4_2_2"] = str(spot)
    return c.result()


def cobweb_chain_oracle(expected: dict) -> CriterionResult:
    with _Criterion(3, "cobweb chain oracle", time_limit=10.0) as c:
        for seq, n_max in ((fibonacci(), 7), (natural(), 6)):
            p = cobweb.build_cobweb(seq, n_max)
            for n in range(1, n_max + 1):
                for k in range(n):
                    closed = math.prod(seq.term(s) for s in range(k + 1, n + 1))
                    got = cobweb.enumerate_max_chains(p, k, n).value
                    c.require(got == closed, f"{seq.name} layer ({k},{n}): {got} != {closed}")
                    c.require(
                        cobweb.count_max_chains_layer(p, k, n) == closed,
                        f"{seq.name} closed form ({k},{n})",
                    )
        full = cobweb.enumerate_max_chains(cobweb.build_cobweb(fibonacci(), 7), 0, 7).value
        c.require(full == _int(expected["chains"]["fibonacci_full_7"]), f"full count {full}")
        c.details["fibonacci_full_7"] = str(full)
    return c.result()


def chain_quotient(expected: dict) -> CriterionResult:
    with _Criterion(4, "chain-quotient identity") as c:
        for seq, n_max in ((fibonacci(), 7), (natural(), 6), (gaussian(2), 5)):
            p = cobweb.build_cobweb(seq, n_max)
            for n in range(n_max + 1):
                for k in range(n + 1):
                    rep = cobweb.chain_quotient_identity(p, k, n)
                    c.require(rep.equal, f"{seq.name} ({k},{n}): {rep.lhs} != {rep.rhs}")
        spot = expected["quotient_spot"]
        k, n = _int(spot["k"]), _int(spot["n"])
        fib = fibonacci()
        rep = cobweb.chain_quotient_identity(cobweb.build_cobweb(fib, 7), k, n)
        c.require(fnomial.fnomial_product(fib, n, k) == _int(spot["fnomial"]), "spot fnomial")
        c.require(fib.factorial(n - k) == _int(spot["factorial"]), "spot factorial")
        c.require(rep.lhs == rep.rhs == _int(spot["value"]), f"spot value {rep.lhs}/{rep.rhs}")
        c.details["spot"] = rep.to_json()
    return c.result()


def non_binomiality(expected: dict, seed: int = cobweb.DEFAULT_SEED) -> CriterionResult:
    with _Criterion(5, "cobweb is not binomial", time_limit=1.0) as c:
        want_len = _int(expected["binomial_check"]["counterexample_length"])
        want_counts = {_int(v) for v in expected["binomial_check"]["counterexample_counts"]}
        for n in (4, 5, 6):
            rep = cobweb.binomial_check(cobweb.build_cobweb(fibonacci(), n), seed=seed)
            c.require(not rep.is_binomial, f"n={n}: reported binomial")
            c.require(rep.sample_ok, f"n={n}: sampled DFS disagrees with closed form")
            ce = rep.counterexample
            if ce is None:
                c.require(False, f"n={n}: no counterexample")
                continue
            (x1, y1, c1), (x2, y2, c2) = ce
            c.require(
                y1[0] - x1[0] == y2[0] - x2[0] == want_len,
                f"n={n}: counterexample length is not {want_len}",
            )
            c.require({c1, c2} == want_counts, f"n={n}: counts {{{c1}, {c2}}}")
            c.details[f"n={n}"] = rep.to_json()["counterexample"]
    return c.result()


def mobius(expected: dict) -> CriterionResult:
    with _Criterion(6, "Moebius function") as c:
        cover = _int(expected["mobius"]["cover"])
        two_four = _int(expected["mobius"]["level2_to_level4"])
        for n in range(1, 6):
            p = cobweb.build_cobweb(fibonacci(), n)
            table = cobweb.mobius_table(p)
            conv = cobweb.mobius_convolution_check(p, table)
            c.require(conv.ok, f"n={n}: convolution fails at {conv.first_failure}")
            generic = cobweb.poset_mobius(list(p.vertices()), p.leq)
            c.require(generic == dict(table), f"n={n}: table differs from generic recursion")
            for (x, y), mu in table.items():
                if p.covers(x, y):
                    c.require(mu == cover, f"n={n}: cover {x}<{y} has mu {mu}")
                if x[0] == 2 and y[0] == 4:
                    c.require(mu == two_four, f"n={n}: mu{x, y} = {mu}")
    return c.result()


def lgv_lemma(expected: dict) -> CriterionResult:
    with _Criterion(7, "LGV lemma", time_limit=10.0) as c:
        grid = lgv.build_grid_dag(4, 4, [(0, 1), (1, 0)], [(2, 3), (3, 2)])
        rep = lgv.lgv_verify(grid)
        want = _int(expected["lgv"]["grid"])
        c.require(rep.nonpermutable and rep.equal, "grid: determinant != disjoint count")
        c.require(rep.determinant == want, f"grid determinant {rep.determinant}")
        c.details["grid"] = rep.to_json()
        cassini = _int(expected["lgv"]["fib_cassini"])
        for m in (2, 3):
            d = lgv.build_fib_dag(2 * m + 1, (0, 1), (2 * m, 2 * m + 1))
            rep = lgv.lgv_verify(d)
            c.require(rep.nonpermutable and rep.equal, f"fib m={m}: lemma fails")
            c.require(rep.determinant == cassini, f"fib m={m}: determinant {rep.determinant}")
            c.details[f"fib_m={m}"] = rep.to_json()
        fib = fibonacci()
        for m in range(1, 21):
            got = lgv.count_paths(lgv.build_fib_dag(m, [0], [m]), 0, m)
            c.require(got == fib.term(m + 1), f"paths 0->{m}: {got}")
    return c.result()


CRITERIA = (
    triangle_cross_validation,
    interpretation_oracles,
    cobweb_chain_oracle,
    chain_quotient,
    non_binomiality,
    mobius,
    lgv_lemma,
)
# fast enough to run twice for the determinism check
_RERUN = (triangle_cross_validation, chain_quotient, non_binomiality, mobius)


def _run(check, expected: dict, seed: int) -> CriterionResult:
    if check is non_binomiality:
        return check(expected, seed)
    return check(expected)


def run_all(expected: dict | None = None, seed: int = cobweb.DEFAULT_SEED) -> list[CriterionResult]:
    """Run criteria 1-7, then re-run the fast ones and compare serializations."""
    if expected is None:
        expected = load_expected()
    results = [_run(check, expected, seed) for check in CRITERIA]
    first = json.dumps(
        [r.to_json() for r, check in zip(results, CRITERIA) if check in _RERUN], sort_keys=True
    )
    second = json.dumps([_run(check, expected, seed).to_json() for check in _RERUN], sort_keys=True)
    with _Criterion(8, "report determinism") as c:
        c.require(first == second, "two in-process renderings differ")
    results.append(c.result())
    return results
