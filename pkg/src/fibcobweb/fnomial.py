"""F-nomial coefficients: Fibonomials, Gaussian coefficients, binomials.

Two independent engines are provided.  ``fnomial_product`` evaluates the
quotient of falling and rising F-products directly; ``triangle`` with
``method="recurrence"`` builds each row purely from the previous one using
the sequence's two-term recurrence.  ``triangle_report`` compares them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import CapExceeded, NonIntegralFnomial, UnsupportedRecurrence
from .sequences import FSequence

PRODUCT = "product"
RECURRENCE = "recurrence"
METHODS = (PRODUCT, RECURRENCE)
DEFAULT_ROW_CAP = 512


def fnomial_product(seq: FSequence, n: int, k: int) -> int:
    """Return (F_{n-k+1} ... F_n) / (F_1 ... F_k), or 0 when k is out of range.

    Numerator and denominator are formed in full and divided once, so a
    sequence that does not yield integers is caught here.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if k < 0 or k > n:
        return 0
    numerator = math.prod(seq.term(n - k + i) for i in range(1, k + 1))
    denominator = math.prod(seq.term(i) for i in range(1, k + 1))
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise NonIntegralFnomial(
            f"{seq.name} F-nomial ({n} over {k}) is {numerator}/{denominator}"
        )
    return quotient


@dataclass(frozen=True)
class FnomialTriangle:
    seq_kind: str
    rows: tuple[tuple[int, ...], ...]
    method: str

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def row(self, n: int) -> tuple[int, ...]:
        return self.rows[n]

    def to_json(self) -> dict:
        return {
            "sequence": self.seq_kind,
            "method": self.method,
            "rows": [[str(v) for v in row] for row in self.rows],
        }


def _product_rows(seq: FSequence, n_max: int) -> list[tuple[int, ...]]:
    return [
        tuple(fnomial_product(seq, n, k) for k in range(n + 1))
        for n in range(n_max + 1)
    ]


def _recurrence_rows(seq: FSequence, n_max: int) -> list[tuple[int, ...]]:
    rows = [(1,)]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [1]
        for k in range(1, n):
            a, b = seq.recurrence_coeffs(n, k)
            row.append(a * prev[k] + b * prev[k - 1])
        row.append(1)
        rows.append(tuple(row))
    return rows


def triangle(
    seq: FSequence, n_max: int, method: str = PRODUCT, row_cap: int = DEFAULT_ROW_CAP
) -> FnomialTriangle:
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    if n_max > row_cap:
        raise CapExceeded(f"{n_max} rows requested, cap is {row_cap}")
    if method == RECURRENCE:
        if not seq.supports_recurrence:
            raise UnsupportedRecurrence(
                f"sequence {seq.name!r} has no two-term triangle recurrence"
            )
        rows = _recurrence_rows(seq, n_max)
    else:
        rows = _product_rows(seq, n_max)
    return FnomialTriangle(seq.name, tuple(rows), method)


@dataclass(frozen=True)
class TriangleReport:
    sequence: str
    n_max: int
    agree: bool
    first_mismatch: tuple[int, int] | None
    symmetry_ok: bool
    integrality_ok: bool

    @property
    def ok(self) -> bool:
        return self.agree and self.symmetry_ok and self.integrality_ok

    def to_json(self) -> dict:
        return {
            "sequence": self.sequence,
            "n_max": self.n_max,
            "agree": self.agree,
            "first_mismatch": list(self.first_mismatch) if self.first_mismatch else None,
            "symmetry_ok": self.symmetry_ok,
            "integrality_ok": self.integrality_ok,
        }


def _symmetric_with_unit_boundary(rows) -> bool:
    for n, row in enumerate(rows):
        if len(row) != n + 1 or row[0] != 1 or row[n] != 1:
            return False
        if any(row[k] != row[n - k] for k in range(n + 1)):
            return False
    return True


def triangle_report(seq: FSequence, n_max: int) -> TriangleReport:
    """Compare the product and recurrence triangles entry by entry."""
    recurrence = triangle(seq, n_max, RECURRENCE)
    try:
        product = triangle(seq, n_max, PRODUCT)
    except NonIntegralFnomial:
        return TriangleReport(seq.name, n_max, False, None, False, False)

    first_mismatch = None
    for n, (p_row, r_row) in enumerate(zip(product.rows, recurrence.rows)):
        for k, (p, r) in enumerate(zip(p_row, r_row)):
            if p != r:
                first_mismatch = (n, k)
                break
        if first_mismatch:
            break
    symmetry_ok = _symmetric_with_unit_boundary(product.rows) and (
        _symmetric_with_unit_boundary(recurrence.rows)
    )
    return TriangleReport(
        seq.name,
        n_max,
        agree=first_mismatch is None,
        first_mismatch=first_mismatch,
        symmetry_ok=symmetry_ok,
        integrality_ok=True,
    )
