"""Grading sequences F_0, F_1, F_2, ... with exact integer values.

Every built-in kind has F_0 = 0 and F_s >= 1 for s >= 1.  Values are filled
eagerly up to a bound at construction time; indices past the bound are
computed on demand without touching the stored table.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import UnsupportedRecurrence

FIBONACCI = "fibonacci"
NATURAL = "natural"
GAUSSIAN = "gaussian"
CONSTANT_ONE = "constant_one"

KINDS = (FIBONACCI, NATURAL, GAUSSIAN, CONSTANT_ONE)
DEFAULT_MEMO_BOUND = 256


@dataclass(frozen=True)
class FSequence:
    kind: str
    q: int | None = None
    memo_bound: int = DEFAULT_MEMO_BOUND
    memo: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown sequence kind {self.kind!r}")
        if self.kind == GAUSSIAN:
            if self.q is None or self.q < 2:
                raise ValueError("gaussian sequence needs an integer q >= 2")
        elif self.q is not None:
            raise ValueError(f"{self.kind} sequence takes no q parameter")
        if self.memo_bound < 2:
            raise ValueError("memo_bound must be at least 2")
        object.__setattr__(self, "memo", tuple(self._fill(self.memo_bound)))

    @property
    def name(self) -> str:
        """Name as written on the command line."""
        if self.kind == GAUSSIAN:
            return f"gaussian:{self.q}"
        if self.kind == CONSTANT_ONE:
            return "one"
        return self.kind

    @property
    def supports_recurrence(self) -> bool:
        return self.kind != CONSTANT_ONE

    def _fill(self, count: int) -> list[int]:
        if self.kind == FIBONACCI:
            values = [0, 1]
            while len(values) < count:
                values.append(values[-1] + values[-2])
            return values[:count]
        return [self._closed_form(n) for n in range(count)]

    def _closed_form(self, n: int) -> int:
        if n == 0:
            return 0
        if self.kind == NATURAL:
            return n
        if self.kind == CONSTANT_ONE:
            return 1
        # gaussian: 1 + q + ... + q^(n-1), summed term by term
        q = self.q
        total, power = 0, 1
        for _ in range(n):
            total += power
            power *= q
        return total

    def term(self, n: int) -> int:
        if n < 0:
            raise ValueError("sequence index must be non-negative")
        if n < len(self.memo):
            return self.memo[n]
        if self.kind != FIBONACCI:
            return self._closed_form(n)
        a, b = self.memo[-2], self.memo[-1]
        for _ in range(n - len(self.memo) + 1):
            a, b = b, a + b
        return b

    def factorial(self, n: int) -> int:
        if n < 0:
            raise ValueError("factorial index must be non-negative")
        return math.prod(self.term(s) for s in range(1, n + 1))

    def recurrence_coeffs(self, n: int, k: int) -> tuple[int, int]:
        """Return (a, b) with B(n, k) = a*B(n-1, k) + b*B(n-1, k-1)."""
        if self.kind == FIBONACCI:
            return self.term(k + 1), self.term(n - k - 1)
        if self.kind == NATURAL:
            return 1, 1
        if self.kind == GAUSSIAN:
            return self.q**k, 1
        raise UnsupportedRecurrence(
            f"sequence {self.name!r} has no two-term triangle recurrence"
        )


def f_term(seq: FSequence, n: int) -> int:
    return seq.term(n)


def f_factorial(seq: FSequence, n: int) -> int:
    """F_1 * F_2 * ... * F_n, with the empty product 1 at n = 0."""
    return seq.factorial(n)


def fibonacci() -> FSequence:
    return FSequence(FIBONACCI)


def natural() -> FSequence:
    return FSequence(NATURAL)


def gaussian(q: int) -> FSequence:
    return FSequence(GAUSSIAN, q)


def constant_one() -> FSequence:
    return FSequence(CONSTANT_ONE)


def parse_sequence(text: str) -> FSequence:
    """Parse a CLI sequence name: fibonacci, natural, gaussian:<q> or one."""
    text = text.strip().lower()
    if text == "fibonacci":
        return fibonacci()
    if text == "natural":
        return natural()
    if text in ("one", "constant_one"):
        return constant_one()
    if text.startswith("gaussian:"):
        raw = text.split(":", 1)[1]
        try:
            q = int(raw)
        except ValueError:
            raise ValueError(f"bad gaussian parameter {raw!r}") from None
        return gaussian(q)
    raise ValueError(f"unknown sequence {text!r}")
