"""Evaluation and iteration of integral value transformations.

``evaluate(rule, x)`` applies the rule's digit map to every digit of the
minimal base-p expansion of ``x`` and reads the result back in base p.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .digits import check_base, to_digits
from .errors import ArityError, IndexOutOfRangeError, InvalidTableError
from .rules import Rule


def evaluate(rule: Rule, x: int) -> int:
    if x < 0:
        raise ValueError(f"input must be non-negative, got {x}")
    p, table = rule.p, rule.table
    if x < p:
        return table[x]
    out = 0
    scale = 1
    while x:
        x, d = divmod(x, p)
        out += table[d] * scale
        scale *= p
    return out


def iterate(rule: Rule, n: int, x: int) -> int:
    """Apply ``rule`` to ``x`` n times; ``iterate(rule, 0, x) == x``."""
    if n < 0:
        raise ValueError(f"iteration count must be non-negative, got {n}")
    for _ in range(n):
        x = evaluate(rule, x)
    return x


def evaluate_all(rule: Rule, digit_bound: int) -> np.ndarray:
    """Outputs for every input ``x < p**digit_bound`` as an int64 array.

    Vectorized path used by the metric searches. ``padded`` holds outputs for
    inputs read with exactly n digits (leading zeros mapped through the
    table); ``minimal`` holds true outputs for inputs with at most n digits.
    """
    p = rule.p
    if digit_bound < 1:
        raise ValueError(f"digit bound must be positive, got {digit_bound}")
    if p**digit_bound > 1 << 32:
        raise ValueError(f"p**digit_bound = {p**digit_bound} is too large to tabulate")
    table = np.asarray(rule.table, dtype=np.int64)
    minimal = table.copy()
    padded = table.copy()
    block = p
    for _ in range(1, digit_bound):
        # x = high * block + low with high the new leading digit
        top = table[:, None] * block + padded[None, :]
        minimal = np.concatenate([minimal, top[1:].ravel()])
        padded = top.ravel()
        block *= p
    return minimal


@dataclass(frozen=True)
class KRule:
    """A rule over k-tuples of digits.

    The table entry for the digit tuple ``(d_1, ..., d_k)`` sits at flat
    position ``d_1 + d_2 * p + ... + d_k * p**(k-1)``.
    """

    p: int
    k: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.p)
        if self.k < 1:
            raise ArityError(f"arity must be positive, got {self.k}")
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.p**self.k:
            raise InvalidTableError(
                f"table for p={self.p}, k={self.k} needs {self.p**self.k} entries"
            )
        if any(not 0 <= t < self.p for t in self.table):
            raise InvalidTableError(f"table entries must lie in [0, {self.p})")

    @classmethod
    def from_index(cls, p: int, k: int, j: int) -> KRule:
        check_base(p)
        size = p**k
        if j < 0 or j >= p**size:
            raise IndexOutOfRangeError(f"rule index {j} out of range for p={p}, k={k}")
        table = []
        for _ in range(size):
            j, t = divmod(j, p)
            table.append(t)
        return cls(p, k, tuple(table))

    @classmethod
    def from_rule(cls, rule: Rule) -> KRule:
        return cls(rule.p, 1, rule.table)

    @property
    def index(self) -> int:
        j = 0
        for t in reversed(self.table):
            j = j * self.p + t
        return j


def evaluate_k(rule: KRule, xs: Sequence[int]) -> int:
    if len(xs) != rule.k:
        raise ArityError(f"rule takes {rule.k} arguments, got {len(xs)}")
    p = rule.p
    expansions = [to_digits(p, x).digits for x in xs]
    length = max(len(e) for e in expansions)
    out = 0
    for i in reversed(range(length)):
        flat = 0
        for m in reversed(range(rule.k)):
            e = expansions[m]
            flat = flat * p + (e[i] if i < len(e) else 0)
        out = out * p + rule.table[flat]
    return out
