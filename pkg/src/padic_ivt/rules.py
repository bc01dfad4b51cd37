"""The space of one-dimensional digit rules at a fixed base p.

A rule is a digit map ``f: {0..p-1} -> {0..p-1}``. Its index is the integer
whose i-th base-p digit is ``f(i)``, so at p=2 index 2 is the identity and
index 1 is the complement. Tables are canonical; indices are derived and can
be arbitrarily large (``p**p`` does not fit in 64 bits for p >= 17).

Addition and multiplication act entry-wise mod p on the tables, which makes
the rules at base p a commutative ring and, for prime p, a vector space over
GF(p) whose standard basis is the indicator rules with index ``p**i``.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .digits import check_base
from .errors import (
    BaseMismatchError,
    DomainError,
    EnumerationTooLargeError,
    IndexOutOfRangeError,
    InvalidScalarError,
    InvalidTableError,
)

DEFAULT_ENUM_BUDGET = 10**5
BUDGET_ENV_VAR = "IVT_ENUM_BUDGET"


def enumeration_budget() -> int:
    """Largest number of rules an exhaustive enumeration may visit."""
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None or not raw.strip():
        return DEFAULT_ENUM_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InvalidTableError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None


def check_budget(p: int, budget: int | None = None) -> None:
    limit = enumeration_budget() if budget is None else budget
    size = p**p
    if size > limit:
        raise EnumerationTooLargeError(
            f"enumerating {size} rules at p={p} exceeds budget {limit}"
        )


@dataclass(frozen=True)
class Rule:
    p: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        check_base(self.p)
        object.__setattr__(self, "table", tuple(self.table))
        if len(self.table) != self.p:
            raise InvalidTableError(
                f"table for p={self.p} needs {self.p} entries, got {len(self.table)}"
            )
        for t in self.table:
            if not isinstance(t, int) or not 0 <= t < self.p:
                raise InvalidTableError(f"table entry {t!r} out of range for p={self.p}")

    @property
    def index(self) -> int:
        j = 0
        for t in reversed(self.table):
            j = j * self.p + t
        return j

    @property
    def is_zero(self) -> bool:
        return not any(self.table)

    def __call__(self, digit: int) -> int:
        return self.table[digit]

    def __add__(self, other: Rule) -> Rule:
        return add_rules(self, other)

    def __mul__(self, other: Rule) -> Rule:
        return mul_rules(self, other)

    def __neg__(self) -> Rule:
        return neg_rule(self)

    def __repr__(self) -> str:
        return f"Rule(p={self.p}, index={self.index}, table={list(self.table)})"


@dataclass(frozen=True)
class BasisCoefficients:
    p: int
    coefficients: tuple[int, ...]

    def index(self) -> int:
        return sum(a * self.p**i for i, a in enumerate(self.coefficients))


def rule_from_index(p: int, j: int) -> Rule:
    check_base(p)
    if j < 0 or j >= p**p:
        raise IndexOutOfRangeError(f"rule index {j} >= p^p = {p**p}" if j >= 0 else
                                   f"rule index {j} is negative")
    table = []
    for _ in range(p):
        j, t = divmod(j, p)
        table.append(t)
    return Rule(p, tuple(table))


def rule_from_table(p: int, table: Sequence[int]) -> Rule:
    check_base(p)
    return Rule(p, tuple(table))


def zero_rule(p: int) -> Rule:
    return Rule(p, (0,) * p)


def identity_rule(p: int) -> Rule:
    return Rule(p, tuple(range(p)))


def constant_rule(p: int, c: int) -> Rule:
    return Rule(p, (c,) * p)


def _same_base(r1: Rule, r2: Rule) -> int:
    if r1.p != r2.p:
        raise BaseMismatchError(f"rules have different bases {r1.p} and {r2.p}")
    return r1.p


def add_rules(r1: Rule, r2: Rule) -> Rule:
    p = _same_base(r1, r2)
    return Rule(p, tuple((a + b) % p for a, b in zip(r1.table, r2.table)))


def mul_rules(r1: Rule, r2: Rule) -> Rule:
    p = _same_base(r1, r2)
    return Rule(p, tuple((a * b) % p for a, b in zip(r1.table, r2.table)))


def neg_rule(r: Rule) -> Rule:
    return Rule(r.p, tuple(-t % r.p for t in r.table))


def scalar_mul(c: int, r: Rule) -> Rule:
    if not 0 <= c < r.p:
        raise InvalidScalarError(f"scalar {c} not in [0, {r.p})")
    return Rule(r.p, tuple((c * t) % r.p for t in r.table))


def decompose_basis(r: Rule) -> BasisCoefficients:
    # coordinates in the indicator basis are the table entries themselves
    return BasisCoefficients(r.p, r.table)


def basis_rules(p: int) -> list[Rule]:
    check_base(p)
    return [Rule(p, tuple(int(d == i) for d in range(p))) for i in range(p)]


def combine_basis(coeffs: BasisCoefficients) -> Rule:
    """Rebuild a rule as the sum of scaled basis rules."""
    total = zero_rule(coeffs.p)
    for a, b in zip(coeffs.coefficients, basis_rules(coeffs.p)):
        total = add_rules(total, scalar_mul(a, b))
    return total


def linear_rules(p: int) -> list[Rule]:
    """The p rules of the form ``f(i) = i * s mod p``, ordered by slope s."""
    check_base(p)
    return [Rule(p, tuple((i * s) % p for i in range(p))) for s in range(p)]


def is_linear(r: Rule) -> bool:
    slope = r.table[1]
    return all(t == (i * slope) % r.p for i, t in enumerate(r.table))


def bijective_rules(p: int, budget: int | None = None) -> list[Rule]:
    """All permutation rules, sorted by index."""
    check_base(p)
    limit = enumeration_budget() if budget is None else budget
    if math.factorial(p) > limit:
        raise EnumerationTooLargeError(
            f"enumerating {math.factorial(p)} bijective rules at p={p} exceeds budget {limit}"
        )
    return sorted((Rule(p, perm) for perm in permutations(range(p))), key=lambda r: r.index)


def is_bijective(r: Rule) -> bool:
    return len(set(r.table)) == r.p


def enumerate_rules(p: int, budget: int | None = None) -> Iterator[Rule]:
    check_base(p)
    check_budget(p, budget)
    return (rule_from_index(p, j) for j in range(p**p))


def embed_basis(r: Rule) -> Rule:
    """Send basis rule ``p**i`` to ``(p+1)**i`` and the zero rule to ``(p+1)**p``.

    Only defined on the basis and the zero rule; see :func:`embed_extended`
    for the linear extension to the whole space.
    """
    p, q = r.p, r.p + 1
    if r.is_zero:
        return rule_from_index(q, q**p)
    if sorted(r.table) == [0] * (p - 1) + [1]:
        return rule_from_index(q, q ** r.table.index(1))
    raise DomainError(
        f"rule index {r.index} is neither 0 nor a power of {p}; use embed_extended"
    )


def embed_extended(r: Rule) -> Rule:
    """Reinterpret the table in base p+1, mapping the new digit p to 0."""
    return Rule(r.p + 1, r.table + (0,))


def embedding_additivity_failures(p: int, budget: int | None = None) -> list[tuple[int, int]]:
    """Index pairs (j1, j2) where ``embed_extended`` fails to preserve addition."""
    rules = list(enumerate_rules(p, budget))
    failures = []
    for a in rules:
        for b in rules:
            if embed_extended(add_rules(a, b)) != add_rules(embed_extended(a), embed_extended(b)):
                failures.append((a.index, b.index))
    return failures


def embedding_linearity_failures(p: int) -> list[tuple[int, int, int, int]]:
    """Scalar/basis combinations where the basis map is not linear.

    Checks ``T(a*e_i + b*e_k) == a*T(e_i) + b*T(e_k)`` for scalars
    ``a, b`` in ``[0, p)`` and basis rules ``e_i, e_k``, with ``T`` the
    linear extension. Returns tuples ``(a, i, b, k)`` that fail.
    """
    basis = basis_rules(p)
    target = [embed_basis(e) for e in basis]
    out = []
    for a in range(p):
        for b in range(p):
            for i, ei in enumerate(basis):
                for k, ek in enumerate(basis):
                    lhs = embed_extended(add_rules(scalar_mul(a, ei), scalar_mul(b, ek)))
                    rhs = add_rules(scalar_mul(a, target[i]), scalar_mul(b, target[k]))
                    if lhs != rhs:
                        out.append((a, i, b, k))
    return out
