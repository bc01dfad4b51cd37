"""Norm, distance and discrete derivatives of rules.

The norm of a rule is the smallest nonzero value it outputs, and the
distance between two rules is the smallest nonzero ``|f(x) - g(x)|`` over
the integers. The distance is not a metric in general: :func:`check_triangle`
searches for triples that break the triangle inequality.

Derivatives are exact: difference quotients are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import BaseMismatchError, EnumerationTooLargeError, UnstableMetricError
from .rules import Rule, enumerate_rules, rule_from_index
from .transform import evaluate, evaluate_all

DEFAULT_DIGIT_BOUND = 4
STABILITY_MARGIN = 2
# exhaustive triangle audits materialize n**3 booleans
MAX_EXHAUSTIVE_TRIANGLE_RULES = 256


def norm(rule: Rule, digit_bound: int = DEFAULT_DIGIT_BOUND) -> int:
    """Smallest nonzero output of ``rule``, or 0 for the zero rule.

    Every nonzero output has a nonzero digit, which is at least the smallest
    nonzero table entry, and single-digit inputs hit each entry exactly, so
    the minimum over all integers is the minimum over the table.
    ``digit_bound`` is accepted for interface symmetry with :func:`distance`.
    """
    if digit_bound < 1:
        raise ValueError(f"digit bound must be positive, got {digit_bound}")
    nonzero = [t for t in rule.table if t]
    return min(nonzero) if nonzero else 0


def _min_abs_diff(fa: np.ndarray, fb: np.ndarray) -> tuple[int, int]:
    """(min nonzero |fa - fb|, first input achieving it), or (0, -1) if identical."""
    diff = np.abs(fa - fb)
    nz = diff[diff != 0]
    if nz.size == 0:
        return 0, -1
    best = int(nz.min())
    return best, int(np.flatnonzero(diff == best)[0])


def _check_pair(r1: Rule, r2: Rule) -> None:
    if r1.p != r2.p:
        raise BaseMismatchError(f"rules have different bases {r1.p} and {r2.p}")


def distance_with_witness(
    r1: Rule, r2: Rule, digit_bound: int = DEFAULT_DIGIT_BOUND
) -> tuple[int, int]:
    """Distance and the smallest input realizing it (-1 for equal rules)."""
    _check_pair(r1, r2)
    if r1 == r2:
        return 0, -1
    low = _min_abs_diff(evaluate_all(r1, digit_bound), evaluate_all(r2, digit_bound))
    high_bound = digit_bound + STABILITY_MARGIN
    high = _min_abs_diff(evaluate_all(r1, high_bound), evaluate_all(r2, high_bound))
    if low[0] != high[0]:
        raise UnstableMetricError(digit_bound, low[0], high_bound, high[0])
    return low


def distance(r1: Rule, r2: Rule, digit_bound: int = DEFAULT_DIGIT_BOUND) -> int:
    return distance_with_witness(r1, r2, digit_bound)[0]


def _pairwise(outputs: np.ndarray) -> np.ndarray:
    n = len(outputs)
    d = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        diff = np.abs(outputs[i + 1:] - outputs[i])
        diff[diff == 0] = np.iinfo(np.int64).max
        row = diff.min(axis=1)
        d[i, i + 1:] = row
        d[i + 1:, i] = row
    return d


def distance_matrix(rules: list[Rule], digit_bound: int = DEFAULT_DIGIT_BOUND) -> np.ndarray:
    """Pairwise distances, guarded by the same stabilization check as :func:`distance`."""
    return _distance_matrix(rules, digit_bound)[0]


def _distance_matrix(rules: list[Rule], digit_bound: int) -> tuple[np.ndarray, np.ndarray]:
    if len({r.p for r in rules}) > 1:
        raise BaseMismatchError("all rules must share a base")
    outputs = np.stack([evaluate_all(r, digit_bound) for r in rules])
    low = _pairwise(outputs)
    high_bound = digit_bound + STABILITY_MARGIN
    high = _pairwise(np.stack([evaluate_all(r, high_bound) for r in rules]))
    bad = np.argwhere(low != high)
    if bad.size:
        i, k = bad[0]
        raise UnstableMetricError(digit_bound, int(low[i, k]), high_bound, int(high[i, k]))
    return low, outputs


@dataclass(frozen=True)
class TriangleViolation:
    a: Rule
    b: Rule
    c: Rule
    d_ac: int
    d_ab: int
    d_bc: int
    witness_ac: int
    witness_ab: int
    witness_bc: int

    def to_dict(self) -> dict:
        return {
            "a": self.a.index,
            "b": self.b.index,
            "c": self.c.index,
            "d_ac": self.d_ac,
            "d_ab": self.d_ab,
            "d_bc": self.d_bc,
            "witness_ac": self.witness_ac,
            "witness_ab": self.witness_ab,
            "witness_bc": self.witness_bc,
        }


def check_triple(
    a: Rule, b: Rule, c: Rule, digit_bound: int = DEFAULT_DIGIT_BOUND
) -> TriangleViolation | None:
    """The violation ``d(a,c) > d(a,b) + d(b,c)`` if it occurs, else None."""
    d_ac, w_ac = distance_with_witness(a, c, digit_bound)
    d_ab, w_ab = distance_with_witness(a, b, digit_bound)
    d_bc, w_bc = distance_with_witness(b, c, digit_bound)
    if d_ac > d_ab + d_bc:
        return TriangleViolation(a, b, c, d_ac, d_ab, d_bc, w_ac, w_ab, w_bc)
    return None


def check_triangle(
    p: int,
    mode: str = "exhaustive",
    samples: int = 1000,
    digit_bound: int = DEFAULT_DIGIT_BOUND,
    seed: int = 0,
) -> list[TriangleViolation]:
    """Search ordered triples of rules at base p for triangle-inequality failures.

    ``exhaustive`` checks all ``(p**p)**3`` triples and is limited to p <= 4;
    ``sampled`` draws ``samples`` triples uniformly with a seeded generator.
    Violations come back in (a, b, c) index order.
    """
    if mode == "exhaustive":
        if p**p > MAX_EXHAUSTIVE_TRIANGLE_RULES:
            raise EnumerationTooLargeError(
                f"exhaustive triangle check over {p**p} rules exceeds "
                f"{MAX_EXHAUSTIVE_TRIANGLE_RULES}; use sampled mode"
            )
        rules = list(enumerate_rules(p))
        d, outputs = _distance_matrix(rules, digit_bound)
        bad = d[:, None, :] > d[:, :, None] + d[None, :, :]
        witnesses: dict[tuple[int, int], int] = {}

        def witness(i: int, k: int) -> int:
            if (i, k) not in witnesses:
                diff = np.abs(outputs[i] - outputs[k])
                witnesses[i, k] = int(np.flatnonzero(diff == d[i, k])[0])
            return witnesses[i, k]

        return [
            TriangleViolation(
                rules[i], rules[j], rules[k],
                int(d[i, k]), int(d[i, j]), int(d[j, k]),
                witness(i, k), witness(i, j), witness(j, k),
            )
            for i, j, k in np.argwhere(bad).tolist()
        ]
    if mode == "sampled":
        rng = random.Random(seed)
        n = p**p
        picks = sorted(tuple(rng.randrange(n) for _ in range(3)) for _ in range(samples))
        found = []
        for i, j, k in picks:
            v = check_triple(
                rule_from_index(p, i), rule_from_index(p, j), rule_from_index(p, k), digit_bound
            )
            if v is not None:
                found.append(v)
        return found
    raise ValueError(f"unknown mode {mode!r}; expected 'exhaustive' or 'sampled'")


@dataclass(frozen=True)
class DerivativeReport:
    c: int
    r: int
    ld: Fraction
    rd: Fraction

    @property
    def differentiable(self) -> bool:
        return self.ld == self.rd

    def to_dict(self) -> dict:
        return {
            "c": self.c,
            "r": self.r,
            "ld": format_fraction(self.ld),
            "rd": format_fraction(self.rd),
            "differentiable": self.differentiable,
        }


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def difference_quotients(rule: Rule, c: int, radius: int) -> Iterable[Fraction]:
    if radius < 2:
        raise ValueError(f"radius must be at least 2, got {radius}")
    if c < 0:
        raise ValueError(f"point must be non-negative, got {c}")
    fc = evaluate(rule, c)
    for x in range(max(0, c - radius + 1), c + radius):
        if x != c:
            yield Fraction(evaluate(rule, x) - fc, x - c)


def derivative_at(rule: Rule, c: int, radius: int) -> DerivativeReport:
    qs = list(difference_quotients(rule, c, radius))
    return DerivativeReport(c, radius, min(qs), max(qs))


def derivative_sweep(rule: Rule, c: int, radius_max: int) -> list[DerivativeReport]:
    if radius_max < 2:
        raise ValueError(f"radius_max must be at least 2, got {radius_max}")
    return [derivative_at(rule, c, r) for r in range(2, radius_max + 1)]
