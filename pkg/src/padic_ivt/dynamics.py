"""Orbits of a rule acting on the non-negative integers.

A rule never lengthens the base-p expansion of its input, so the orbit of
``x0`` stays below ``p**digit_length(x0)`` and must become periodic. Orbits
are returned split into the transient prefix and the cycle.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .digits import digit_length
from .rules import Rule, check_budget, enumerate_rules, is_bijective, is_linear
from .transform import evaluate

SAMPLE_CYCLES = 5


@dataclass(frozen=True)
class Orbit:
    x0: int
    transient: tuple[int, ...]
    cycle: tuple[int, ...]

    @property
    def steps_to_cycle(self) -> int:
        return len(self.transient)

    @property
    def reaches_zero(self) -> bool:
        return 0 in self.transient or 0 in self.cycle

    @property
    def points(self) -> set[int]:
        return set(self.transient) | set(self.cycle)

    def to_dict(self) -> dict:
        return {
            "x0": self.x0,
            "transient": list(self.transient),
            "cycle": list(self.cycle),
            "steps_to_cycle": self.steps_to_cycle,
            "reaches_zero": self.reaches_zero,
        }


def orbit(rule: Rule, x0: int) -> Orbit:
    cap = rule.p ** digit_length(rule.p, x0) + 1
    seen: dict[int, int] = {}
    path = []
    x = x0
    while x not in seen:
        if len(path) >= cap:
            raise RuntimeError(f"orbit of {x0} exceeded proved bound {cap}")
        seen[x] = len(path)
        path.append(x)
        x = evaluate(rule, x)
    start = seen[x]
    return Orbit(x0, tuple(path[:start]), tuple(path[start:]))


def canonical_cycle(cycle: tuple[int, ...]) -> tuple[int, ...]:
    """Rotate a cycle to start at its smallest element."""
    i = cycle.index(min(cycle))
    return cycle[i:] + cycle[:i]


def fixed_points(rule: Rule, bound: int) -> list[int]:
    if bound < 1:
        raise ValueError(f"bound must be positive, got {bound}")
    return [x for x in range(bound) if evaluate(rule, x) == x]


@dataclass(frozen=True)
class Classification:
    rule: Rule
    bound: int
    reaches_zero_all: bool
    fixed_points: tuple[int, ...]
    cycles: tuple[tuple[int, ...], ...]
    max_transient_length: int

    @property
    def all_fixed(self) -> bool:
        return len(self.fixed_points) == self.bound


def classify_rule(rule: Rule, bound: int) -> Classification:
    """Orbit summary over every start value below ``bound``.

    ``cycles`` is the inventory of distinct cycles reached, each rotated to
    start at its minimum, sorted by (length, elements).
    """
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    cycles = set()
    reaches_zero_all = True
    max_transient = 0
    fixed = []
    for x0 in range(bound):
        o = orbit(rule, x0)
        cycles.add(canonical_cycle(o.cycle))
        reaches_zero_all = reaches_zero_all and o.reaches_zero
        max_transient = max(max_transient, o.steps_to_cycle)
        if o.cycle == (x0,):
            fixed.append(x0)
    return Classification(
        rule=rule,
        bound=bound,
        reaches_zero_all=reaches_zero_all,
        fixed_points=tuple(fixed),
        cycles=tuple(sorted(cycles, key=lambda c: (len(c), c))),
        max_transient_length=max_transient,
    )


CSV_COLUMNS = (
    "p",
    "rule_index",
    "rule_table",
    "is_linear",
    "is_bijective",
    "scanned_bound",
    "num_fixed_points",
    "num_distinct_cycles",
    "max_transient_length",
    "reaches_zero_all",
)


@dataclass(frozen=True)
class CensusRecord:
    p: int
    rule_index: int
    rule_table: tuple[int, ...]
    is_linear: bool
    is_bijective: bool
    scanned_bound: int
    num_fixed_points: int
    num_distinct_cycles: int
    max_transient_length: int
    reaches_zero_all: bool
    sample_cycles: tuple[tuple[int, ...], ...] = field(default=())

    @classmethod
    def from_classification(cls, c: Classification) -> CensusRecord:
        r = c.rule
        return cls(
            p=r.p,
            rule_index=r.index,
            rule_table=r.table,
            is_linear=is_linear(r),
            is_bijective=is_bijective(r),
            scanned_bound=c.bound,
            num_fixed_points=len(c.fixed_points),
            num_distinct_cycles=len(c.cycles),
            max_transient_length=c.max_transient_length,
            reaches_zero_all=c.reaches_zero_all,
            sample_cycles=c.cycles[:SAMPLE_CYCLES],
        )

    def csv_row(self) -> list[str]:
        return [
            str(self.p),
            str(self.rule_index),
            ";".join(map(str, self.rule_table)),
            str(self.is_linear).lower(),
            str(self.is_bijective).lower(),
            str(self.scanned_bound),
            str(self.num_fixed_points),
            str(self.num_distinct_cycles),
            str(self.max_transient_length),
            str(self.reaches_zero_all).lower(),
        ]

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "rule_index": self.rule_index,
            "rule_table": list(self.rule_table),
            "is_linear": self.is_linear,
            "is_bijective": self.is_bijective,
            "scanned_bound": self.scanned_bound,
            "num_fixed_points": self.num_fixed_points,
            "num_distinct_cycles": self.num_distinct_cycles,
            "max_transient_length": self.max_transient_length,
            "reaches_zero_all": self.reaches_zero_all,
            "sample_cycles": [list(c) for c in self.sample_cycles],
        }


def _census_one(args: tuple[Rule, int]) -> CensusRecord:
    rule, bound = args
    return CensusRecord.from_classification(classify_rule(rule, bound))


def census(
    p: int, bound: int, workers: int = 1, budget: int | None = None
) -> list[CensusRecord]:
    """One record per rule at base p, in index order.

    With ``workers > 1`` rules are classified in a process pool; the output
    order does not depend on the number of workers.
    """
    check_budget(p, budget)
    if bound < 2:
        raise ValueError(f"bound must be at least 2, got {bound}")
    jobs = [(r, bound) for r in enumerate_rules(p, budget)]
    if workers <= 1:
        return [_census_one(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_census_one, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
