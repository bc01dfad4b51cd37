import pytest

from oracles import apply_rule
from padic_ivt import (
    bijective_rules,
    census,
    classify_rule,
    digit_length,
    enumerate_rules,
    evaluate,
    fixed_points,
    orbit,
    rule_from_index,
)
from padic_ivt.dynamics import canonical_cycle

COMPLEMENT = rule_from_index(2, 1)
IDENTITY = rule_from_index(2, 2)
REPUNIT = rule_from_index(2, 3)


def brute_orbit_set(table, p, x0):
    seen = []
    x = x0
    while x not in seen:
        seen.append(x)
        x = apply_rule(table, p, x)
    return set(seen)


def test_orbit_examples():
    o = orbit(COMPLEMENT, 5)
    assert (o.transient, o.cycle) == ((5, 2), (1, 0))
    assert o.points == {5, 2, 1, 0}
    assert o.reaches_zero and o.steps_to_cycle == 2
    for x0 in (0, 7, 1000):
        o = orbit(IDENTITY, x0)
        assert (o.transient, o.cycle) == ((), (x0,))
    o = orbit(COMPLEMENT, 15)
    assert (o.transient, o.cycle) == ((15,), (0, 1))


def test_paper_orbit_table():
    expected = {
        0: {0, 1}, 1: {0, 1}, 2: {2, 1, 0}, 3: {3, 1, 0}, 4: {4, 3, 1, 0},
        5: {5, 2, 1, 0}, 6: {6, 1, 0}, 7: {7, 1, 0}, 15: {15, 1, 0},
    }
    for x0, pts in expected.items():
        assert orbit(COMPLEMENT, x0).points == pts
        assert brute_orbit_set((1, 0), 2, x0) == pts


def test_mersenne_orbits_are_three_points():
    for s in range(2, 20):
        assert orbit(COMPLEMENT, 2**s - 1).points == {2**s - 1, 0, 1}


def check_orbit(rule, x0):
    o = orbit(rule, x0)
    limit = rule.p ** digit_length(rule.p, x0)
    seq = o.transient + o.cycle
    assert seq[0] == x0
    assert len(set(seq)) == len(seq)
    for a, b in zip(seq, seq[1:]):
        assert evaluate(rule, a) == b
    assert evaluate(rule, o.cycle[-1]) == o.cycle[0]
    assert all(v < limit for v in seq)
    assert o.steps_to_cycle + len(o.cycle) <= limit
    return o


@pytest.mark.parametrize("p, bound", [(2, 2**10), (3, 3**6)])
def test_orbit_bounds_exhaustive(p, bound):
    for r in enumerate_rules(p):
        for x0 in range(bound):
            check_orbit(r, x0)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_transients_of_bijective_rules(p):
    # a permutation that sends some nonzero digit to 0 can drop the leading digit,
    # so only permutations fixing 0 act injectively on the integers
    for r in bijective_rules(p):
        has_transient = any(orbit(r, x0).transient for x0 in range(p**5))
        assert has_transient == (r.table[0] != 0)


def test_complement_is_bijective_with_transient():
    assert orbit(COMPLEMENT, 5).transient == (5, 2)


def test_fixed_points():
    assert fixed_points(IDENTITY, 16) == list(range(16))
    assert fixed_points(REPUNIT, 16) == [1, 3, 7, 15]
    assert fixed_points(COMPLEMENT, 16) == []
    assert fixed_points(REPUNIT, 16) == [x for x in range(16) if apply_rule((1, 1), 2, x) == x]


def test_classify():
    c = classify_rule(COMPLEMENT, 1024)
    assert c.reaches_zero_all
    assert c.cycles == ((0, 1),)
    c = classify_rule(IDENTITY, 64)
    assert not c.reaches_zero_all
    assert c.all_fixed and len(c.fixed_points) == 64
    c = classify_rule(REPUNIT, 64)
    assert not c.reaches_zero_all
    assert c.cycles == ((1,), (3,), (7,), (15,), (31,), (63,))
    assert c.fixed_points == (1, 3, 7, 15, 31, 63)


def test_canonical_cycle():
    assert canonical_cycle((3, 1, 2)) == (1, 2, 3)
    assert canonical_cycle((0, 1)) == (0, 1)


def test_census_p2():
    recs = census(2, 256)
    assert [r.rule_index for r in recs] == [0, 1, 2, 3]
    zero, comp, ident, rep = recs
    assert comp.reaches_zero_all
    assert ident.num_fixed_points == 256
    assert zero.reaches_zero_all and zero.max_transient_length == 1
    assert rep.num_fixed_points == 8
    assert ident.is_bijective and ident.is_linear
    assert comp.is_bijective and not comp.is_linear


def test_census_p3_consistent_with_orbits():
    recs = census(3, 243)
    assert len(recs) == 27
    for rec in recs:
        r = rule_from_index(3, rec.rule_index)
        orbits = [orbit(r, x0) for x0 in range(243)]
        assert rec.num_fixed_points == sum(o.cycle == (o.x0,) for o in orbits)
        assert rec.num_distinct_cycles == len({canonical_cycle(o.cycle) for o in orbits})
        assert rec.max_transient_length == max(o.steps_to_cycle for o in orbits)
        assert rec.reaches_zero_all == all(o.reaches_zero for o in orbits)
        assert len(rec.sample_cycles) <= 5


def test_census_parallel_matches_serial():
    assert census(3, 81, workers=2) == census(3, 81)
