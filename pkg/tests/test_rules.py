import math
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import index_of
from padic_ivt import (
    BaseMismatchError,
    DomainError,
    EnumerationTooLargeError,
    IndexOutOfRangeError,
    InvalidScalarError,
    InvalidTableError,
    Rule,
    add_rules,
    basis_rules,
    bijective_rules,
    combine_basis,
    decompose_basis,
    embed_basis,
    embed_extended,
    enumerate_rules,
    is_bijective,
    is_linear,
    linear_rules,
    mul_rules,
    neg_rule,
    rule_from_index,
    rule_from_table,
    scalar_mul,
)
from padic_ivt.rules import (
    embedding_additivity_failures,
    embedding_linearity_failures,
    zero_rule,
)


def R(p, j):
    return rule_from_index(p, j)


def rules_at(p):
    return st.lists(st.integers(0, p - 1), min_size=p, max_size=p).map(lambda t: Rule(p, t))


def test_encoding_matches_worked_examples():
    assert R(2, 2).table == (0, 1)
    assert R(2, 1).table == (1, 0)
    assert R(3, 5).table == (2, 1, 0)


def test_index_round_trip_with_big_indices():
    p = 17
    j = p**p - 1
    assert j > 2**64
    assert R(p, j).table == (16,) * 17
    assert R(p, j).index == j
    with pytest.raises(IndexOutOfRangeError, match="rule index 99 >= p\\^p = 4"):
        R(2, 99)


def test_rule_from_table():
    assert rule_from_table(2, [1, 0]).index == 1
    assert rule_from_table(2, [0, 0]).index == 0
    assert rule_from_table(3, [2, 1, 0]).index == 5
    with pytest.raises(InvalidTableError):
        rule_from_table(3, [2, 1])
    with pytest.raises(InvalidTableError):
        rule_from_table(3, [2, 1, 3])


def test_ring_examples():
    assert add_rules(R(2, 1), R(2, 2)).index == 3
    assert add_rules(R(3, 5), R(3, 5)).table == (1, 2, 0)
    assert add_rules(R(3, 5), R(3, 5)).index == 7
    assert mul_rules(R(2, 3), R(2, 2)).index == 2
    assert mul_rules(R(3, 5), R(3, 5)).index == 4
    for j in range(4):
        assert add_rules(R(2, j), R(2, 0)).index == j
        assert mul_rules(R(2, j), R(2, 0)).index == 0
    assert neg_rule(R(2, 3)).index == 3
    assert neg_rule(R(3, 5)).index == 7
    assert neg_rule(R(5, 0)).index == 0
    with pytest.raises(BaseMismatchError):
        add_rules(R(2, 1), R(3, 1))
    with pytest.raises(BaseMismatchError):
        mul_rules(R(2, 1), R(3, 1))


def test_operators():
    assert R(3, 5) + R(3, 5) == R(3, 7)
    assert R(3, 5) * R(3, 5) == R(3, 4)
    assert -R(3, 5) == R(3, 7)


def test_scalar_examples():
    assert scalar_mul(2, R(3, 5)).index == 7
    assert scalar_mul(1, R(3, 5)).index == 5
    assert scalar_mul(0, R(3, 5)).index == 0
    with pytest.raises(InvalidScalarError):
        scalar_mul(3, R(3, 5))


def test_basis():
    assert [b.index for b in basis_rules(2)] == [1, 2]
    assert [b.index for b in basis_rules(3)] == [1, 3, 9]
    assert basis_rules(3)[0].table == (1, 0, 0)
    assert decompose_basis(R(2, 3)).coefficients == (1, 1)
    assert decompose_basis(R(2, 0)).coefficients == (0, 0)
    assert decompose_basis(R(3, 5)).coefficients == (2, 1, 0)


@pytest.mark.parametrize("p", [2, 3])
def test_basis_spans_exhaustive(p):
    for r in enumerate_rules(p):
        coeffs = decompose_basis(r)
        assert coeffs.index() == r.index
        assert combine_basis(coeffs) == r


def test_linear_rules():
    assert {r.index for r in linear_rules(2)} == {0, 2}
    three = linear_rules(3)
    assert len(three) == 3
    assert three[2].table == (0, 2, 1)
    assert three[2].index == 15
    for p in (2, 3, 5, 7, 11):
        rs = linear_rules(p)
        assert len(rs) == len(set(rs)) == p
        assert all(is_linear(r) for r in rs)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_is_linear_membership_exhaustive(p):
    linear = set(linear_rules(p))
    for r in enumerate_rules(p):
        assert is_linear(r) == (r in linear)


def test_bijective_rules():
    assert {r.index for r in bijective_rules(2)} == {1, 2}
    assert not is_bijective(R(2, 3))
    for p in (2, 3, 4, 5):
        assert len(bijective_rules(p)) == math.factorial(p)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_is_bijective_matches_enumeration(p):
    perms = {r.index for r in bijective_rules(p)}
    assert {r.index for r in enumerate_rules(p) if is_bijective(r)} == perms


def test_enumerate_counts_and_order():
    assert len(list(enumerate_rules(2))) == 4
    assert len(list(enumerate_rules(3))) == 27
    five = list(enumerate_rules(5))
    assert len(five) == 3125
    assert [r.index for r in five] == list(range(3125))


def test_enumeration_budget(monkeypatch):
    with pytest.raises(EnumerationTooLargeError):
        enumerate_rules(7)
    monkeypatch.setenv("IVT_ENUM_BUDGET", "10")
    with pytest.raises(EnumerationTooLargeError):
        enumerate_rules(3)
    assert len(list(enumerate_rules(2))) == 4


def test_embed_basis():
    assert embed_basis(R(2, 2)).index == 3
    assert embed_basis(R(2, 0)).index == 9
    assert embed_basis(R(2, 1)).index == 1
    assert [embed_basis(b).index for b in basis_rules(3)] == [1, 4, 16]
    assert embed_basis(R(3, 0)).index == 64
    with pytest.raises(DomainError):
        embed_basis(R(2, 3))


def test_embed_extended():
    assert embed_extended(R(2, 3)).index == 4
    assert embed_extended(R(2, 3)).table == (1, 1, 0)
    assert embed_extended(R(2, 0)).index == 0
    image = {embed_extended(r).index for r in enumerate_rules(2)}
    assert len(image) == 4
    assert len(list(enumerate_rules(3))) == 27


def test_embed_extended_agrees_with_basis_map_on_basis():
    for p in (2, 3, 4):
        for b in basis_rules(p):
            assert embed_extended(b) == embed_basis(b)


@pytest.mark.parametrize("p", [2, 3])
def test_embedding_additivity_fails_exactly_on_wraps(p):
    expected = [
        (a.index, b.index)
        for a in enumerate_rules(p)
        for b in enumerate_rules(p)
        if any(x + y >= p for x, y in zip(a.table, b.table))
    ]
    assert embedding_additivity_failures(p) == expected


def test_embedding_linearity_failures_are_wraps():
    # 1*e0 + 1*e0 wraps to 0 mod 2 but is 2 mod 3
    fails = embedding_linearity_failures(2)
    assert (1, 0, 1, 0) in fails
    for a, i, b, k in fails:
        coef = [0, 0]
        coef[i] += a
        coef[k] += b
        assert max(coef) >= 2


# ring and module laws, checked on random triples


@pytest.mark.parametrize("p", [2, 3, 4, 5, 6, 7])
def test_ring_laws(p):
    @settings(max_examples=200, deadline=None)
    @given(rules_at(p), rules_at(p), rules_at(p))
    def check(a, b, c):
        z = zero_rule(p)
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a
        assert a + z == a
        assert a + (-a) == z
        assert (a * b) * c == a * (b * c)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c

    check()


@pytest.mark.parametrize("p", [2, 3, 4, 5, 6, 7])
def test_module_laws(p):
    # hold for composite p too; only scalar inverses need a prime base
    @settings(max_examples=200, deadline=None)
    @given(st.integers(0, p - 1), st.integers(0, p - 1), rules_at(p), rules_at(p))
    def check(c1, c2, a, b):
        assert scalar_mul((c1 + c2) % p, a) == scalar_mul(c1, a) + scalar_mul(c2, a)
        assert scalar_mul(c1, a + b) == scalar_mul(c1, a) + scalar_mul(c1, b)
        assert scalar_mul((c1 * c2) % p, a) == scalar_mul(c1, scalar_mul(c2, a))
        assert scalar_mul(1, a) == a

    check()


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_nonzero_scalars_invertible_for_prime_base(p):
    for c in range(1, p):
        inv = pow(c, -1, p)
        for r in linear_rules(p) + basis_rules(p) + [R(p, p**p - 1)]:
            assert scalar_mul(inv, scalar_mul(c, r)) == r


def test_tables_agree_with_index_oracle():
    for p in (2, 3, 4):
        for t in product(range(p), repeat=p):
            assert rule_from_table(p, t).index == index_of(t, p)
            assert R(p, index_of(t, p)).table == t
