from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from qvertex.partitions import (
    EMPTY,
    Partition,
    dominance_leq,
    partitions_of,
    power_sum_norm_q,
    power_sum_norm_st,
)
from qvertex.rational import RF_ONE, qpow


def gf_partition_counts(n):
    """Independent oracle: coefficients of prod_k 1/(1 - x^k) up to x^n."""
    coeffs = [1] + [0] * n
    for k in range(1, n + 1):
        for e in range(k, n + 1):
            coeffs[e] += coeffs[e - k]
    return coeffs


def test_counts_match_generating_function():
    counts = gf_partition_counts(10)
    for n in range(11):
        assert len(partitions_of(n)) == counts[n]


def test_revlex_order_frozen():
    assert partitions_of(0) == (EMPTY,)
    assert partitions_of(4) == (
        Partition((4,)),
        Partition((3, 1)),
        Partition((2, 2)),
        Partition((2, 1, 1)),
        Partition((1, 1, 1, 1)),
    )
    assert len(partitions_of(6)) == 11
    assert partitions_of(6)[0] == Partition((6,))
    assert partitions_of(6)[-1] == Partition((1,) * 6)


def test_invalid_inputs():
    with pytest.raises(ValueError):
        partitions_of(-1)
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((0,))


@given(st.integers(min_value=0, max_value=9))
def test_enumeration_weights_and_validity(n):
    parts = partitions_of(n)
    assert sum(p.weight() for p in parts) == n * len(parts)
    for p in parts:
        assert all(a >= b for a, b in zip(p, p[1:]))


def test_multiplicity_view():
    p = Partition((3, 2, 2, 1, 1, 1))
    assert p.multiplicities() == {3: 1, 2: 2, 1: 3}
    assert p.weight() == 10
    assert p.length() == 6


def test_dominance_examples():
    assert dominance_leq(Partition((1, 1)), Partition((2,)))
    assert not dominance_leq(Partition((2,)), Partition((1, 1)))
    assert dominance_leq(Partition((2, 2)), Partition((3, 1)))
    with pytest.raises(ValueError):
        dominance_leq(Partition((2,)), Partition((1, 1, 1)))


def test_dominance_is_partial_order():
    for n in range(7):
        parts = partitions_of(n)
        for p in parts:
            assert dominance_leq(p, p)
        for a, b in combinations(parts, 2):
            if dominance_leq(a, b) and dominance_leq(b, a):
                assert a == b
        for a in parts:
            for b in parts:
                for c in parts:
                    if dominance_leq(a, b) and dominance_leq(b, c):
                        assert dominance_leq(a, c)


def test_weights_frozen_values():
    q2, q4 = qpow(2), qpow(4)
    assert power_sum_norm_q(EMPTY) == RF_ONE
    assert power_sum_norm_q(Partition((1,))) == RF_ONE + q2
    assert power_sum_norm_q(Partition((2,))) == (RF_ONE + q4) * 2
    assert power_sum_norm_q(Partition((1, 1))) == (RF_ONE + q2) ** 2 * 2
    # z((2,1), q^4, q^2) = 2 (1+q^4)(1+q^2): substitute and simplify by hand
    assert power_sum_norm_st(Partition((2, 1)), q4, q2) == \
        (RF_ONE + q4) * (RF_ONE + q2) * 2


def test_weight_st_generic_symbols():
    s, t = qpow(4), qpow(2)
    assert power_sum_norm_st(EMPTY, s, t) == RF_ONE
    # z((1,1), s, t) = 2 (1-s)^2 / (1-t)^2
    val = power_sum_norm_st(Partition((1, 1)), s, t)
    assert val == (RF_ONE - s) ** 2 / (RF_ONE - t) ** 2 * 2


def test_weight_specialisation_identity():
    s, t = qpow(4), qpow(2)
    for n in range(9):
        for lam in partitions_of(n):
            assert power_sum_norm_st(lam, s, t) == power_sum_norm_q(lam)
