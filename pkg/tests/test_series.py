import pytest

from qvertex.rational import RF_ONE, RF_ZERO, qpow
from qvertex.series import (
    PowerSeries,
    c_coefficient,
    cn_series,
    exp_series,
    inverse_step_series,
    poch_inf_series,
    poch_ratio_series,
)


def geometric(ratio, order):
    """Oracle: sum_k ratio^k x^k."""
    return PowerSeries({k: ratio ** k for k in range(order + 1)}, order)


def test_poch_inf_trivial_and_small():
    p = qpow(4)
    assert poch_inf_series(RF_ZERO, p, 6) == PowerSeries.one(6)
    # x coefficient of (x; q^4)oo is -1/(1-q^4); oracle: partial geometric
    # sums 1 + q^4 + ... + q^(4k) approach it with error q^(4(k+1))/(1-q^4)
    s = poch_inf_series(RF_ONE, p, 6)
    target = -s.coefficient(1)
    partial = sum((qpow(4 * k) for k in range(10)), RF_ZERO)
    assert target == partial + qpow(40) * target
    # x^2 coefficient of (q^2 x; q^4)oo is q^8/((1-q^4)(1-q^8))
    s2 = poch_inf_series(qpow(2), p, 4)
    assert s2.coefficient(2) == qpow(8) / ((RF_ONE - qpow(4)) * (RF_ONE - qpow(8)))


def test_poch_inf_euler_matches_product_with_tail():
    # the internal cross-check re-runs on every cache miss; exercise several
    p = qpow(4)
    for a in (RF_ONE, qpow(2), qpow(4), qpow(6)):
        for order in (0, 1, 3, 7, 10):
            poch_inf_series(a, p, order)


def test_poch_functional_equation():
    # (a x; p)oo = (1 - a x) (a p x; p)oo, an independent recurrence oracle
    a, p = qpow(2), qpow(4)
    lhs = poch_inf_series(a, p, 8)
    rhs = PowerSeries({0: RF_ONE, 1: -a}, 8) * poch_inf_series(a * p, p, 8)
    assert lhs == rhs


def test_exp_series_against_reciprocal():
    # exp(log-series of 1/(1-x)) == 1/(1-x)
    order = 8
    log = PowerSeries({k: RF_ONE / k for k in range(1, order + 1)}, order)
    assert exp_series(log) == geometric(RF_ONE, order)


def test_series_reciprocal_identity():
    s = cn_series(8)
    assert s * s.reciprocal() == PowerSeries.one(8)


def test_cn_values_frozen():
    one, q2, q4 = RF_ONE, qpow(2), qpow(4)
    assert c_coefficient(0) == one
    # enumeration over the single partition (1)
    assert c_coefficient(1) == -(q2 / (one + q2))
    # enumeration over the partitions (2) and (1,1)
    expected = q4 * (one / ((one + q2) ** 2 * 2) - one / ((one + q4) * 2))
    assert c_coefficient(2) == expected


def test_cn_three_routes_to_order_ten():
    cn_series(10)


def test_inverse_step_series():
    # composing with the C-series telescopes: ratio algebra oracle
    order = 8
    prod = inverse_step_series(order) * cn_series(order)
    assert prod == poch_ratio_series(RF_ONE, qpow(4), qpow(4), order)
    assert prod == PowerSeries({0: RF_ONE, 1: -RF_ONE}, order)


def test_order_validation():
    with pytest.raises(ValueError):
        PowerSeries({}, -1)
    with pytest.raises(ValueError):
        poch_inf_series(RF_ONE, qpow(4), -2)
