from fractions import Fraction
from itertools import combinations_with_replacement

import pytest

from qvertex.partitions import EMPTY, Partition, dominance_leq, partitions_of, power_sum_norm_q
from qvertex.rational import RF_ONE, RF_ZERO, qpow
from qvertex.symfun import (
    PoleAtOneError,
    SymFunc,
    adjoint_apply,
    collinear_ratio,
    combo_add,
    combo_scale,
    expand_row_combo,
    inner_product_q,
    inner_product_st,
    jack_P,
    lower_rows,
    macdonald_P,
    monomial_to_powersum,
    one_row_qzonal,
    phi21_operator,
    powersum_in_monomial,
    raise_rows,
    row_combo,
    specialize_q1,
    two_row_qzonal,
)

ONE = RF_ONE
Q2, Q4, Q6 = qpow(2), qpow(4), qpow(6)


def p(*parts):
    return SymFunc.power_sum(parts)


# -- ring structure ----------------------------------------------------------

def test_product_is_concatenation():
    assert p(1) * p(2) == p(2, 1)
    assert p(1) * p(1) == p(1, 1)
    assert SymFunc.zero() * p(3) == SymFunc.zero()
    f = p(2).scale(Q2) + p(1, 1)
    assert f * SymFunc.one() == f


# -- inner products ----------------------------------------------------------

def test_inner_product_examples():
    s, t = Q4, Q2
    assert inner_product_st(p(1), p(1), s, t) == (ONE - s) / (ONE - t)
    assert inner_product_st(p(1), p(2), s, t) == RF_ZERO
    assert inner_product_st(p(2, 1), p(2, 1), s, t) == (ONE + Q4) * (ONE + Q2) * 2
    assert inner_product_q(p(1), p(1)) == ONE + Q2
    assert inner_product_q(SymFunc.one(), SymFunc.one()) == ONE
    assert inner_product_q(p(2), p(2)) == (ONE + Q4) * 2


def test_inner_product_q_is_st_specialised():
    f = p(2, 1) + p(3).scale(Q2) + p(1, 1, 1).scale(ONE / (ONE + Q2))
    g = p(3) - p(2, 1).scale(Q4)
    assert inner_product_q(f, g) == inner_product_st(f, g, Q4, Q2)


# -- one-row functions -------------------------------------------------------

def test_one_row_small():
    assert one_row_qzonal(0) == SymFunc.one()
    assert one_row_qzonal(-3) == SymFunc.zero()
    assert one_row_qzonal(1) == p(1).scale(ONE / (ONE + Q2))
    expected = p(2).scale(ONE / ((ONE + Q4) * 2)) + \
        p(1, 1).scale(ONE / ((ONE + Q2) ** 2 * 2))
    assert one_row_qzonal(2) == expected


def test_one_row_scalar_products():
    for n in range(7):
        for m in range(7):
            val = inner_product_q(one_row_qzonal(n), one_row_qzonal(m))
            if n != m:
                assert val == RF_ZERO
            else:
                expected = sum((ONE / power_sum_norm_q(lam)
                                for lam in partitions_of(n)), RF_ZERO)
                assert val == expected


# -- adjoint operator --------------------------------------------------------

def test_adjoint_examples():
    assert adjoint_apply(p(1), p(1)) == SymFunc.one(ONE + Q2)
    assert adjoint_apply(p(1), p(1, 1)) == p(1).scale((ONE + Q2) * 2)
    assert adjoint_apply(p(2), p(1)) == SymFunc.zero()


def test_adjointness_property():
    # <p_n f, g> = <f, D(p_n) g> for all basis elements of low degree
    for n in range(1, 6):
        for df in range(0, 6 - 1):
            for dg in range(0, 6):
                for lam in partitions_of(df):
                    for mu in partitions_of(dg):
                        f, g = p(*lam), p(*mu)
                        lhs = inner_product_q(f.mul_power_sum((n,), ONE), g)
                        rhs = inner_product_q(f, adjoint_apply(p(n), g))
                        assert lhs == rhs


# -- raising / lowering ------------------------------------------------------

def test_row_shift_operators():
    assert raise_rows(row_combo(2, 1)) == {(3, 0): ONE}
    assert raise_rows(row_combo(2, 0)) == {}
    assert raise_rows(raise_rows(row_combo(1, 2))) == {(3, 0): ONE}
    assert lower_rows(row_combo(1, 2)) == {(0, 3): ONE}
    assert lower_rows(row_combo(0, 2)) == {}
    assert expand_row_combo(row_combo(3, 0)) == one_row_qzonal(3)


def test_phi21_trivial_cases():
    # zero argument leaves the target expanded but unchanged
    out = phi21_operator(Q2, Q4, Q6, Q4, RF_ZERO, raise_rows, row_combo(2, 1))
    assert out == one_row_qzonal(2) * one_row_qzonal(1)
    # b = 1 kills every term past n = 0
    out = phi21_operator(Q2, ONE, Q2, Q4, Q2, raise_rows,
                         combo_add(row_combo(0, 0),
                                   combo_scale(raise_rows(row_combo(0, 0)), -ONE)))
    assert out == SymFunc.one()


# -- two-row functions -------------------------------------------------------

def frozen_two_row_11():
    # hand evaluation of the terminating series for shape (1,1):
    # Z_11 = Z_1^2 - (1+q^4)/(1+q^2+q^4) Z_2 = (p_11 - p_2) / (2 (1+q^2+q^4))
    den = (ONE + Q2 + Q4) * 2
    return (p(1, 1) - p(2)).scale(ONE / den)


def test_two_row_11_frozen():
    assert two_row_qzonal(1, 1) == frozen_two_row_11()


def test_two_row_degenerations():
    assert two_row_qzonal(0, 0) == SymFunc.one()
    for r in range(1, 5):
        assert two_row_qzonal(r, 0) == one_row_qzonal(r)
    with pytest.raises(ValueError):
        two_row_qzonal(1, 2)


# -- monomial transition -----------------------------------------------------

def test_monomial_to_powersum_known():
    assert monomial_to_powersum((1,)) == p(1)
    # Newton-identity oracle: m_11 = e_2 = (p_1^2 - p_2)/2
    half = RF_ONE / 2
    assert monomial_to_powersum((1, 1)) == (p(1, 1) - p(2)).scale(half)
    # single-part monomial IS the power sum
    assert monomial_to_powersum((2,)) == p(2)
    assert monomial_to_powersum((3,)) == p(3)
    # e_3 = m_111 = (p_111 - 3 p_21 + 2 p_3)/6
    sixth = RF_ONE / 6
    expected = (p(1, 1, 1) - p(2, 1).scale(3) + p(3).scale(2)).scale(sixth)
    assert monomial_to_powersum((1, 1, 1)) == expected


def test_monomial_to_powersum_nvars_independent():
    for lam in [(2, 1), (2, 2), (3, 1, 1)]:
        n = sum(lam)
        assert monomial_to_powersum(lam, n) == monomial_to_powersum(lam, n + 2)


def test_monomial_powersum_round_trip():
    for n in range(1, 7):
        for lam in partitions_of(n):
            back = SymFunc.zero()
            for mu, c in powersum_in_monomial(lam).items():
                back = back + monomial_to_powersum(mu).scale(
                    RF_ONE.from_fraction(c))
            assert back == p(*lam)


# -- Macdonald functions -----------------------------------------------------

def test_macdonald_degree_one_and_1n():
    assert macdonald_P((1,), Q4, Q2) == p(1)
    # P_(1^n) = e_n for every parameter choice
    assert macdonald_P((1, 1), Q4, Q2) == monomial_to_powersum((1, 1))
    assert macdonald_P((1, 1, 1), Q4, Q2) == monomial_to_powersum((1, 1, 1))


def test_macdonald_orthogonality():
    for n in range(2, 6):
        basis = [macdonald_P(lam, Q4, Q2) for lam in partitions_of(n)]
        for f, g in combinations_with_replacement(range(len(basis)), 2):
            ip = inner_product_st(basis[f], basis[g], Q4, Q2)
            if f == g:
                assert not ip.is_zero()
            else:
                assert ip.is_zero()


def test_macdonald_monic_triangular_in_monomials():
    for n in range(2, 6):
        for lam in partitions_of(n):
            P = macdonald_P(lam, Q4, Q2)
            expansion = {}
            for mu, c in P.terms.items():
                for nu, frac in powersum_in_monomial(mu).items():
                    expansion[nu] = expansion.get(nu, RF_ZERO) + \
                        c * RF_ONE.from_fraction(frac)
            expansion = {nu: c for nu, c in expansion.items() if not c.is_zero()}
            assert expansion[lam] == RF_ONE
            for nu in expansion:
                assert dominance_leq(nu, lam)


def test_one_row_collinear_with_macdonald():
    for n in range(1, 7):
        ratio = collinear_ratio(one_row_qzonal(n), macdonald_P((n,), Q4, Q2))
        assert ratio is not None and not ratio.is_zero()


def test_two_row_collinear_with_macdonald():
    for r in range(1, 5):
        for m in range(1, r + 1):
            if r + m > 6:
                continue
            ratio = collinear_ratio(two_row_qzonal(r, m),
                                    macdonald_P((r, m), Q4, Q2))
            assert ratio is not None and not ratio.is_zero()


# -- zonal limit -------------------------------------------------------------

def test_specialize_q1():
    assert specialize_q1(SymFunc.one()) == SymFunc.one()
    assert specialize_q1(one_row_qzonal(1)) == p(1).scale(RF_ONE / 2)
    expected = p(2).scale(RF_ONE / 4) + p(1, 1).scale(RF_ONE / 8)
    assert specialize_q1(one_row_qzonal(2)) == expected
    pole = p(1).scale(RF_ONE / (RF_ONE - Q2))
    with pytest.raises(PoleAtOneError) as err:
        specialize_q1(pole)
    assert err.value.partition == Partition((1,))


def test_zonal_limit_matches_jack_alpha_two():
    for n in range(1, 6):
        zonal = specialize_q1(macdonald_P((n,), Q4, Q2))
        jack = jack_P((n,), Fraction(2))
        ratio = collinear_ratio(zonal, jack)
        assert ratio is not None and not ratio.is_zero()
