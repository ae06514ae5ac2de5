import pytest

from qvertex.fock import FockVector, SigmaError
from qvertex.rational import RF_ONE, qpow
from qvertex.series import PowerSeries, c_coefficient
from qvertex.symfun import SymFunc
from qvertex.vseries import (
    FockSeries,
    TruncationWarning,
    coefficient_at,
    constant_series,
    exp_annihilation_series,
    exp_creation_series,
    exp_modes_series,
    multiply,
    ope_prefactor,
    scale_by_prefactor,
)

VAC = FockVector.vacuum()
ONE = RF_ONE
Q2, Q4 = qpow(2), qpow(4)


def ket(*parts, k=0, sigma2=0):
    return FockVector.from_sym(SymFunc.power_sum(parts), k=k, sigma2=sigma2)


def vo_creation_coeff(n):
    return qpow(4 * n) / ((ONE + qpow(2 * n)) * n)


def test_exp_creation_trivial_and_first_order():
    zero_fn = lambda n: qpow(0, 0)
    s = exp_creation_series(zero_fn, VAC, 5)
    assert s.coeffs == {(0,): VAC}
    c = Q2
    s = exp_creation_series(lambda n: c, VAC, 3)
    assert coefficient_at(s, 1) == ket(1).scale(c)


def test_exp_creation_matches_partition_sum():
    # degree-2 coefficient of the vertex-operator creation exponential on the
    # vacuum: q^8 * (p_2/(2(1+q^4)) + p_11/(2(1+q^2)^2)); multinomial oracle
    s = exp_creation_series(vo_creation_coeff, VAC, 4)
    expected = (ket(2).scale(ONE / ((ONE + Q4) * 2)) +
                ket(1, 1).scale(ONE / ((ONE + Q2) ** 2 * 2))).scale(qpow(8))
    assert coefficient_at(s, 2) == expected


def test_exp_annihilation_on_vacuum_and_descendant():
    c = Q4
    s = exp_annihilation_series(lambda n: c, VAC, 4)
    assert s.coeffs == {(0,): VAC}
    s = exp_annihilation_series(lambda n: c, ket(1), 4)
    assert coefficient_at(s, 0) == ket(1)
    assert coefficient_at(s, -1) == VAC.scale(c * (ONE + Q2))
    # window clips below the requested order
    narrow = exp_annihilation_series(lambda n: c, ket(1), 1)
    assert narrow.lo2[0] == -2


def test_exp_reordering_on_vacuum():
    # annihilation exponential acts as the identity on the vacuum, so the
    # creation series equals creation-after-annihilation
    cre = exp_creation_series(vo_creation_coeff, VAC, 8)
    ann_first = exp_annihilation_series(lambda n: -qpow(-2 * n), VAC, 8)
    assert ann_first.coeffs == {(0,): VAC}
    again = exp_creation_series(vo_creation_coeff, VAC, 8)
    assert cre == again


def test_multiply_polynomials():
    one = constant_series(VAC, ("z",), lo2=(0,), hi2=(4,))
    z = FockSeries(("z",), {(2,): VAC}, (0,), (4,), (0,))
    a = one + z          # 1 + z
    b = one + z.scale(-ONE)  # 1 - z
    prod = multiply(a, b)
    assert coefficient_at(prod, 0) == VAC
    assert coefficient_at(prod, 1).is_zero()
    assert coefficient_at(prod, 2) == VAC.scale(-ONE)


def test_multiply_window_rules():
    a = FockSeries(("z",), {(0,): VAC}, (0,), (6,), (0,))
    b = FockSeries(("z",), {(0,): VAC}, (0,), (4,), (0,))
    prod = multiply(a, b)
    assert prod.hi2 == (4,)
    unbounded = FockSeries(("z",), {(0,): VAC}, (-2,), (2,), (None,))
    with pytest.raises(ValueError):
        multiply(a, unbounded)


def test_region_mismatch_rejected():
    a = FockSeries(("z", "w"), {(0, 0): VAC}, (0, 0), (2, 2), (0, 0),
                   region=("z", "w"))
    b = FockSeries(("z", "w"), {(0, 0): VAC}, (0, 0), (2, 2), (0, 0),
                   region=("w", "z"))
    with pytest.raises(ValueError):
        multiply(a, b)


def test_ope_prefactor_shapes():
    ee = ope_prefactor("e_e", 6)
    assert (ee.z_shift2, ee.sigma2) == (4, 0)
    assert ee.series.coefficient(0) == ONE
    assert ee.series.coefficient(1) == -(ONE + Q2)
    assert ee.series.coefficient(2) == Q2
    assert ee.series.coefficient(3).is_zero()

    pp = ope_prefactor("phi_phi", 6)
    assert (pp.z_shift2, pp.sigma2) == (1, 1)
    assert pp.series.coefficient(0) == ONE
    assert pp.series.coefficient(1) == c_coefficient(1)

    pe = ope_prefactor("phi_e", 6)
    assert (pe.z_shift2, pe.sigma2) == (-2, 0)
    for k in range(4):
        assert pe.series.coefficient(k) == -qpow(-3 - 2 * k)

    ep = ope_prefactor("e_phi", 6)
    assert ep.series.coefficient(2) == qpow(8)

    with pytest.raises(ValueError):
        ope_prefactor("nope", 3)


def test_scale_by_prefactor_total_cap():
    base = FockSeries(("z", "w"), {(0, 0): VAC, (2, 2): ket(1)},
                      (0, 0), (4, 4), (0, 0), region=("z", "w"))
    out = scale_by_prefactor(base, ope_prefactor("e_phi", 4))
    assert out.total_hi2 == 4 - 2 + 0
    # inside the cap the product is the plain geometric overlay
    assert out.coeffs[(-2, 0)] == VAC
    assert out.coeffs[(-4, 2)] == VAC.scale(Q4)


def test_coefficient_warnings_and_sigma():
    s = FockSeries(("z",), {(2,): ket(1, sigma2=1)}, (0,), (4,), (0,))
    with pytest.warns(TruncationWarning):
        out = coefficient_at(s, 5)
    assert out.is_zero()
    with pytest.raises(SigmaError):
        coefficient_at(s, 1)
    even = FockSeries(("z",), {(2,): ket(1, sigma2=2)}, (0,), (4,), (0,))
    assert coefficient_at(even, 1) == ket(1).scale(-qpow(3))


def test_half_integer_exponents():
    s = FockSeries(("z",), {(1,): VAC}, (0,), (3,), (0,))
    from fractions import Fraction
    assert coefficient_at(s, Fraction(1, 2)) == VAC
    with pytest.raises(ValueError):
        coefficient_at(s, Fraction(1, 3))


def test_dual_exp_series():
    dvac = FockVector.dual_vacuum()
    # dual creation by positive modes with negative variable exponents
    s = exp_modes_series(lambda n: RF_ONE / n, dvac, creating=True,
                         exp_sign=-1, lo2=-6, hi2=0, var="eta")
    got = s.coeffs[(-2,)]
    assert got == FockVector.from_sym(SymFunc.power_sum((1,)), dual=True)
