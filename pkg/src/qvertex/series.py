"""Truncated power series in one formal variable over Q(q).

Provides the Euler expansion of infinite q-Pochhammer products and the
expansion coefficients of the ratio (q^2 x; q^4)oo / (q^4 x; q^4)oo, each
cross-checked against independent computations.  Truncation order is always
an explicit argument, never ambient state.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import partitions_of, power_sum_norm_q
from .rational import ConsistencyError, RF_ONE, RF_ZERO, RationalFunction, qpow


class PowerSeries:
    """Power series in one variable, exact through `order` (inclusive)."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        self.order = order
        self.coeffs = {e: c for e, c in sorted(coeffs.items())
                       if e <= order and not c.is_zero()}
        if any(e < 0 for e in self.coeffs):
            raise ValueError("power series exponents must be nonnegative")

    @classmethod
    def constant(cls, value, order):
        return cls({0: value}, order)

    @classmethod
    def one(cls, order):
        return cls({0: RF_ONE}, order)

    def coefficient(self, e) -> RationalFunction:
        return self.coeffs.get(e, RF_ZERO)

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return all(self.coefficient(e) == other.coefficient(e)
                   for e in range(n + 1))

    def __add__(self, other):
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, RF_ZERO) + c
        return PowerSeries(out, min(self.order, other.order))

    def __neg__(self):
        return PowerSeries({e: -c for e, c in self.coeffs.items()}, self.order)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (RationalFunction, int)):
            return PowerSeries({e: c * other for e, c in self.coeffs.items()},
                               self.order)
        n = min(self.order, other.order)
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if e <= n:
                    out[e] = out.get(e, RF_ZERO) + c1 * c2
        return PowerSeries(out, n)

    __rmul__ = __mul__

    def reciprocal(self):
        c0 = self.coefficient(0)
        if c0.is_zero():
            raise ZeroDivisionError("series with zero constant term")
        inv0 = RF_ONE / c0
        out = {0: inv0}
        for n in range(1, self.order + 1):
            acc = RF_ZERO
            for k in range(1, n + 1):
                ck = self.coefficient(k)
                if not ck.is_zero():
                    acc = acc + ck * out.get(n - k, RF_ZERO)
            out[n] = -inv0 * acc
        return PowerSeries(out, self.order)

    def __truediv__(self, other):
        return self * other.reciprocal()

    def truncate(self, order):
        return PowerSeries(self.coeffs, min(order, self.order))

    def __repr__(self):
        body = " + ".join(f"({c})*x^{e}" for e, c in self.coeffs.items())
        return f"PowerSeries({body or '0'}; order={self.order})"


def exp_series(s: PowerSeries) -> PowerSeries:
    """exp of a series with zero constant term, via E' = S'E."""
    if not s.coefficient(0).is_zero():
        raise ValueError("exp needs a series with zero constant term")
    out = {0: RF_ONE}
    for n in range(1, s.order + 1):
        acc = RF_ZERO
        for k in range(1, n + 1):
            sk = s.coefficient(k)
            if not sk.is_zero():
                acc = acc + sk * out.get(n - k, RF_ZERO) * k
        out[n] = acc / n
    return PowerSeries(out, s.order)


def _euler_expansion(a: RationalFunction, p: RationalFunction, order: int) -> PowerSeries:
    """(a x; p)oo = sum_k (-1)^k p^(k(k-1)/2) a^k x^k / (p; p)_k."""
    out = {0: RF_ONE}
    term = RF_ONE
    pk = RF_ONE  # p^(k-1) while building term k
    for k in range(1, order + 1):
        term = term * (-(a * pk)) / (RF_ONE - p ** k)
        pk = pk * p
        out[k] = term
    return PowerSeries(out, order)


@lru_cache(maxsize=None)
def poch_inf_series(a_coef: RationalFunction, p: RationalFunction, order: int) -> PowerSeries:
    """Expansion of the infinite product prod_{n>=0} (1 - a_coef p^n x) in x.

    Computed by the Euler expansion; cross-checked against the product of the
    first order+1 factors times the Euler expansion of the remaining tail.
    """
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    main = _euler_expansion(a_coef, p, order)
    check = _euler_expansion(a_coef * p ** (order + 1), p, order)
    factor = RF_ONE
    for _ in range(order + 1):
        check = check * PowerSeries({0: RF_ONE, 1: -a_coef * factor}, order)
        factor = factor * p
    if main != check:
        raise ConsistencyError("Euler expansion disagrees with direct product")
    return main


@lru_cache(maxsize=None)
def poch_ratio_series(a: RationalFunction, b: RationalFunction,
                      p: RationalFunction, order: int) -> PowerSeries:
    """Expansion of (a x; p)oo / (b x; p)oo."""
    return poch_inf_series(a, p, order) / poch_inf_series(b, p, order)


@lru_cache(maxsize=None)
def cn_series(order: int) -> PowerSeries:
    """Coefficients C_n of (q^2 x; q^4)oo / (q^4 x; q^4)oo.

    Three independent routes must agree before the result is returned:
      (i)  the quotient of the two Euler expansions,
      (ii) exp(-sum_k q^(2k) x^k / (k (1 + q^(2k)))),
      (iii) C_n = sum over partitions of n of (-1)^len q^(2n) / z_lam(q).
    """
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    q2, q4 = qpow(2), qpow(4)
    ratio = poch_ratio_series(q2, q4, q4, order)

    log_terms = {k: -qpow(2 * k) / ((RF_ONE + qpow(2 * k)) * k)
                 for k in range(1, order + 1)}
    exp_form = exp_series(PowerSeries(log_terms, order))

    part_form = PowerSeries(
        {n: sum((((-1) ** lam.length()) * (RF_ONE / power_sum_norm_q(lam))
                 for lam in partitions_of(n)), RF_ZERO) * qpow(2 * n)
         for n in range(order + 1)},
        order)

    if not (ratio == exp_form and ratio == part_form):
        raise ConsistencyError("the three C-coefficient routes disagree")
    return ratio


def c_coefficient(n: int) -> RationalFunction:
    return cn_series(n).coefficient(n)


@lru_cache(maxsize=None)
def inverse_step_series(order: int) -> PowerSeries:
    """Coefficients of (x; q^4)oo / (q^2 x; q^4)oo.

    This is the same exponential shape as `cn_series` with the q^(2k)
    numerator removed; composing the two operatorwise telescopes to (1 - x).
    """
    log_terms = {k: RF_ZERO - RF_ONE / ((RF_ONE + qpow(2 * k)) * k)
                 for k in range(1, order + 1)}
    out = exp_series(PowerSeries(log_terms, order))
    if out != poch_ratio_series(RF_ONE, qpow(2), qpow(4), order):
        raise ConsistencyError("inverse-step series routes disagree")
    return out
