"""Truncated formal Laurent series with Fock-space coefficients.

Exponents are half-integers stored doubled, so the bookkeeping for the
formal (-q^3 z)^(1/2) factors stays exact.  Every series carries, per
variable, a storage window [lo2, hi2] (doubled): all coefficients inside the
window are stored exactly, everything outside is dropped.  `support_lo2`
additionally records a proven lower bound of the true support (None when the
true object extends arbitrarily far down); products combine windows so that
the result's window again only contains exact coefficients.  An optional
`total_hi2` caps the region of guaranteed exactness by total degree, which is
how products with ratio-type prefactor series stay honest.

Two-variable series fix an expansion-region annotation at construction;
multiplying series expanded in different regions is an error since the same
rational prefactor has different expansions in different regions.
"""

from __future__ import annotations

import warnings
from fractions import Fraction
from functools import lru_cache

from .fock import FockVector, SigmaError
from .rational import RF_ONE, RationalFunction, qpow
from .series import PowerSeries, cn_series
from .symfun import SymFunc, differentiate_power_sum


class TruncationWarning(UserWarning):
    """A coefficient outside the guaranteed-exact window was requested."""


def _doubled(e) -> int:
    if isinstance(e, int):
        return 2 * e
    f = Fraction(e)
    if f.denominator == 1:
        return 2 * f.numerator
    if f.denominator == 2:
        return f.numerator
    raise ValueError(f"exponent {e} is not a half-integer")


class FockSeries:
    """Laurent series in one or two variables with FockVector coefficients."""

    __slots__ = ("variables", "coeffs", "lo2", "hi2", "support_lo2",
                 "total_hi2", "region")

    def __init__(self, variables, coeffs, lo2, hi2, support_lo2=None,
                 total_hi2=None, region=None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        if nv not in (1, 2):
            raise ValueError("series take one or two variables")
        self.lo2 = tuple(lo2)
        self.hi2 = tuple(hi2)
        self.support_lo2 = tuple(support_lo2) if support_lo2 is not None \
            else (None,) * nv
        self.total_hi2 = total_hi2
        self.region = tuple(region) if region is not None else None
        self.coeffs = {}
        for exps, vec in coeffs.items():
            if vec and self._inside(exps):
                self.coeffs[exps] = vec

    def _inside(self, exps):
        for e, lo, hi in zip(exps, self.lo2, self.hi2):
            if e < lo or e > hi:
                return False
        if self.total_hi2 is not None and sum(exps) > self.total_hi2:
            return False
        return True

    def is_zero(self):
        return not self.coeffs

    def items(self):
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, FockSeries):
            return NotImplemented
        return (self.variables == other.variables
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        if self.variables != other.variables:
            raise ValueError("variable mismatch")
        _require_same_region(self, other)
        out = dict(self.coeffs)
        for exps, vec in other.coeffs.items():
            s = out.get(exps)
            s = vec if s is None else s + vec
            if s:
                out[exps] = s
            elif exps in out:
                del out[exps]
        lo2 = tuple(map(max, self.lo2, other.lo2))
        hi2 = tuple(map(min, self.hi2, other.hi2))
        supp = tuple(None if (a is None or b is None) else min(a, b)
                     for a, b in zip(self.support_lo2, other.support_lo2))
        total = _min_opt(self.total_hi2, other.total_hi2)
        return FockSeries(self.variables, out, lo2, hi2, supp, total, self.region)

    def scale(self, c) -> "FockSeries":
        return FockSeries(self.variables,
                          {e: v.scale(c) for e, v in self.coeffs.items()},
                          self.lo2, self.hi2, self.support_lo2, self.total_hi2,
                          self.region)

    def shift(self, delta2, sigma2=0, scalar=None) -> "FockSeries":
        """Multiply by a monomial: exponent shift, sigma shift, scalar."""
        delta2 = tuple(delta2)
        out = {}
        for exps, vec in self.coeffs.items():
            new = tuple(e + d for e, d in zip(exps, delta2))
            if sigma2:
                vec = vec.shift_sigma(sigma2)
            if scalar is not None:
                vec = vec.scale(scalar)
            out[new] = vec
        lo2 = tuple(a + d for a, d in zip(self.lo2, delta2))
        hi2 = tuple(a + d for a, d in zip(self.hi2, delta2))
        supp = tuple(None if a is None else a + d
                     for a, d in zip(self.support_lo2, delta2))
        total = None if self.total_hi2 is None else self.total_hi2 + sum(delta2)
        return FockSeries(self.variables, out, lo2, hi2, supp, total, self.region)

    def map_states(self, fn) -> "FockSeries":
        out = {}
        for exps, vec in self.coeffs.items():
            v = fn(vec)
            if v:
                out[exps] = v
        return FockSeries(self.variables, out, self.lo2, self.hi2,
                          self.support_lo2, self.total_hi2, self.region)


def _min_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _require_same_region(a: FockSeries, b: FockSeries):
    if a.region is not None and b.region is not None and a.region != b.region:
        raise ValueError(f"expansion regions differ: {a.region} vs {b.region}")


def constant_series(vec: FockVector, variables=("z",), lo2=(0,), hi2=(0,),
                    region=None) -> FockSeries:
    nv = len(variables)
    return FockSeries(variables, {(0,) * nv: vec}, lo2, hi2,
                      support_lo2=(0,) * nv, total_hi2=None, region=region)


def multiply(a: FockSeries, b: FockSeries) -> FockSeries:
    """Cauchy product of two series over the same variables and region.

    Both factors need a proven lower support bound; the product window is
    clipped to where every contributing pair of stored coefficients exists.
    """
    if a.variables != b.variables:
        raise ValueError("variable mismatch")
    _require_same_region(a, b)
    if any(s is None for s in a.support_lo2 + b.support_lo2):
        raise ValueError("general products need support lower bounds")
    if a.total_hi2 is not None or b.total_hi2 is not None:
        raise ValueError("general products do not combine total-degree caps")
    lo2 = tuple(x + y for x, y in zip(a.support_lo2, b.support_lo2))
    hi2 = tuple(min(ah + bs, bh + as_)
                for ah, bs, bh, as_ in
                zip(a.hi2, b.support_lo2, b.hi2, a.support_lo2))
    out = {}
    for e1, v1 in a.coeffs.items():
        for e2, v2 in b.coeffs.items():
            exps = tuple(x + y for x, y in zip(e1, e2))
            if any(e > h for e, h in zip(exps, hi2)):
                continue
            prod = _tensor_mul(v1, v2)
            if prod:
                s = out.get(exps)
                s = prod if s is None else s + prod
                if s:
                    out[exps] = s
                elif exps in out:
                    del out[exps]
    return FockSeries(a.variables, out, lo2, hi2, support_lo2=lo2,
                      total_hi2=None, region=a.region or b.region)


def _tensor_mul(u: FockVector, v: FockVector) -> FockVector:
    if u.dual != v.dual:
        raise ValueError("cannot multiply a vector by a dual vector")
    out = FockVector(dual=u.dual)
    for (k1, s1), sym1 in u.parts.items():
        for (k2, s2), sym2 in v.parts.items():
            piece = FockVector({(k1 + k2, s1 + s2): sym1 * sym2}, u.dual)
            out = out + piece
    return out


# ---------------------------------------------------------------------------
# exponentials of mode sums
# ---------------------------------------------------------------------------

def _apply_one_mode(vec: FockVector, n: int, creating: bool) -> FockVector:
    """Apply one content b-mode, creating or annihilating relative to the
    vector kind (kets and duals mirror)."""
    if creating:
        return vec.map_syms(lambda sym: sym.mul_power_sum((n,), RF_ONE))
    factor = (RF_ONE + qpow(2 * n)) * n
    return vec.map_syms(
        lambda sym: differentiate_power_sum(sym, n).scale(factor))


def exp_modes_series(coeff_fn, vec: FockVector, *, creating: bool,
                     exp_sign: int, lo2: int, hi2: int, var: str = "z",
                     region=None) -> FockSeries:
    """Expansion of exp(sum_n coeff_fn(n) b_(sign n) var^(exp_sign n)) . vec.

    `creating` says whether the modes add content to `vec` (for kets these
    are the b_(-n), for duals the left action of b_(+n)); annihilating
    towers terminate at the content degree of `vec`.  The exponential is
    expanded as the product over n of the single-mode towers, accumulating
    mode by mode.
    """
    if creating:
        dmax = hi2 // 2 if exp_sign > 0 else -(lo2 // 2)
        support = 0 if exp_sign > 0 else None
    else:
        dmax = vec.max_degree()
        if exp_sign < 0:
            support = -2 * dmax
            lo2 = min(lo2, support)  # keep the whole terminating tower stored
        else:
            support = 0
    dmax = max(dmax, 0)
    by_degree = {0: vec}
    for n in range(1, dmax + 1):
        c = coeff_fn(n)
        if not c:
            continue
        out = dict(by_degree)
        for d, v in by_degree.items():
            term = v
            j = 0
            while d + n * (j + 1) <= dmax:
                j += 1
                term = _apply_one_mode(term, n, creating).scale(c / j)
                if not term:
                    break
                key = d + n * j
                s = out.get(key)
                s = term if s is None else s + term
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        by_degree = out
    coeffs = {(2 * d * exp_sign,): v for d, v in by_degree.items() if v}
    return FockSeries((var,), coeffs, (lo2,), (hi2,),
                      support_lo2=(support,), total_hi2=None, region=region)


def exp_creation_series(coeff_fn, vec: FockVector, order: int,
                        var: str = "z") -> FockSeries:
    """exp(sum_n coeff_fn(n) b_(-n) var^n) applied to a vector, through var^order."""
    return exp_modes_series(coeff_fn, vec, creating=not vec.dual, exp_sign=+1,
                            lo2=0, hi2=2 * order, var=var)


def exp_annihilation_series(coeff_fn, vec: FockVector, order: int,
                            var: str = "z") -> FockSeries:
    """exp(sum_n coeff_fn(n) b_(+n) var^(-n)) applied to a vector.

    On a ket the tower terminates at the content degree; the window still
    clips at var^(-order).
    """
    return exp_modes_series(coeff_fn, vec, creating=vec.dual, exp_sign=-1,
                            lo2=-2 * order, hi2=0, var=var)


# ---------------------------------------------------------------------------
# operator-product prefactors
# ---------------------------------------------------------------------------

class Prefactor:
    """Scalar prefactor of an operator product in a stated region.

    Shape: (-q^3)^(sigma2/2) * z^(z_shift2/2) * series(w/z), with the ratio
    series exact through its order.
    """

    __slots__ = ("z_shift2", "sigma2", "series", "region")

    def __init__(self, z_shift2, sigma2, series, region=("z", "w")):
        self.z_shift2 = z_shift2
        self.sigma2 = sigma2
        self.series = series
        self.region = tuple(region)


OPE_KINDS = ("phi_phi", "e_phi", "phi_e", "e_e")


@lru_cache(maxsize=None)
def ope_prefactor(kind: str, order: int) -> Prefactor:
    """Prefactor relating a product of operator series to its normal-ordered
    form, expanded in w/z (the region where w is the smaller variable).

      phi_phi: (-q^3 z)^(1/2) (q^2 w/z; q^4)oo / (q^4 w/z; q^4)oo
      e_phi:   z^(-1) / (1 - q^4 w/z)
      phi_e:   -(z q^3)^(-1) / (1 - q^(-2) w/z)
      e_e:     z^2 (1 - w/z)(1 - q^2 w/z)
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if kind == "phi_phi":
        return Prefactor(1, 1, cn_series(order))
    if kind == "e_phi":
        series = PowerSeries({k: qpow(4 * k) for k in range(order + 1)}, order)
        return Prefactor(-2, 0, series)
    if kind == "phi_e":
        series = PowerSeries({k: qpow(-2 * k - 3, -1) for k in range(order + 1)},
                             order)
        return Prefactor(-2, 0, series)
    if kind == "e_e":
        q2 = qpow(2)
        series = PowerSeries({0: RF_ONE, 1: -(RF_ONE + q2), 2: q2}, order)
        return Prefactor(4, 0, series)
    raise ValueError(f"unknown prefactor kind {kind!r}")


def scale_by_prefactor(series: FockSeries, pref: Prefactor,
                       ratio_vars=("z", "w")) -> FockSeries:
    """Multiply a two-variable series by a prefactor expanded in w/z.

    The result's guaranteed-exact region picks up a total-degree cap, since
    the ratio series has unbounded negative z-powers.
    """
    iz = series.variables.index(ratio_vars[0])
    iw = series.variables.index(ratio_vars[1])
    if series.region is not None and series.region != pref.region:
        raise ValueError(f"expansion regions differ: {series.region} vs "
                         f"{pref.region}")
    wlo = series.support_lo2[iw]
    if wlo is None:
        raise ValueError("prefactor products need a w-support lower bound")
    if series.total_hi2 is not None:
        raise ValueError("prefactor products do not stack total-degree caps")
    # the stored windows must reach down to the true support in both
    # variables, otherwise missing bottom terms would corrupt the product
    if series.lo2[iw] > wlo:
        raise ValueError("w window is bottom-truncated")
    zsupp = series.support_lo2[iz]
    if zsupp is None or series.lo2[iz] > zsupp:
        raise ValueError("z window is bottom-truncated")
    k_needed = (series.hi2[iw] - wlo + 1) // 2
    if pref.series.order < k_needed:
        raise ValueError(f"prefactor order {pref.series.order} too small; "
                         f"need {k_needed}")
    out = {}
    for exps, vec in series.coeffs.items():
        if pref.sigma2:
            vec = vec.shift_sigma(pref.sigma2)
        for k in range(pref.series.order + 1):
            c = pref.series.coefficient(k)
            if c.is_zero():
                continue
            new = list(exps)
            new[iz] += pref.z_shift2 - 2 * k
            new[iw] += 2 * k
            piece = vec.scale(c)
            key = tuple(new)
            s = out.get(key)
            s = piece if s is None else s + piece
            if s:
                out[key] = s
            elif key in out:
                del out[key]
    hi2 = list(series.hi2)
    hi2[iz] += pref.z_shift2
    lo2 = list(series.lo2)
    lo2[iz] = lo2[iz] + pref.z_shift2 - 2 * pref.series.order
    supp = list(series.support_lo2)
    supp[iz] = None
    total = series.hi2[iz] + pref.z_shift2 + wlo
    return FockSeries(series.variables, out, lo2, hi2, supp, total,
                      region=series.region or pref.region)


# ---------------------------------------------------------------------------
# coefficient extraction
# ---------------------------------------------------------------------------

def coefficient_at(series: FockSeries, exponents) -> FockVector:
    """The coefficient at the given (half-integer) exponents, with the sigma
    grade folded into the scalars.

    Out-of-window exponents return zero with a TruncationWarning; components
    with half-integral sigma raise SigmaError.
    """
    if not isinstance(exponents, tuple):
        exponents = (exponents,)
    exps = tuple(_doubled(e) for e in exponents)
    if len(exps) != len(series.variables):
        raise ValueError("exponent arity mismatch")
    if not series._inside(exps):
        warnings.warn(f"exponent {exponents} outside the guaranteed window",
                      TruncationWarning, stacklevel=2)
        return FockVector()
    vec = series.coeffs.get(exps)
    if vec is None:
        return FockVector()
    return vec.fold_sigma()
