"""Symmetric functions in the power-sum basis over Q(q) (or any scalar field).

Carries the deformed inner products, the one-row and two-row q-zonal
functions, the raising/lowering operators on products of one-row functions,
the terminating basic-hypergeometric operator series, an independent
Gram-Schmidt construction of two-parameter Macdonald functions, and the q=1
zonal/Jack specialisation.

Coefficients are generic: any scalar type with ring operators, truthiness as
a zero test, `**`, `/` and a `from_fraction` classmethod works (both the
univariate Q(q) kernel and the bivariate Q(s,t) kernel qualify).
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .partitions import EMPTY, Partition, partitions_of, power_sum_norm_q, power_sum_norm_st
from .rational import ConsistencyError, RF_ONE, RF_ZERO, RationalFunction, qpow


class PoleAtOneError(ValueError):
    """A coefficient has a pole at q=1; carries the offending partition."""

    def __init__(self, partition):
        super().__init__(f"coefficient of p_{tuple(partition)} has a pole at q=1")
        self.partition = partition


class SymFunc:
    """Finite linear combination of power sums p_lam; immutable by convention."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        if terms:
            for lam, c in terms.items():
                if c:
                    self.terms[Partition(lam)] = c

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls, scalar_one=RF_ONE):
        return cls({EMPTY: scalar_one})

    @classmethod
    def power_sum(cls, lam, coeff=RF_ONE):
        return cls({Partition(lam): coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            return NotImplemented
        return self.terms == other.terms

    def coefficient(self, lam):
        return self.terms.get(Partition(lam), RF_ZERO)

    def degrees(self):
        return sorted({lam.weight() for lam in self.terms})

    def max_degree(self):
        return max((lam.weight() for lam in self.terms), default=0)

    def __add__(self, other):
        out = dict(self.terms)
        for lam, c in other.terms.items():
            s = out.get(lam)
            s = c if s is None else s + c
            if s:
                out[lam] = s
            elif lam in out:
                del out[lam]
        res = SymFunc()
        res.terms = out
        return res

    def __neg__(self):
        res = SymFunc()
        res.terms = {lam: -c for lam, c in self.terms.items()}
        return res

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return SymFunc()
        res = SymFunc()
        res.terms = {lam: v * c for lam, v in self.terms.items()}
        return res

    def __mul__(self, other):
        """Product; power sums multiply by merging part multisets."""
        if not isinstance(other, SymFunc):
            return self.scale(other)
        out = {}
        for lam, c1 in self.terms.items():
            for mu, c2 in other.terms.items():
                key = Partition(sorted(lam + mu, reverse=True))
                c = c1 * c2
                s = out.get(key)
                s = c if s is None else s + c
                if s:
                    out[key] = s
                elif key in out:
                    del out[key]
        res = SymFunc()
        res.terms = out
        return res

    def mul_power_sum(self, parts, coeff):
        """Fast path: multiply by coeff * p_parts."""
        if not coeff:
            return SymFunc()
        res = SymFunc()
        res.terms = {Partition(sorted(lam + tuple(parts), reverse=True)): c * coeff
                     for lam, c in self.terms.items()}
        return res

    def map_coefficients(self, fn):
        out = SymFunc()
        out.terms = {lam: v for lam, c in self.terms.items() if (v := fn(lam, c))}
        return out

    def sorted_terms(self):
        """Terms with partitions in reverse-lexicographic order."""
        return sorted(self.terms.items(), key=lambda kv: tuple(kv[0]), reverse=True)

    def to_json(self):
        return {"basis": "powersum",
                "terms": [{"partition": lam.to_json(), "coeff": c.to_json()}
                          for lam, c in self.sorted_terms()]}

    def __repr__(self):
        body = " + ".join(f"({c})*p{tuple(lam)}" for lam, c in self.sorted_terms())
        return f"SymFunc({body or '0'})"


def differentiate_power_sum(f: SymFunc, n: int) -> SymFunc:
    """The plain derivative d/dp_n in the power-sum basis."""
    out = SymFunc()
    acc = {}
    for lam, c in f.terms.items():
        m = lam.multiplicities().get(n, 0)
        if m:
            key = lam.remove_part(n)
            s = acc.get(key)
            v = c * m
            acc[key] = v if s is None else s + v
    out.terms = {k: v for k, v in acc.items() if v}
    return out


def inner_product_st(f: SymFunc, g: SymFunc, s, t):
    """<f, g> with <p_lam, p_mu> = delta * z_lam(s, t)."""
    out = None
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            v = c * d * power_sum_norm_st(lam, s, t)
            out = v if out is None else out + v
    if out is None:
        return (s ** 0) - (s ** 0)
    return out


def inner_product_q(f: SymFunc, g: SymFunc) -> RationalFunction:
    """<f, g> with <p_lam, p_mu> = delta * z_lam(q)."""
    out = RF_ZERO
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            out = out + c * d * power_sum_norm_q(lam)
    return out


def adjoint_apply(f: SymFunc, g: SymFunc) -> SymFunc:
    """Apply the adjoint of multiplication by f under the q-deformed pairing.

    Each p_n factor of f acts on g as the derivation n (1 + q^(2n)) d/dp_n.
    """
    out = SymFunc()
    for lam, c in f.terms.items():
        h = g
        for part in lam:
            h = differentiate_power_sum(h, part).scale(
                (RF_ONE + qpow(2 * part)) * part)
            if h.is_zero():
                break
        out = out + h.scale(c)
    return out


@lru_cache(maxsize=None)
def one_row_qzonal(n: int) -> SymFunc:
    """The one-row state polynomial: sum over |lam| = n of p_lam / z_lam(q).

    Returns 1 for n = 0 and 0 for n < 0 so that index-shift operator series
    terminate.
    """
    if n < 0:
        return SymFunc.zero()
    return SymFunc({lam: RF_ONE / power_sum_norm_q(lam)
                    for lam in partitions_of(n)})


# ---------------------------------------------------------------------------
# ordered products of one-row functions and index-shift operators
# ---------------------------------------------------------------------------
# A row combination maps an ordered index pair (r, s) to a scalar multiple of
# the product Z_r * Z_s; index 0 stands for the constant 1, and shifts that
# would drive an index negative annihilate the term.

def row_combo(r: int, s: int, coeff=RF_ONE) -> dict:
    if r < 0 or s < 0:
        return {}
    return {(r, s): coeff}


def raise_rows(combo: dict) -> dict:
    """(r, s) -> (r+1, s-1); terms with s = 0 vanish."""
    out = {}
    for (r, s), c in combo.items():
        if s >= 1:
            key = (r + 1, s - 1)
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def lower_rows(combo: dict) -> dict:
    """(r, s) -> (r-1, s+1); terms with r = 0 vanish."""
    out = {}
    for (r, s), c in combo.items():
        if r >= 1:
            key = (r - 1, s + 1)
            prev = out.get(key)
            v = c if prev is None else prev + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return out


def combo_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for key, c in b.items():
        s = out.get(key)
        s = c if s is None else s + c
        if s:
            out[key] = s
        elif key in out:
            del out[key]
    return out


def combo_scale(combo: dict, c) -> dict:
    if not c:
        return {}
    return {key: v * c for key, v in combo.items()}


@lru_cache(maxsize=None)
def _row_product(r: int, s: int) -> SymFunc:
    return one_row_qzonal(r) * one_row_qzonal(s)


def expand_row_combo(combo: dict) -> SymFunc:
    out = SymFunc.zero()
    for (r, s), c in combo.items():
        out = out + _row_product(r, s).scale(c)
    return out


def operator_series_combo(coeffs_fn, step, combo: dict, max_steps: int) -> dict:
    """Apply sum_n coeffs_fn(n) * step^n to a row combination.

    The sum must terminate because `step` eventually annihilates every term;
    exceeding max_steps signals a bug.
    """
    out = combo_scale(combo, coeffs_fn(0))
    cur = combo
    n = 0
    while cur:
        cur = step(cur)
        n += 1
        if not cur:
            break
        if n > max_steps:
            raise ConsistencyError("operator series failed to terminate")
        out = combo_add(out, combo_scale(cur, coeffs_fn(n)))
    return out


def _phi21_coeff_fn(a, b, c, base, z_coef):
    """Coefficients of the basic hypergeometric operator series.

    Term n carries (a; base)_n (b; base)_n / ((c; base)_n (base; base)_n)
    times z_coef^n, built incrementally.
    """
    cache = [RF_ONE]

    def fn(n):
        while len(cache) <= n:
            k = len(cache)
            num = (RF_ONE - a * base ** (k - 1)) * (RF_ONE - b * base ** (k - 1))
            den = (RF_ONE - c * base ** (k - 1)) * (RF_ONE - base ** k)
            cache.append(cache[-1] * z_coef * num / den)
        return cache[n]

    return fn


def phi21_operator(a, b, c, base, z_coef, op, target: dict,
                   max_steps: int | None = None) -> SymFunc:
    """Terminating 2-phi-1 operator series applied to a row combination.

    `op` is `raise_rows` or `lower_rows`; the result is expanded into the
    power-sum basis.
    """
    if max_steps is None:
        max_steps = 2 + max((r + s for r, s in target), default=0)
    combo = operator_series_combo(_phi21_coeff_fn(a, b, c, base, z_coef),
                                  op, target, max_steps)
    return expand_row_combo(combo)


def _two_row_combo(r: int, m: int) -> dict:
    """Row combination for the two-row function of shape (r, m)."""
    if not (r >= m >= 0):
        raise ValueError(f"invalid two-row shape ({r}, {m})")
    shift = r - m + 1
    start = combo_add(row_combo(r, m), combo_scale(raise_rows(row_combo(r, m)), -RF_ONE))
    coeffs = _phi21_coeff_fn(qpow(2), qpow(4 * shift), qpow(2 + 4 * shift),
                             qpow(4), qpow(2))
    return operator_series_combo(coeffs, raise_rows, start, m + 2)


@lru_cache(maxsize=None)
def two_row_qzonal(r: int, m: int) -> SymFunc:
    """Two-row q-zonal function of shape (r, m) via the hypergeometric
    factorisation into products of one-row functions."""
    return expand_row_combo(_two_row_combo(r, m))


# ---------------------------------------------------------------------------
# monomial symmetric functions via exact evaluation and solving
# ---------------------------------------------------------------------------

def _multiset_permutations(items):
    items = sorted(items)
    n = len(items)
    out = []

    def rec(prefix, remaining):
        if not remaining:
            out.append(tuple(prefix))
            return
        last = None
        for i, v in enumerate(remaining):
            if v == last:
                continue
            last = v
            rec(prefix + [v], remaining[:i] + remaining[i + 1:])

    rec([], items)
    return out


def _eval_power_sum(lam, xs):
    out = Fraction(1)
    for part in lam:
        out *= sum((x ** part for x in xs), Fraction(0))
    return out


def _eval_monomial(lam, xs):
    padded = tuple(lam) + (0,) * (len(xs) - len(lam))
    out = Fraction(0)
    for perm in _multiset_permutations(padded):
        term = Fraction(1)
        for x, e in zip(xs, perm):
            if e:
                term *= x ** e
        out += term
    return out


def _solve_fraction_system(matrix, rhs_list):
    """Solve M c = rhs for several right-hand sides; None when singular."""
    n = len(matrix)
    width = len(rhs_list)
    aug = [list(matrix[i]) + [r[i] for r in rhs_list] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col]), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = Fraction(1) / aug[col][col]
        aug[col] = [v * inv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [v - factor * w for v, w in zip(aug[r], aug[col])]
    return [[aug[i][n + j] for i in range(n)] for j in range(width)]


@lru_cache(maxsize=None)
def _monomial_to_powersum_table(n: int, nvars: int):
    """Power-sum expansions of all monomial functions of degree n.

    Both bases are evaluated at random exact rational points in `nvars`
    variables and the transition matrix is solved for; a singular sample set
    is retried with fresh points.
    """
    lams = partitions_of(n)
    size = len(lams)
    for attempt in range(8):
        rng = random.Random(0x5EED + 1009 * attempt + n)
        samples = [tuple(Fraction(rng.randint(2, 60), rng.randint(1, 7))
                         for _ in range(nvars)) for _ in range(size)]
        matrix = [[_eval_power_sum(mu, xs) for mu in lams] for xs in samples]
        rhs = [[_eval_monomial(lam, xs) for xs in samples] for lam in lams]
        sols = _solve_fraction_system(matrix, rhs)
        if sols is not None:
            return {lam: {mu: c for mu, c in zip(lams, sol) if c}
                    for lam, sol in zip(lams, sols)}
    raise ConsistencyError("could not find an invertible sample system")


def monomial_to_powersum(lam, nvars: int | None = None) -> SymFunc:
    """The monomial symmetric function m_lam expanded in power sums."""
    lam = Partition(lam)
    n = lam.weight()
    if nvars is None:
        nvars = max(n, 1)
    if n and nvars < n:
        raise ValueError("need at least |lam| variables")
    if n == 0:
        return SymFunc.one()
    table = _monomial_to_powersum_table(n, nvars)[lam]
    return SymFunc({mu: RationalFunction.from_fraction(c)
                    for mu, c in table.items()})


@lru_cache(maxsize=None)
def _powersum_to_monomial_table(n: int):
    """Inverse transition: p_lam in the monomial basis, as Fraction dicts."""
    lams = partitions_of(n)
    forward = _monomial_to_powersum_table(n, max(n, 1))
    matrix = [[forward[lam].get(mu, Fraction(0)) for lam in lams] for mu in lams]
    unit = [[Fraction(1) if i == j else Fraction(0) for i in range(len(lams))]
            for j in range(len(lams))]
    sols = _solve_fraction_system(matrix, unit)
    if sols is None:
        raise ConsistencyError("monomial transition matrix is singular")
    return {lam: {mu: c for mu, c in zip(lams, sol) if c}
            for lam, sol in zip(lams, sols)}


def powersum_in_monomial(lam) -> dict:
    """Expansion of p_lam over monomial functions (Fraction coefficients)."""
    lam = Partition(lam)
    if lam.weight() == 0:
        return {EMPTY: Fraction(1)}
    return _powersum_to_monomial_table(lam.weight())[lam]


# ---------------------------------------------------------------------------
# Gram-Schmidt constructions
# ---------------------------------------------------------------------------

def _dominance_extension_order(n: int):
    """Partitions of n in ascending lexicographic order of part tuples.

    Ascending lex is a linear extension of dominance, so Gram-Schmidt down
    this list produces the triangular orthogonal basis.
    """
    return sorted(partitions_of(n), key=tuple)


def _gram_schmidt_basis(n: int, weight_fn, lift):
    order = _dominance_extension_order(n)
    basis = {}
    for lam in order:
        if n == 0:
            f = SymFunc.one(lift(Fraction(1)))
        else:
            table = _monomial_to_powersum_table(n, max(n, 1))[lam]
            f = SymFunc({mu: lift(c) for mu, c in table.items()})
        for mu in order:
            if mu == lam:
                break
            g = basis[mu]
            num = _weighted_ip(f, g, weight_fn)
            if num:
                f = f - g.scale(num / _weighted_ip(g, g, weight_fn))
        basis[lam] = f
    return basis


def _weighted_ip(f: SymFunc, g: SymFunc, weight_fn):
    out = None
    for lam, c in f.terms.items():
        d = g.terms.get(lam)
        if d is not None:
            v = c * d * weight_fn(lam)
            out = v if out is None else out + v
    return out


@lru_cache(maxsize=None)
def _macdonald_basis(n: int, s, t):
    lift = type(s).from_fraction
    return _gram_schmidt_basis(n, lambda lam: power_sum_norm_st(lam, s, t), lift)


def macdonald_P(lam, s, t) -> SymFunc:
    """Two-parameter Macdonald function P_lam(x; s, t) in the power-sum basis.

    Built by Gram-Schmidt against a dominance-compatible order: the unique
    function equal to m_lam plus dominance-lower monomial terms, orthogonal
    to the earlier ones under the (s, t) inner product.
    """
    lam = Partition(lam)
    return _macdonald_basis(lam.weight(), s, t)[lam]


@lru_cache(maxsize=None)
def _jack_basis(n: int, alpha: Fraction):
    def weight(lam):
        out = RationalFunction.from_fraction(
            Fraction(alpha) ** lam.length())
        for i, m in lam.multiplicities().items():
            out = out * (i ** m * factorial(m))
        return out

    return _gram_schmidt_basis(n, weight, RationalFunction.from_fraction)


def jack_P(lam, alpha) -> SymFunc:
    """Jack function P_lam(x; alpha) with <p_lam, p_mu> = delta alpha^len z_lam."""
    lam = Partition(lam)
    return _jack_basis(lam.weight(), Fraction(alpha))[lam]


def specialize_q1(f: SymFunc) -> SymFunc:
    """Substitute q = 1 in every coefficient; reports the partition on a pole."""
    out = {}
    for lam, c in f.terms.items():
        try:
            val = c.evaluate(Fraction(1))
        except ZeroDivisionError as exc:
            raise PoleAtOneError(lam) from exc
        if val:
            out[lam] = RationalFunction.from_fraction(val)
    return SymFunc(out)


def collinear_ratio(f: SymFunc, g: SymFunc):
    """The scalar c with f = c * g, or None if the two are not collinear."""
    if g.is_zero():
        return None
    if f.is_zero():
        return RF_ZERO
    key = min(g.terms, key=lambda lam: (lam.weight(), tuple(lam)))
    fc = f.terms.get(key)
    if fc is None:
        return None
    c = fc / g.terms[key]
    return c if (f - g.scale(c)).is_zero() else None
