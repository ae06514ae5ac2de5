"""Exact arithmetic over the field Q(s, t) of two formal parameters.

BiPoly holds a polynomial in s and t with integer coefficients (non-negative
exponents).  BiRational is a reduced fraction in canonical form: numerator
and denominator coprime (including integer content), denominator's
lexicographically smallest monomial positive.  The gcd is the primitive
polynomial-remainder sequence recursion, treating polynomials in s with
coefficients in Z[t]; sizes stay small in this package so clarity wins over
speed.

The class mirrors the operator interface of the univariate kernel, so the
generic symmetric-function code runs over either field unchanged.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from .rational import (
    RationalFunction,
    _content,
    _list_divexact,
    _list_gcd,
    _list_mul,
    _trim,
)


# ---------------------------------------------------------------------------
# recursive representation: list over s-degree of dense t-coefficient lists
# ---------------------------------------------------------------------------

def _rows_trim(rows):
    n = len(rows)
    while n and not rows[n - 1]:
        n -= 1
    return rows[:n]


def _tp_gcd(a, b):
    """Full gcd of two t-polynomial lists, including integer content."""
    if not a:
        return list(b)
    if not b:
        return list(a)
    ig = _igcd(_content(a), _content(b))
    g = _list_gcd(a, b)
    return [ig * x for x in g]


def _rows_content(rows):
    g = []
    for r in rows:
        if r:
            g = _tp_gcd(g, r)
            if g == [1]:
                return g
    return g


def _rows_divexact_tp(rows, tp):
    return [_list_divexact(r, tp) if r else [] for r in rows]


def _rows_primitive(rows):
    c = _rows_content(rows)
    if not c or c == [1]:
        return rows
    return _rows_divexact_tp(rows, c)


def _rows_prem(A, B):
    """Pseudo-remainder in s of A by B over Z[t]."""
    R = [list(r) for r in A]
    dB = len(B) - 1
    lb = B[-1]
    while R and len(R) - 1 >= dB:
        d = len(R) - 1 - dB
        c = R[-1]
        R = [_list_mul(r, lb) for r in R]
        for j, brow in enumerate(B):
            prod = _list_mul(c, brow)
            row = R[j + d]
            if len(row) < len(prod):
                row = row + [0] * (len(prod) - len(row))
            for i, v in enumerate(prod):
                row[i] -= v
            R[j + d] = _trim(row)
        R = _rows_trim(R)
    return R


def _rows_gcd(A, B):
    """Primitive-PRS gcd of two bivariate polynomials in row form."""
    A = _rows_trim([_trim(list(r)) for r in A])
    B = _rows_trim([_trim(list(r)) for r in B])
    if not A:
        return B
    if not B:
        return A
    contA = _rows_content(A)
    contB = _rows_content(B)
    cont = _tp_gcd(contA, contB)
    A = _rows_divexact_tp(A, contA)
    B = _rows_divexact_tp(B, contB)
    while B:
        if len(A) < len(B):
            A, B = B, A
            continue
        R = _rows_prem(A, B)
        A, B = B, _rows_primitive(_rows_trim(R))
    if cont != [1]:
        A = [_list_mul(r, cont) if r else [] for r in A]
    return A


def _rows_divexact(A, B):
    """Exact division of bivariate row polynomials."""
    A = _rows_trim([_trim(list(r)) for r in A])
    B = _rows_trim([_trim(list(r)) for r in B])
    if not B:
        raise ZeroDivisionError("bivariate division by zero")
    if not A:
        return []
    q = [[] for _ in range(len(A) - len(B) + 1)]
    R = [list(r) for r in A]
    lb = B[-1]
    while R and len(R) >= len(B):
        d = len(R) - len(B)
        c = _list_divexact(R[-1], lb)
        q[d] = c
        for j, brow in enumerate(B):
            prod = _list_mul(c, brow)
            row = R[j + d]
            if len(row) < len(prod):
                row = row + [0] * (len(prod) - len(row))
            for i, v in enumerate(prod):
                row[i] -= v
            R[j + d] = _trim(row)
        R = _rows_trim(R)
    if R:
        raise ArithmeticError("inexact bivariate division")
    return _rows_trim(q)


class BiPoly:
    """Polynomial in s and t with integer coefficients."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for key in sorted(terms):
                c = terms[key]
                if c:
                    cleaned[key] = c
        self.terms = cleaned
        self._hash = None

    @classmethod
    def from_rows(cls, rows):
        return cls({(es, et): c
                    for es, row in enumerate(rows)
                    for et, c in enumerate(row) if c})

    def to_rows(self):
        if not self.terms:
            return []
        ds = max(es for es, _ in self.terms)
        rows = [[] for _ in range(ds + 1)]
        for (es, et), c in self.terms.items():
            row = rows[es]
            if len(row) <= et:
                row.extend([0] * (et + 1 - len(row)))
            row[et] = c
        return [_trim(r) for r in rows]

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def __add__(self, other):
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return BiPoly(out)

    def __neg__(self):
        p = BiPoly()
        p.terms = {k: -c for k, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return BiPoly()
            p = BiPoly()
            p.terms = {k: c * other for k, c in self.terms.items()}
            return p
        out = {}
        for (a, b), c1 in self.terms.items():
            for (x, y), c2 in other.terms.items():
                key = (a + x, b + y)
                v = out.get(key, 0) + c1 * c2
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return BiPoly(out)

    __rmul__ = __mul__

    def lowest_coeff(self):
        return self.terms[next(iter(self.terms))]

    def evaluate(self, s_val, t_val):
        """Evaluate with values from any commutative ring (e.g. Q(q))."""
        out = None
        for (es, et), c in self.terms.items():
            term = (s_val ** es) * (t_val ** et) * c
            out = term if out is None else out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (es, et), c in self.terms.items():
            names = []
            if es:
                names.append("s" if es == 1 else f"s^{es}")
            if et:
                names.append("t" if et == 1 else f"t^{et}")
            mag = "*".join(([str(abs(c))] if abs(c) != 1 or not names else []) + names) \
                or str(abs(c))
            if not parts:
                parts.append(mag if c > 0 else f"-{mag}")
            else:
                parts.append(f"+ {mag}" if c > 0 else f"- {mag}")
        return " ".join(parts)

    def __repr__(self):
        return f"BiPoly({self.terms!r})"


_BP_ZERO = BiPoly()
_BP_ONE = BiPoly({(0, 0): 1})


def _bi_reduce(num: BiPoly, den: BiPoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _BP_ZERO, _BP_ONE
    ig = _igcd(_content(list(num.terms.values())),
               _content(list(den.terms.values())))
    if ig > 1:
        num = BiPoly({k: c // ig for k, c in num.terms.items()})
        den = BiPoly({k: c // ig for k, c in den.terms.items()})
    g_rows = _rows_gcd(num.to_rows(), den.to_rows())
    g = BiPoly.from_rows(g_rows)
    if g.terms != {(0, 0): 1}:
        num = BiPoly.from_rows(_rows_divexact(num.to_rows(), g_rows))
        den = BiPoly.from_rows(_rows_divexact(den.to_rows(), g_rows))
    if den.lowest_coeff() < 0:
        num, den = -num, -den
    return num, den


class BiRational:
    """Reduced fraction of bivariate integer polynomials."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = BiPoly({(0, 0): num})
        if den is None:
            den = _BP_ONE
        elif isinstance(den, int):
            den = BiPoly({(0, 0): den})
        num, den = _bi_reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def from_fraction(cls, f: Fraction):
        return cls(BiPoly({(0, 0): f.numerator}), BiPoly({(0, 0): f.denominator}))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    @staticmethod
    def _coerce(other):
        if isinstance(other, BiRational):
            return other
        if isinstance(other, int):
            return BiRational._raw(BiPoly({(0, 0): other}) if other else _BP_ZERO,
                                   _BP_ONE)
        if isinstance(other, Fraction):
            return BiRational.from_fraction(other)
        return None

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((tuple(self.num.terms.items()),
                               tuple(self.den.terms.items())))
        return self._hash

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BiRational(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return BiRational._raw(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return BiRational(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return BiRational(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n == 0:
            return BI_ONE
        if n < 0:
            return BI_ONE / (self ** (-n))
        out = BI_ONE
        for _ in range(n):
            out = out * self
        return out

    def evaluate(self, s_val, t_val):
        """Substitute ring values (e.g. rational functions of q) for s and t."""
        num = self.num.evaluate(s_val, t_val)
        den = self.den.evaluate(s_val, t_val)
        return num / den

    def to_json(self):
        return {"num": [[list(k), str(c)] for k, c in self.num.terms.items()],
                "den": [[list(k), str(c)] for k, c in self.den.terms.items()]}

    def __str__(self):
        if self.den == _BP_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"BiRational({self})"


BI_ZERO = BiRational._raw(_BP_ZERO, _BP_ONE)
BI_ONE = BiRational._raw(_BP_ONE, _BP_ONE)
S_GEN = BiRational._raw(BiPoly({(1, 0): 1}), _BP_ONE)
T_GEN = BiRational._raw(BiPoly({(0, 1): 1}), _BP_ONE)


def specialize_to_q(value: BiRational, s_val: RationalFunction,
                    t_val: RationalFunction) -> RationalFunction:
    return value.evaluate(s_val, t_val)
