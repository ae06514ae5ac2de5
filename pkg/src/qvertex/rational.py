"""Exact scalar arithmetic over the field Q(q).

LaurentPoly holds a Laurent polynomial in the formal variable q with
arbitrary-precision integer coefficients.  RationalFunction is a reduced
fraction of two such polynomials in canonical form: numerator and denominator
coprime (including integer content), denominator an ordinary polynomial with
nonzero, positive constant term.  Equality of canonical forms is syntactic.

q is never specialised numerically inside the kernel; `evaluate` exists as a
spot-check hook for callers.  All values are immutable and safe to share.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd


class ConsistencyError(RuntimeError):
    """An internal cross-check failed; signals an arithmetic bug."""


# ---------------------------------------------------------------------------
# dense integer-polynomial helpers (index = exponent, no trailing zeros)
# ---------------------------------------------------------------------------

def _trim(xs):
    n = len(xs)
    while n and xs[n - 1] == 0:
        n -= 1
    return xs[:n]


def _content(xs):
    g = 0
    for x in xs:
        g = _igcd(g, x)
        if g == 1:
            return 1
    return g


def _primitive(xs):
    g = _content(xs)
    if g in (0, 1):
        return list(xs)
    return [x // g for x in xs]


def _list_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _pseudo_rem(A, B):
    """Pseudo-remainder of A by B (lists, B nonzero, deg A >= deg B)."""
    R = list(A)
    dB = len(B) - 1
    lb = B[-1]
    while len(R) - 1 >= dB and R:
        d = len(R) - 1 - dB
        c = R[-1]
        R = [lb * r for r in R]
        for j, y in enumerate(B):
            R[j + d] -= c * y
        R = _trim(R)
    return R


def _prs_gcd(A, B):
    """Primitive polynomial remainder sequence gcd (slow, exact fallback)."""
    while B:
        if len(A) < len(B):
            A, B = B, A
            continue
        R = _pseudo_rem(A, B)
        A, B = B, _primitive(_trim(R))
    return A


def _pos_lowest(G):
    i = 0
    while G[i] == 0:
        i += 1
    return [-x for x in G] if G[i] < 0 else G


def _eval_int(xs, xi):
    acc = 0
    for c in reversed(xs):
        acc = acc * xi + c
    return acc


def _balanced_digits(g, xi):
    out = []
    half = xi // 2
    while g:
        r = g % xi
        if r > half:
            r -= xi
        out.append(r)
        g = (g - r) // xi
    return out


def _try_divexact(A, B):
    """Quotient of exact integer-polynomial division, or None if inexact."""
    if not A:
        return []
    if len(A) < len(B):
        return None
    q = [0] * (len(A) - len(B) + 1)
    R = list(A)
    lb = B[-1]
    while R and len(R) >= len(B):
        c, rem = divmod(R[-1], lb)
        if rem:
            return None
        d = len(R) - len(B)
        q[d] = c
        for j, y in enumerate(B):
            R[j + d] -= c * y
        R = _trim(R)
    if R:
        return None
    return q


def _list_gcd(A, B):
    """Primitive gcd of two integer polynomial lists, positive lowest coeff.

    Heuristic gcd (evaluate at a large integer, take the integer gcd, lift its
    balanced digit expansion, verify by exact division) with a primitive-PRS
    fallback.  The division check makes the result a true common divisor;
    retries with a growing evaluation point ensure maximality.
    """
    A = _primitive(_trim(list(A)))
    B = _primitive(_trim(list(B)))
    if not A:
        return _pos_lowest(B) if B else [1]
    if not B:
        return _pos_lowest(A)
    if A == B:
        return _pos_lowest(A)
    if len(A) == 1 or len(B) == 1:
        return [1]
    height = max(max(map(abs, A)), max(map(abs, B)))
    xi = 2 * height + 29
    for _ in range(6):
        g = _igcd(_eval_int(A, xi), _eval_int(B, xi))
        G = _primitive(_balanced_digits(g, xi))
        if G and _try_divexact(A, G) is not None and _try_divexact(B, G) is not None:
            return _pos_lowest(G)
        xi = 3 * xi + 17
    return _pos_lowest(_prs_gcd(A, B))


def _list_divexact(A, B):
    """Exact division of integer polynomial lists; raises if not exact."""
    A = _trim(list(A))
    B = _trim(list(B))
    if not B:
        raise ZeroDivisionError("polynomial division by zero")
    q = _try_divexact(A, B)
    if q is None:
        raise ConsistencyError("inexact polynomial division")
    return q


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

class LaurentPoly:
    """Laurent polynomial in q with integer coefficients.

    `terms` maps exponent to nonzero coefficient; keys are inserted in
    ascending exponent order so iteration is canonical.  Treat as immutable.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        cleaned = {}
        if terms:
            for e in sorted(terms):
                c = terms[e]
                if c:
                    cleaned[e] = c
        self.terms = cleaned
        self._hash = None

    @classmethod
    def monomial(cls, exp=0, coeff=1):
        return cls({exp: coeff})

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self.terms.items()))
        return self._hash

    def valuation(self):
        if not self.terms:
            raise ValueError("zero polynomial has no valuation")
        return next(iter(self.terms))

    def degree(self):
        if not self.terms:
            raise ValueError("zero polynomial has no degree")
        return next(reversed(self.terms))

    def lowest_coeff(self):
        return next(iter(self.terms.values()))

    def __add__(self, other):
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            elif e in out:
                del out[e]
        return LaurentPoly(out)

    def __neg__(self):
        p = LaurentPoly()
        p.terms = {e: -c for e, c in self.terms.items()}
        return p

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            p = LaurentPoly()
            p.terms = {e: c * other for e, c in self.terms.items()}
            return p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = out.get(e, 0) + c1 * c2
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, k):
        """Multiply by q**k."""
        if k == 0 or not self.terms:
            return self
        p = LaurentPoly()
        p.terms = {e + k: c for e, c in self.terms.items()}
        return p

    def to_dense(self):
        """Return (valuation, coefficient list) with list[0] != 0."""
        v = self.valuation()
        out = [0] * (self.degree() - v + 1)
        for e, c in self.terms.items():
            out[e - v] = c
        return v, out

    @classmethod
    def from_dense(cls, val, xs):
        return cls({val + i: c for i, c in enumerate(xs) if c})

    def evaluate(self, x: Fraction) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if x == 0 and self.valuation() < 0:
            raise ZeroDivisionError("negative q-power at q=0")
        return sum((c * x ** e for e, c in self.terms.items()), Fraction(0))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms.items():
            if e == 0:
                body = str(abs(c))
            else:
                mag = abs(c)
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"


_POLY_ZERO = LaurentPoly()
_POLY_ONE = LaurentPoly({0: 1})


def _laurent_gcd(a: LaurentPoly, b: LaurentPoly) -> tuple:
    """(integer content gcd, primitive polynomial gcd) ignoring q-power units."""
    _, xs = a.to_dense()
    _, ys = b.to_dense()
    cg = _igcd(_content(xs), _content(ys))
    return cg, _list_gcd(xs, ys)


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------

class RationalFunction:
    """Reduced fraction of Laurent polynomials in q, canonical form."""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentPoly({0: num})
        if den is None:
            den = _POLY_ONE
        elif isinstance(den, int):
            den = LaurentPoly({0: den})
        num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._hash = None

    @classmethod
    def _raw(cls, num, den):
        """Internal constructor for operands already in canonical form."""
        self = object.__new__(cls)
        self.num = num
        self.den = den
        self._hash = None
        return self

    @classmethod
    def from_fraction(cls, f: Fraction):
        return cls(LaurentPoly({0: f.numerator}), LaurentPoly({0: f.denominator}))

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def is_one(self):
        return self.num == _POLY_ONE and self.den == _POLY_ONE

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            return RationalFunction._raw(LaurentPoly({0: other}), _POLY_ONE)
        if isinstance(other, Fraction):
            return RationalFunction.from_fraction(other)
        if isinstance(other, LaurentPoly):
            return RationalFunction(other)
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
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        b, d = self.den, other.den
        if b == d:
            num = self.num + other.num
            if num.is_zero():
                return RF_ZERO
            return RationalFunction(num, b)
        if b == _POLY_ONE:
            num = self.num * d + other.num
            return RF_ZERO if num.is_zero() else RationalFunction._raw(num, d)
        if d == _POLY_ONE:
            num = self.num + other.num * b
            return RF_ZERO if num.is_zero() else RationalFunction._raw(num, b)
        cg, g = _laurent_gcd(b, d)
        if cg == 1 and g == [1]:
            num = self.num * d + other.num * b
            if num.is_zero():
                return RF_ZERO
            # coprime denominators: the sum is already in lowest terms
            return RationalFunction._raw(num, b * d)
        gp = LaurentPoly.from_dense(0, [cg * x for x in g])
        b1 = _divide(b, gp)
        d1 = _divide(d, gp)
        t = self.num * d1 + other.num * b1
        if t.is_zero():
            return RF_ZERO
        # t is coprime to b1 and d1; only the factor gp may still divide it
        r = RationalFunction(t, gp)
        return RationalFunction._raw(r.num, r.den * b1 * d1)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

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
        if self.num.is_zero() or other.num.is_zero():
            return RF_ZERO
        a, b = self.num, self.den
        c, d = other.num, other.den
        # cross-cancel so the final product is already in lowest terms
        if d != _POLY_ONE:
            t = RationalFunction(a, d)
            a, d = t.num, t.den
        if b != _POLY_ONE:
            t = RationalFunction(c, b)
            c, b = t.num, t.den
        return RationalFunction._raw(a * c, b * d)

    __rmul__ = __mul__

    def _inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        vn, xs = self.num.to_dense()
        num = self.den.shift(-vn)
        if xs[0] < 0:
            num = -num
            xs = [-x for x in xs]
        return RationalFunction._raw(num, LaurentPoly.from_dense(0, xs))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other._inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if n == 0:
            return RF_ONE
        base = self if n > 0 else self._inverse()
        out = RF_ONE
        for _ in range(abs(n)):
            out = out * base
        return out

    def evaluate(self, x: Fraction) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError(f"denominator vanishes at q={x}")
        return self.num.evaluate(x) / d

    def substitute_qpower(self, k: int) -> "RationalFunction":
        """Replace q by q**k (k nonzero)."""
        if k == 0:
            raise ValueError("q-power substitution needs nonzero exponent")
        num = LaurentPoly({e * k: c for e, c in self.num.terms.items()})
        den = LaurentPoly({e * k: c for e, c in self.den.terms.items()})
        return RationalFunction(num, den)

    def to_json(self):
        return {
            "num": [[e, str(c)] for e, c in self.num.terms.items()],
            "den": [[e, str(c)] for e, c in self.den.terms.items()],
        }

    @classmethod
    def from_json(cls, obj):
        num = LaurentPoly({int(e): int(c) for e, c in obj["num"]})
        den = LaurentPoly({int(e): int(c) for e, c in obj["den"]})
        return cls(num, den)

    def __str__(self):
        if self.den == _POLY_ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"


def _divide(p: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact division of Laurent polynomials (g divides p up to a q-power)."""
    vp, xs = p.to_dense()
    vg, ys = g.to_dense()
    return LaurentPoly.from_dense(vp - vg, _list_divexact(xs, ys))


def _reduce(num: LaurentPoly, den: LaurentPoly):
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _POLY_ZERO, _POLY_ONE
    vn, xs = num.to_dense()
    vd, ys = den.to_dense()
    cg = _igcd(_content(xs), _content(ys))
    if cg > 1:
        xs = [x // cg for x in xs]
        ys = [y // cg for y in ys]
    g = _list_gcd(xs, ys)
    if len(g) > 1 or g[0] != 1:
        xs = _list_divexact(xs, g)
        ys = _list_divexact(ys, g)
    if ys[0] < 0:
        xs = [-x for x in xs]
        ys = [-y for y in ys]
    return (LaurentPoly.from_dense(vn - vd, xs),
            LaurentPoly.from_dense(0, ys))


RF_ZERO = RationalFunction._raw(_POLY_ZERO, _POLY_ONE)
RF_ONE = RationalFunction._raw(_POLY_ONE, _POLY_ONE)


def qpow(k: int, coeff: int = 1) -> RationalFunction:
    """The monomial coeff * q**k (negative k stays in the numerator)."""
    if coeff == 0:
        return RF_ZERO
    return RationalFunction._raw(LaurentPoly({k: coeff}), _POLY_ONE)


Q = qpow(1)


def neg_q3_power(sigma: int) -> RationalFunction:
    """(-q^3)**sigma for an integer sigma."""
    return qpow(3 * sigma, -1 if sigma % 2 else 1)


def qint(n: int) -> RationalFunction:
    """The balanced q-integer (q^n - q^-n)/(q - q^-1).

    For n >= 1 this is the Laurent polynomial q^(n-1) + q^(n-3) + ... + q^(1-n).
    """
    if n == 0:
        return RF_ZERO
    sign = 1 if n > 0 else -1
    m = abs(n)
    return RationalFunction._raw(
        LaurentPoly({e: sign for e in range(1 - m, m, 2)}), _POLY_ONE)


def poch_finite(a: RationalFunction, p: RationalFunction, n: int) -> RationalFunction:
    """Finite product (1 - a)(1 - a p) ... (1 - a p^(n-1)); empty product is 1."""
    if n < 0:
        raise ValueError("finite product length must be nonnegative")
    out = RF_ONE
    factor = RF_ONE
    for k in range(n):
        out = out * (RF_ONE - a * factor)
        factor = factor * p
    return out
