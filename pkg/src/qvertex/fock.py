"""The deformed bosonic Fock space and its dual.

A FockVector is a finite combination of sectors (k, sigma2) -> SymFunc where
k labels the lattice part exp(k alpha / 2) and sigma2 is twice the grade
counting formal powers of (-q^3)^(1/2).  Descendant content is identified
with power sums through b_(-lam) . vacuum = p_lam.

Dual vectors use the same shape with k labelling exp(-k alpha / 2) and the
symmetric-function content holding left-action b_(+lam) descendants.  Duals
are only ever built by acting on the dual vacuum from the left; plain
conjugation of modes is deliberately not offered.

Nonzero modes satisfy [b_n, b_m] = n (1 + q^(2|n|)) delta_(n+m,0), so
annihilation acts as the derivation n (1 + q^(2n)) d/dp_n.
"""

from __future__ import annotations

from .rational import RF_ONE, RF_ZERO, RationalFunction, neg_q3_power, qint, qpow
from .symfun import SymFunc, differentiate_power_sum, inner_product_q


class SigmaError(ValueError):
    """A half-integral sigma grade appeared where an integral one is required."""


class FockVector:
    """Combination of Fock-space sectors; set dual=True for the dual space."""

    __slots__ = ("parts", "dual")

    def __init__(self, parts=None, dual=False):
        self.dual = dual
        self.parts = {}
        if parts:
            for key, sym in parts.items():
                if sym:
                    self.parts[key] = sym

    @classmethod
    def vacuum(cls):
        return cls({(0, 0): SymFunc.one()})

    @classmethod
    def dual_vacuum(cls):
        return cls({(0, 0): SymFunc.one()}, dual=True)

    @classmethod
    def from_sym(cls, sym: SymFunc, k: int = 0, sigma2: int = 0, dual: bool = False):
        return cls({(k, sigma2): sym}, dual=dual)

    def is_zero(self):
        return not self.parts

    def __bool__(self):
        return bool(self.parts)

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.dual == other.dual and self.parts == other.parts

    def __add__(self, other):
        if self.dual != other.dual:
            raise ValueError("cannot mix a Fock vector with a dual vector")
        out = dict(self.parts)
        for key, sym in other.parts.items():
            s = out.get(key)
            s = sym if s is None else s + sym
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return FockVector(out, self.dual)

    def __neg__(self):
        return FockVector({k: -s for k, s in self.parts.items()}, self.dual)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return FockVector(dual=self.dual)
        return FockVector({k: s.scale(c) for k, s in self.parts.items()}, self.dual)

    def map_syms(self, fn):
        out = {}
        for key, sym in self.parts.items():
            s = fn(sym)
            if s:
                out[key] = s
        return FockVector(out, self.dual)

    def shift_lattice(self, dk: int):
        return FockVector({(k + dk, s2): sym for (k, s2), sym in self.parts.items()},
                          self.dual)

    def shift_sigma(self, ds2: int):
        return FockVector({(k, s2 + ds2): sym for (k, s2), sym in self.parts.items()},
                          self.dual)

    def max_degree(self):
        return max((sym.max_degree() for sym in self.parts.values()), default=0)

    def fold_sigma(self):
        """Fold (-q^3)^(sigma2/2) into the coefficients, leaving sigma2 = 0.

        Rejects components with half-integral grade.
        """
        out = FockVector(dual=self.dual)
        for (k, s2), sym in self.parts.items():
            if s2 % 2:
                raise SigmaError(f"half-integral sigma grade {s2}/2 in sector k={k}")
            piece = FockVector({(k, 0): sym.scale(neg_q3_power(s2 // 2))}, self.dual)
            out = out + piece
        return out

    def sorted_parts(self):
        return sorted(self.parts.items())

    def to_json(self):
        return [{"lattice_k": k, "sigma_twice": s2, "sym": sym.to_json()}
                for (k, s2), sym in self.sorted_parts()]

    def __repr__(self):
        kind = "DualFockVector" if self.dual else "FockVector"
        body = "; ".join(f"k={k},s2={s2}: {sym!r}" for (k, s2), sym in self.sorted_parts())
        return f"{kind}({body or '0'})"


def apply_b(n: int, v: FockVector) -> FockVector:
    """Mode b_n acting on v: from the left on vectors, the right on duals.

    On vectors, n < 0 multiplies the content by p_(-n) and n > 0 acts as the
    derivation n (1 + q^(2n)) d/dp_n (annihilating the vacuum).  On duals the
    directions mirror: positive modes create content, negative modes
    differentiate, so the pairing below is automatically b-invariant.
    """
    if n == 0:
        raise ValueError("the zero mode is handled by the lattice operators")
    creating = (n < 0) if not v.dual else (n > 0)
    m = abs(n)
    if creating:
        return v.map_syms(lambda sym: sym.mul_power_sum((m,), RF_ONE))
    factor = (RF_ONE + qpow(2 * m)) * m
    return v.map_syms(lambda sym: differentiate_power_sum(sym, m).scale(factor))


def a_to_b_factor(n: int) -> RationalFunction:
    """Scalar relating the two oscillator normalisations: a_n = ([n]/n) q^(-|n|) b_n."""
    if n == 0:
        raise ValueError("undefined for the zero mode")
    return qint(n) * qpow(-abs(n)) / n


def apply_exp_alpha_half(j: int, v: FockVector) -> FockVector:
    """Left action of exp(j alpha / 2) on a vector (k -> k + j); on a dual the
    right action gives k -> k - j."""
    return v.shift_lattice(j if not v.dual else -j)


def momentum_eigenvalue(v: FockVector) -> int:
    """Eigenvalue of the momentum operator on a lattice-homogeneous vector."""
    ks = {k for (k, _s2) in v.parts}
    if len(ks) != 1:
        raise ValueError("momentum requires a lattice-homogeneous combination")
    return ks.pop()


def pairing(dual: FockVector, vec: FockVector) -> RationalFunction:
    """Pairing of a dual vector with a vector.

    Lattice sectors pair orthonormally (exp(-k alpha/2) against
    exp(k alpha/2)), content pairs through the q-deformed inner product, and
    the sigma grades fold into a scalar (-q^3) power, which must be integral.
    """
    if not dual.dual or vec.dual:
        raise ValueError("pairing takes (dual, vector)")
    out = RF_ZERO
    for (kd, s2d), sym_d in dual.parts.items():
        for (kv, s2v), sym_v in vec.parts.items():
            if kd != kv:
                continue
            s2 = s2d + s2v
            if s2 % 2:
                raise SigmaError("pairing with half-integral total sigma grade")
            val = inner_product_q(sym_d, sym_v)
            if val:
                out = out + val * neg_q3_power(s2 // 2)
    return out
