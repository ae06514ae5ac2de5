"""Integer partitions and their deformed power-sum weights.

A partition is stored as a weakly decreasing tuple of positive part sizes.
The weight functions implement

    z_lam(s, t) = prod_i  i^{m_i} ((1 - s^i)/(1 - t^i))^{m_i} m_i!
    z_lam(q)    = prod_i  i^{m_i} (1 + q^{2i})^{m_i} m_i!

where m_i is the multiplicity of the part i; the second is the (s, t) weight
specialised at s = q^4, t = q^2, which is asserted once per partition.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial

from .rational import RF_ONE, RationalFunction, qpow


class Partition(tuple):
    """Weakly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts=()):
        parts = tuple(parts)
        for i, p in enumerate(parts):
            if not isinstance(p, int) or p <= 0:
                raise ValueError(f"parts must be positive integers, got {parts!r}")
            if i and parts[i - 1] < p:
                raise ValueError(f"parts must be weakly decreasing, got {parts!r}")
        return tuple.__new__(cls, parts)

    def weight(self):
        return sum(self)

    def length(self):
        return len(self)

    def multiplicities(self):
        out = {}
        for p in self:
            out[p] = out.get(p, 0) + 1
        return out

    def remove_part(self, part):
        """Partition with one copy of `part` removed."""
        parts = list(self)
        parts.remove(part)
        return Partition(parts)

    def to_json(self):
        return list(self)

    def __repr__(self):
        return f"Partition({tuple(self)!r})"


EMPTY = Partition()


@lru_cache(maxsize=None)
def partitions_of(n: int):
    """All partitions of n in reverse-lexicographic order, as a tuple.

    The order is fixed ((n) first, (1,...,1) last) so that golden files and
    serialised output are stable.
    """
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    out = []

    def rec(remaining, max_part, prefix):
        if remaining == 0:
            out.append(Partition(prefix))
            return
        for k in range(min(remaining, max_part), 0, -1):
            rec(remaining - k, k, prefix + (k,))

    rec(n, n, ())
    return tuple(out)


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """True iff lam is dominated by mu (partial sums of lam never exceed mu's)."""
    if sum(lam) != sum(mu):
        raise ValueError("dominance compares partitions of equal weight")
    acc_l = acc_m = 0
    for i in range(max(len(lam), len(mu))):
        acc_l += lam[i] if i < len(lam) else 0
        acc_m += mu[i] if i < len(mu) else 0
        if acc_l > acc_m:
            return False
    return True


def power_sum_norm_st(lam, s, t):
    """The weight z_lam(s, t); generic over the scalar field of s and t."""
    out = s ** 0
    for i, m in Partition(lam).multiplicities().items():
        ti = t ** i
        den = 1 - ti
        if not den:
            raise ZeroDivisionError(f"degenerate weight: t^{i} = 1")
        out = out * ((1 - s ** i) / den) ** m * (i ** m * factorial(m))
    return out


@lru_cache(maxsize=None)
def power_sum_norm_q(lam: Partition) -> RationalFunction:
    """The weight z_lam(q) = prod i^{m_i} (1 + q^{2i})^{m_i} m_i!."""
    out = RF_ONE
    for i, m in lam.multiplicities().items():
        out = out * (RF_ONE + qpow(2 * i)) ** m * (i ** m * factorial(m))
    if out != power_sum_norm_st(lam, qpow(4), qpow(2)):
        raise AssertionError(f"z(q) != z(q^4, q^2) for {lam!r}")
    return out
