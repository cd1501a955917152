"""Tame symbols, Hilbert and n-th norm-residue symbols, and local invariants.

The invariant of the cyclic algebra N_n{a, b} is normalised as
``kummer_class_index(t, n) / n`` where t is the tame symbol of (a, b)
embedded into F_p(zeta_n).  For n not dividing p - 1 this realises the
corestriction from F_p(zeta_n) through the transfer, which sends Frobenius
of F_p to Frobenius of F_p(zeta_n).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import EvenP, ExactZero, PDividesN, ZeroElement
from .finitefield import cyclotomic_extension, kummer_class_index
from .ntheory import legendre
from .localfield import unit_residue, valuation


@dataclass(frozen=True, slots=True)
class BrauerInvariant:
    """An element of Q/Z stored as a reduced fraction num/den with 0 <= num < den."""

    num: int
    den: int

    def __post_init__(self):
        if self.den < 1:
            raise ValueError("denominator must be positive")
        n = self.num % self.den
        g = gcd(n, self.den)
        object.__setattr__(self, "num", n // g)
        object.__setattr__(self, "den", self.den // g)

    @classmethod
    def of(cls, k, n):
        """The class k/n."""
        return cls(k, n)

    @classmethod
    def zero(cls):
        return cls(0, 1)

    def __add__(self, other):
        r = Fraction(self.num, self.den) + Fraction(other.num, other.den)
        return BrauerInvariant(r.numerator, r.denominator)

    def __neg__(self):
        return BrauerInvariant(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def scaled_to(self, n):
        """The integer k mod n with self == k/n (requires den | n)."""
        if n % self.den:
            raise ValueError(f"{self} is not n-torsion for n={n}")
        return self.num * (n // self.den) % n

    def as_fraction(self):
        return Fraction(self.num, self.den)

    def __str__(self):
        return "0" if self.num == 0 else f"{self.num}/{self.den}"


def _require_nonzero(*xs):
    for x in xs:
        if x.is_zero:
            raise ExactZero("symbol of an exact zero")


def tame_symbol(a, b):
    """Residue of (-1)^{v(a)v(b)} a^{v(b)} b^{-v(a)}, an integer in [1, p)."""
    _require_nonzero(a, b)
    if a.p != b.p:
        raise ValueError("prime mismatch")
    p = a.p
    va, vb = valuation(a), valuation(b)
    # the p-powers cancel; only unit residues survive
    ua, ub = unit_residue(a), unit_residue(b)
    t = pow(ua, vb, p) * pow(ub, -va, p) % p if p > 2 else 1
    if (va * vb) % 2:
        t = -t % p
    return t


def hilbert_symbol(a, b):
    """Quadratic Hilbert symbol at odd p as an invariant in {0, 1/2}."""
    if a.p == 2:
        raise EvenP("Hilbert symbol is only implemented for odd p")
    t = tame_symbol(a, b)
    return BrauerInvariant(0 if legendre(t, a.p) == 1 else 1, 2)


def residue_character_index(t, n, p):
    """Index of the unramified character attached to t in F_p^x, in Z/n.

    ``t`` is embedded into F_p(zeta_n) and its Kummer index taken there.
    """
    field = cyclotomic_extension(p, n)
    if t % p == 0:
        raise ZeroElement("residue character of zero")
    return kummer_class_index(field.elem(t), n)


def norm_residue_invariant(a, b, n):
    """Invariant of the cyclic algebra N_n{a, b} in (1/n)Z/Z."""
    _require_nonzero(a, b)
    p = a.p
    if gcd(n, p) != 1:
        raise PDividesN(f"p={p} divides n={n}")
    if n == 1:
        return BrauerInvariant.zero()
    return BrauerInvariant(residue_character_index(tame_symbol(a, b), n, p), n)
