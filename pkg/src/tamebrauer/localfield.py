"""Finite-precision arithmetic in Q_p.

A nonzero element is stored as ``p**ordp * unit`` where ``unit`` is known
modulo ``p**precision``.  Values built from exact integers or rationals also
remember their exact value, so arithmetic between exact operands stays exact
(``x - 1`` at ``x = 1`` is a genuine zero, not a precision failure).  As soon
as one operand is truncated the result is truncated as well, and additions
that cancel leading digits lose precision accordingly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .errors import (
    DenominatorDivisibleByP,
    DivisionByZero,
    ExactZero,
    PrecisionExhausted,
)
from .ntheory import require_prime

DEFAULT_PRECISION = 32

__all__ = [
    "DEFAULT_PRECISION",
    "PAdic",
    "padic_make",
    "padic_arith",
    "valuation",
    "unit_residue",
    "unit_class_equal",
]


def _vp(n, p):
    """p-adic valuation of a nonzero integer."""
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


@dataclass(frozen=True, slots=True)
class PAdic:
    p: int
    precision: int
    ordp: int | None  # None marks the exact zero
    unit: int = 0
    exact: Fraction | None = field(default=None, compare=False, repr=False)

    @property
    def is_zero(self):
        return self.ordp is None

    @property
    def is_exact(self):
        return self.exact is not None

    @property
    def absolute_precision(self):
        """Exponent k such that the value is known modulo p**k (None if exact)."""
        if self.exact is not None:
            return None
        return self.ordp + self.precision

    def reduce_mod(self, k):
        """Integer in [0, p**k) congruent to this element; needs ordp >= 0."""
        m = self.p**k
        if self.is_zero:
            return 0
        if self.ordp < 0:
            raise ValueError("element is not integral")
        if self.exact is not None:
            r = self.exact
            return r.numerator * pow(r.denominator, -1, m) % m
        if self.ordp + self.precision < k:
            raise PrecisionExhausted(
                f"need {k} digits, only {self.ordp + self.precision} known"
            )
        return self.unit * self.p**self.ordp % m

    def digits(self):
        """Base-p digits of the unit part, least significant first."""
        out, u = [], self.unit
        for _ in range(self.precision):
            out.append(u % self.p)
            u //= self.p
        return out

    def _coerce(self, other):
        if isinstance(other, PAdic):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        if isinstance(other, (int, Rational)):
            return _from_rational(self.p, self.precision, Fraction(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(self, other, 1)

    def __radd__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(other, self, 1)

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(self, other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _add(other, self, -1)

    def __mul__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is NotImplemented else _div(other, self)

    def __neg__(self):
        if self.is_zero:
            return self
        m = self.p**self.precision
        ex = -self.exact if self.exact is not None else None
        return PAdic(self.p, self.precision, self.ordp, -self.unit % m, ex)

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return _div(_one(self), self**-e)
        result = _one(self)
        base = self
        while e:
            if e & 1:
                result = _mul(result, base)
            base = _mul(base, base)
            e >>= 1
        return result

    def __str__(self):
        if self.is_zero:
            return "0"
        tail = "" if self.is_exact else f" + O({self.p}^{self.ordp + self.precision})"
        return f"{self.p}^{self.ordp}*{self.unit}{tail}"


def _one(like):
    return PAdic(like.p, like.precision, 0, 1, Fraction(1))


def _from_rational(p, precision, r):
    """Decompose any nonzero rational (p may divide the denominator)."""
    if r == 0:
        return PAdic(p, precision, None, 0, Fraction(0))
    num, den = r.numerator, r.denominator
    vn, vd = _vp(num, p), _vp(den, p)
    num //= p**vn
    den //= p**vd
    m = p**precision
    return PAdic(p, precision, vn - vd, num * pow(den, -1, m) % m, r)


def padic_make(p, precision, value, exact=True):
    """Build a p-adic number from an integer or a rational with p-free denominator.

    With ``exact=False`` the value is truncated to ``precision`` digits and
    forgets its exact origin, which is how inexact inputs enter computations.
    """
    require_prime(p)
    if not isinstance(precision, int) or precision < 1:
        raise ValueError(f"precision must be a positive integer, got {precision!r}")
    r = Fraction(value)
    if r.denominator % p == 0:
        raise DenominatorDivisibleByP(f"denominator of {value} is divisible by {p}")
    out = _from_rational(p, precision, r)
    if not exact and not out.is_zero:
        out = PAdic(p, precision, out.ordp, out.unit)
    return out


def _add(a, b, sign):
    prec = min(a.precision, b.precision)
    if a.exact is not None and b.exact is not None:
        return _from_rational(a.p, prec, a.exact + sign * b.exact)
    if b.is_zero:
        return _with_precision(a, prec)
    if a.is_zero:
        return _with_precision(-b if sign < 0 else b, prec)
    p = a.p
    # absolute precision of the result; exact operands never limit it
    caps = [x.ordp + x.precision for x in (a, b) if x.exact is None]
    cap = min(caps)
    low = min(a.ordp, b.ordp)
    mod = p ** (cap - low)
    s = (_scaled(a, low, mod) + sign * _scaled(b, low, mod)) % mod
    if s == 0:
        raise PrecisionExhausted(
            f"difference vanishes to the {cap} known digits; valuation undetermined"
        )
    k = _vp(s, p)
    rel = min(cap - low - k, prec)
    return PAdic(p, rel, low + k, (s // p**k) % p**rel)


def _scaled(x, low, mod):
    """x / p**low as an integer modulo ``mod`` (x.ordp >= low)."""
    if x.exact is not None:
        r = x.exact / Fraction(x.p) ** low
        return r.numerator * pow(r.denominator, -1, mod) % mod
    return x.unit * x.p ** (x.ordp - low) % mod


def _with_precision(a, prec):
    if a.is_zero or prec >= a.precision:
        return a
    return PAdic(a.p, prec, a.ordp, a.unit % a.p**prec, a.exact)


def _mul(a, b):
    prec = min(a.precision, b.precision)
    if a.exact is not None and b.exact is not None:
        return _from_rational(a.p, prec, a.exact * b.exact)
    if a.is_zero or b.is_zero:
        return PAdic(a.p, prec, None, 0, Fraction(0))
    m = a.p**prec
    return PAdic(a.p, prec, a.ordp + b.ordp, a.unit * b.unit % m)


def _div(a, b):
    if b.is_zero:
        raise DivisionByZero("division by an exact zero")
    prec = min(a.precision, b.precision)
    if a.exact is not None and b.exact is not None:
        return _from_rational(a.p, prec, a.exact / b.exact)
    if a.is_zero:
        return PAdic(a.p, prec, None, 0, Fraction(0))
    m = a.p**prec
    return PAdic(a.p, prec, a.ordp - b.ordp, a.unit * pow(b.unit, -1, m) % m)


_OPS = {
    "add": lambda a, b: _add(a, b, 1),
    "sub": lambda a, b: _add(a, b, -1),
    "mul": _mul,
    "div": _div,
}


def padic_arith(op, a, b):
    """Apply ``op`` in {'add', 'sub', 'mul', 'div'} to two p-adic numbers."""
    try:
        fn = _OPS[op]
    except KeyError:
        raise ValueError(f"unknown operation {op!r}") from None
    if a.p != b.p:
        raise ValueError(f"prime mismatch: {a.p} vs {b.p}")
    return fn(a, b)


def valuation(a):
    if a.is_zero:
        raise ExactZero("valuation of exact zero")
    return a.ordp


def unit_residue(a):
    """The unit part reduced modulo p, an integer in [1, p)."""
    if a.is_zero:
        raise ExactZero("unit residue of exact zero")
    return a.unit % a.p


def unit_class_equal(a, b):
    """True iff the unit parts agree modulo p, i.e. a/b lies in p^Z (1 + pZ_p)."""
    return unit_residue(a) == unit_residue(b)
