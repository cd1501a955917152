"""Arithmetic in F_{p^f}, cyclotomic residue fields and roots of unity.

Fields are built on the lexicographically smallest monic irreducible of
degree f (coefficients compared lowest degree first), so every derived value
(the fixed root of unity, discrete logs, Kummer indices) is reproducible.

Elements are enumerated by the integer ``sum(c_i * p**i)``; the fixed
primitive n-th root of unity of a field is the element of exact order n that
comes first in this enumeration.

The multiply/power/discrete-log kernels come from the compiled
``_fqcore`` extension when it is importable and from ``_fqcore_py``
otherwise.  Setting ``TBL_PURE_PYTHON=1`` forces the fallback.
"""

from __future__ import annotations

import itertools
import os
from functools import lru_cache
from math import gcd

from . import _fqcore_py
from .errors import NoSuchRoot, NotInMuN, PDividesN, ZeroElement
from .ntheory import multiplicative_order, prime_factors, require_prime

if os.environ.get("TBL_PURE_PYTHON") == "1":
    _core = _fqcore_py
else:
    try:
        from . import _fqcore as _core
    except ImportError:  # extension not built
        _core = _fqcore_py

BACKEND = _core.BACKEND
_C_LIMIT = 1 << 31


def _kernels(p):
    return _core if p < _C_LIMIT else _fqcore_py


# --- polynomial helpers over F_p (lists, lowest degree first) ---------------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    a = _trim([c % p for c in a])
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, bj in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bj) % p
        _trim(a)
    return a


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(mod, p):
    """Rabin's test for a monic polynomial given lowest degree first."""
    f = len(mod) - 1
    if f == 1:
        return True
    kern = _kernels(p)
    x = (0, 1) + (0,) * (f - 2)

    def frob_power(k):
        y = x
        for _ in range(k):
            y = kern.powmod(y, p, mod, p)
        return y

    if frob_power(f) != x:
        return False
    for ell in prime_factors(f):
        y = list(frob_power(f // ell))
        y[1] = (y[1] - 1) % p
        g = _poly_gcd(list(mod), y, p)
        if len(g) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(p, f):
    """Lexicographically smallest monic irreducible of degree f over F_p."""
    for low in itertools.product(range(p), repeat=f):
        if f > 1 and low[0] == 0:
            continue
        mod = low + (1,)
        if _is_irreducible(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")  # unreachable


# --- fields and elements -----------------------------------------------------


class FqField:
    """The field F_p[x]/(modulus) with q = p**f elements."""

    __slots__ = ("p", "f", "modulus", "q", "_kern")

    def __init__(self, p, f, modulus=None):
        require_prime(p)
        if f < 1:
            raise ValueError("extension degree must be >= 1")
        if modulus is None:
            modulus = smallest_irreducible(p, f)
        modulus = tuple(c % p for c in modulus)
        if len(modulus) != f + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree f")
        if not _is_irreducible(modulus, p):
            raise ValueError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.f = f
        self.modulus = modulus
        self.q = p**f
        self._kern = _kernels(p)

    @classmethod
    @lru_cache(maxsize=None)
    def standard(cls, p, f):
        return cls(p, f)

    def __eq__(self, other):
        return (
            isinstance(other, FqField)
            and self.p == other.p
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.modulus))

    def __repr__(self):
        return f"FqField(p={self.p}, f={self.f}, modulus={self.modulus})"

    def elem(self, value):
        """Element from an integer (embedded from F_p) or a coefficient sequence."""
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element belongs to another field")
            return value
        if isinstance(value, int):
            coeffs = (value % self.p,) + (0,) * (self.f - 1)
        else:
            coeffs = tuple(c % self.p for c in value)
            if len(coeffs) != self.f:
                raise ValueError(f"expected {self.f} coefficients")
        return FqElem(self, coeffs)

    def from_index(self, k):
        coeffs = []
        for _ in range(self.f):
            k, c = divmod(k, self.p)
            coeffs.append(c)
        return FqElem(self, tuple(coeffs))

    def elements(self):
        """All elements in enumeration order (index 0 is zero)."""
        return (self.from_index(k) for k in range(self.q))

    @property
    def zero(self):
        return self.elem(0)

    @property
    def one(self):
        return self.elem(1)


class FqElem:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        self.field = field
        self.coeffs = coeffs

    def _lift(self, other):
        if isinstance(other, FqElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        if isinstance(other, int):
            return self.field.elem(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple(-a % p for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        F = self.field
        return FqElem(F, F._kern.mulmod(self.coeffs, other.coeffs, F.modulus, F.p))

    __rmul__ = __mul__

    def __pow__(self, e):
        F = self.field
        if e < 0:
            return self.inverse() ** (-e)
        return FqElem(F, F._kern.powmod(self.coeffs, e, F.modulus, F.p))

    def inverse(self):
        if self.is_zero:
            raise ZeroElement("zero has no inverse")
        return self ** (self.field.q - 2)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.elem(other)
        return (
            isinstance(other, FqElem)
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.field.p, self.coeffs))

    def __repr__(self):
        if self.field.f == 1:
            return f"{self.coeffs[0]} (F_{self.field.p})"
        return f"FqElem{self.coeffs} (F_{self.field.q})"

    @property
    def is_zero(self):
        return not any(self.coeffs)

    @property
    def index(self):
        """Position in the field's enumeration order."""
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def in_prime_field(self):
        return not any(self.coeffs[1:])

    def to_int(self):
        if not self.in_prime_field():
            raise ValueError(f"{self!r} is not in the prime field")
        return self.coeffs[0]

    def frobenius(self):
        return self ** self.field.p


# --- operations --------------------------------------------------------------


def cyclotomic_extension(p, n):
    """F_p(zeta_n) = F_{p^f} with f the order of p modulo n."""
    require_prime(p)
    if n < 1:
        raise ValueError("n must be positive")
    if gcd(n, p) != 1:
        raise PDividesN(f"p={p} divides n={n}")
    return FqField.standard(p, multiplicative_order(p, n))


def has_exact_order(z, n):
    if z ** n != 1:
        return False
    return all(z ** (n // ell) != 1 for ell in prime_factors(n))


@lru_cache(maxsize=None)
def primitive_nth_root(field, n):
    """The session-fixed primitive n-th root of unity of ``field``."""
    if n < 1 or (field.q - 1) % n:
        raise NoSuchRoot(f"{n} does not divide q - 1 = {field.q - 1}")
    if n == 1:
        return field.one
    cofactor = (field.q - 1) // n
    for k in range(1, field.q):
        z = field.from_index(k) ** cofactor
        if has_exact_order(z, n):
            break
    else:  # pragma: no cover - F_q^x is cyclic
        raise NoSuchRoot("no element of exact order n")
    # all elements of exact order n are z^j with gcd(j, n) = 1
    best, cur = None, field.one
    for j in range(1, n):
        cur = cur * z
        if gcd(j, n) == 1 and (best is None or cur.index < best.index):
            best = cur
    return best


def dlog_mu_n(t, zeta, n):
    """k in [0, n) with zeta**k == t, by baby-step giant-step."""
    F = t.field
    if zeta.field != F:
        raise ValueError("t and zeta live in different fields")
    if not has_exact_order(zeta, n):
        raise NoSuchRoot(f"zeta does not have exact order {n}")
    if t.is_zero or t ** n != 1:
        raise NotInMuN(f"{t!r} is not an {n}-th root of unity")
    k = F._kern.bsgs(t.coeffs, zeta.coeffs, n, F.modulus, F.p)
    if k < 0:  # pragma: no cover - t^n = 1 guarantees a hit
        raise NotInMuN(f"{t!r} not found in <zeta>")
    return k


def kummer_class_index(t, n):
    """Index of t in F_q^x / (F_q^x)^n, normalised by the fixed root of unity."""
    if t.is_zero:
        raise ZeroElement("Kummer class of zero")
    F = t.field
    zeta = primitive_nth_root(F, n)
    return dlog_mu_n(t ** ((F.q - 1) // n), zeta, n)


def norm_to_prime_field(t):
    """Product of the Frobenius conjugates of t, returned as an integer mod p."""
    F = t.field
    acc, conj = F.one, t
    for _ in range(F.f):
        acc = acc * conj
        conj = conj.frobenius()
    return acc.to_int()
