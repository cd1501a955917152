"""Affine models X = A^d over Z_p with boundary divisor Z, and how points meet Z.

Z is the union of horizontal components V(f_i) and, optionally, the special
fibre V(p).  Components are indexed horizontal first (in the order given),
then V(p) last.

The intersection data of a point x is (reduction of x, m_i, r_i) where m_i is
ord_p f_i(x) and r_i the residue of the unit part of f_i(x).  Equality of
this data is the sufficient condition used for comparing evaluation maps.
The r_i depend on the chosen equation f_i, but replacing f_i by c * f_i
rescales r_i by c mod p for every point, so equality is unaffected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ModelError, PointOnBoundaryGenerically, PrecisionExhausted
from .localfield import DEFAULT_PRECISION, PAdic, _from_rational, _vp, padic_make, valuation
from .ntheory import require_prime
from .poly import PolyRing, poly_str


@dataclass(frozen=True)
class SchemeModel:
    p: int
    dim: int
    horizontal: tuple
    include_vertical: bool = True

    def __post_init__(self):
        require_prime(self.p)
        if self.dim < 1:
            raise ModelError("dimension must be >= 1")
        for f in self.horizontal:
            if f.is_zero or f.total_degree() < 1:
                raise ModelError(f"boundary equation {poly_str(f)} must be nonconstant")
            content = int(f.content())
            if content % self.p == 0:
                raise ModelError(f"{poly_str(f)} has content divisible by p={self.p}")
            if self.dim == 1 and not f.is_sqf:
                raise ModelError(f"{poly_str(f)} is not squarefree; Z must be reduced")

    @classmethod
    def from_strings(cls, p, dim, equations, include_vertical=True):
        ring = PolyRing(dim, p)
        return cls(p, dim, tuple(ring.parse(e) for e in equations), include_vertical)

    @property
    def ring(self):
        return PolyRing(self.dim, self.p)

    @property
    def n_components(self):
        return len(self.horizontal) + (1 if self.include_vertical else 0)

    @property
    def vertical_index(self):
        return len(self.horizontal) if self.include_vertical else None

    def component_name(self, i):
        if i == self.vertical_index:
            return "V(p)"
        return f"V({poly_str(self.horizontal[i])})"

    def point(self, values, precision=DEFAULT_PRECISION, exact=True):
        return OPoint.of(self.p, values, precision, exact)


def gm_model(p):
    """G_m inside A^1 over Z_p: boundary V(x1) and V(p)."""
    return SchemeModel.from_strings(p, 1, ["x1"])


@dataclass(frozen=True)
class OPoint:
    coords: tuple

    def __post_init__(self):
        for c in self.coords:
            if not c.is_zero and c.ordp < 0:
                raise ModelError(f"coordinate {c} is not in Z_p")

    @classmethod
    def of(cls, p, values, precision=DEFAULT_PRECISION, exact=True):
        out = []
        for v in values:
            out.append(v if isinstance(v, PAdic) else padic_make(p, precision, v, exact))
        return cls(tuple(out))

    @property
    def p(self):
        return self.coords[0].p

    def reduction(self):
        return tuple(c.reduce_mod(1) for c in self.coords)

    def __str__(self):
        vals = []
        for c in self.coords:
            vals.append(str(c.exact) if c.is_exact else str(c))
        return "(" + ", ".join(vals) + ")"


@dataclass(frozen=True)
class IntersectionData:
    reduction: tuple
    multiplicities: tuple
    residues: tuple

    def __str__(self):
        parts = [f"(m={m}, r={r})" for m, r in zip(self.multiplicities, self.residues)]
        return f"xbar={self.reduction} " + " ".join(parts)


@lru_cache(maxsize=4096)
def _terms(f):
    return tuple((tuple(m), int(c)) for m, c in f.terms())


def eval_poly(f, x):
    """f(x) as a p-adic number, exact when every coordinate is exact."""
    terms = _terms(f)
    coords = x.coords
    prec = min(c.precision for c in coords)
    p = coords[0].p
    if all(c.is_exact for c in coords):
        vals = [c.exact for c in coords]
        total = Fraction(0)
        for mono, coeff in terms:
            t = Fraction(coeff)
            for v, e in zip(vals, mono):
                if e:
                    t *= v**e
            total += t
        return _from_rational(p, prec, total)
    # integer coefficients: f(x) is known modulo the smallest p^A among the
    # inexact coordinates, so evaluate there in one pass (no intermediate
    # cancellation can lose digits)
    A = min(c.absolute_precision for c in coords if not c.is_exact)
    mod = p**A
    ints = [c.reduce_mod(A) for c in coords]
    total = 0
    for mono, coeff in terms:
        t = coeff
        for v, e in zip(ints, mono):
            if e:
                t = t * pow(v, e, mod)
        total += t
    total %= mod
    if total == 0:
        raise PrecisionExhausted(f"value vanishes modulo p^{A}; valuation undetermined")
    k = _vp(total, p)
    return PAdic(p, min(A - k, prec), k, (total // p**k) % p ** min(A - k, prec))


def multiplicity(model, i, x):
    """Length of Z_i x_X Spec(O) at x: ord_p f_i(x), and 1 for V(p)."""
    if i == model.vertical_index:
        return 1
    return valuation(_component_value(model, i, x))


def _component_value(model, i, x):
    f = model.horizontal[i]
    try:
        val = eval_poly(f, x)
    except PrecisionExhausted as exc:
        raise PointOnBoundaryGenerically(
            f"{poly_str(f)} at {x} is zero to available precision"
        ) from exc
    if val.is_zero:
        raise PointOnBoundaryGenerically(f"{x} lies on {model.component_name(i)}")
    return val


def intersection_data(model, x):
    if len(x.coords) != model.dim:
        raise ModelError(f"point has {len(x.coords)} coordinates, model dim is {model.dim}")
    mults, residues = [], []
    for i in range(model.n_components):
        if i == model.vertical_index:
            mults.append(1)
            residues.append(1)
            continue
        val = _component_value(model, i, x)
        mults.append(val.ordp)
        residues.append(val.unit % model.p)
    return IntersectionData(x.reduction(), tuple(mults), tuple(residues))


def strong_equiv(d1, d2):
    return (
        d1.reduction == d2.reduction
        and d1.multiplicities == d2.multiplicities
        and d1.residues == d2.residues
    )


def ideal_equality_a1(u1, u2):
    """Whether (pX, X - u1) = (pX, X - u2) in Z_p[X], i.e. u1 = u2 mod p^{v(u1)+1}."""
    k = valuation(u1) + 1
    return u1.reduce_mod(k) == u2.reduce_mod(k)


def poly_mod_p_value(f, point_mod_p, p):
    """Value in F_p of f at a point of F_p^d."""
    total = 0
    for mono, coeff in _terms(f):
        t = coeff
        for v, e in zip(point_mod_p, mono):
            if e:
                t = t * pow(v, e, p)
        total += t
    return total % p


__all__ = [
    "SchemeModel",
    "OPoint",
    "IntersectionData",
    "gm_model",
    "eval_poly",
    "multiplicity",
    "intersection_data",
    "strong_equiv",
    "ideal_equality_a1",
    "poly_mod_p_value",
]
