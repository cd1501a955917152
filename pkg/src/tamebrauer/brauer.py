"""Symbolic Brauer classes on U, their evaluation at points, and their residues.

Supported classes:

* ``Quaternion(f, g)``    the quaternion algebra (f, g)_{-1}
* ``Cyclic(f, g, n)``     the norm N_n{f, g}_{zeta_n} of a degree-n symbol algebra
* ``CupUnram(f, n, k)``   [f]_n cup chi, chi the unramified character with chi(Frob) = k
* ``ConstantInv(q)``      a constant class from Br(Q_p)
* ``Product(...)``        formal sums of the above (invariants add in Q/Z)

Every f, g must be invertible on U: a p-free constant times p-powers and
powers of the boundary equations.  Residues along boundary components are
the divisor-wise tame symbols of (f, g).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import sympy

from .divisor import (
    OPoint,
    eval_poly,
    intersection_data,
    poly_mod_p_value,
    strong_equiv,
)
from .errors import (
    HypothesisViolated,
    NonFactorable,
    PDividesN,
    PrecisionExhausted,
    ResidueFunctionVanishes,
    ValidationError,
)
from .localfield import valuation
from .ntheory import prime_factors
from .poly import PolySyntaxError, parse_sexpr
from .symbols import (
    BrauerInvariant,
    hilbert_symbol,
    norm_residue_invariant,
    residue_character_index,
    tame_symbol,
)


# --- class expressions -------------------------------------------------------


@dataclass(frozen=True)
class Quaternion:
    f: sympy.Poly
    g: sympy.Poly

    @property
    def order(self):
        return 2

    def __str__(self):
        return f"(quat {poly_sexpr(self.f)} {poly_sexpr(self.g)})"


@dataclass(frozen=True)
class Cyclic:
    f: sympy.Poly
    g: sympy.Poly
    n: int

    @property
    def order(self):
        return self.n

    def __str__(self):
        return f"(cyclic {poly_sexpr(self.f)} {poly_sexpr(self.g)} {self.n})"


@dataclass(frozen=True)
class CupUnram:
    f: sympy.Poly
    n: int
    k: int

    @property
    def order(self):
        return self.n

    def __str__(self):
        return f"(cup-unram {poly_sexpr(self.f)} {self.n} {self.k % self.n})"


@dataclass(frozen=True)
class ConstantInv:
    q: BrauerInvariant

    @property
    def order(self):
        return self.q.den

    def __str__(self):
        return f"(const {self.q.num} {self.q.den})"


@dataclass(frozen=True)
class Product:
    factors: tuple

    @property
    def order(self):
        n = 1
        for c in self.factors:
            n = n * c.order // gcd(n, c.order)
        return n

    def __str__(self):
        return "(prod " + " ".join(str(c) for c in self.factors) + ")"


def factors_of(expr):
    return expr.factors if isinstance(expr, Product) else (expr,)


def poly_sexpr(f):
    return _sexpr(f.as_expr())


def _sexpr(e):
    if e.is_Integer:
        return str(int(e))
    if e.is_Symbol:
        return str(e)
    if e.is_Add:
        return "(+ " + " ".join(_sexpr(a) for a in sympy.Add.make_args(e)) + ")"
    if e.is_Mul:
        return "(* " + " ".join(_sexpr(a) for a in sympy.Mul.make_args(e)) + ")"
    if e.is_Pow:
        return f"(^ {_sexpr(e.base)} {int(e.exp)})"
    raise ValueError(f"cannot render {e}")


def parse_class(text, ring):
    """Parse a class s-expression such as ``(cyclic x1 (+ x1 1) 3)``."""
    try:
        node = parse_sexpr(text)
        return _class_from_node(node, ring)
    except PolySyntaxError as exc:
        raise ValidationError(str(exc)) from exc


def _int_atom(tok, what):
    if not isinstance(tok, str) or not tok.lstrip("-").isdigit():
        raise ValidationError(f"{what} must be an integer, got {tok!r}")
    return int(tok)


def _class_from_node(node, ring):
    if not isinstance(node, list) or not node:
        raise ValidationError(f"expected a class form, got {node!r}")
    head, *args = node
    arity = {"quat": 2, "cyclic": 3, "cup-unram": 3, "const": 2}
    if head in arity and len(args) != arity[head]:
        raise ValidationError(f"({head} ...) takes {arity[head]} arguments")
    if head == "quat":
        return Quaternion(ring.from_sexpr(args[0]), ring.from_sexpr(args[1]))
    if head == "cyclic":
        n = _int_atom(args[2], "n")
        if n < 1:
            raise ValidationError("n must be positive")
        return Cyclic(ring.from_sexpr(args[0]), ring.from_sexpr(args[1]), n)
    if head == "cup-unram":
        n = _int_atom(args[1], "n")
        if n < 1:
            raise ValidationError("n must be positive")
        return CupUnram(ring.from_sexpr(args[0]), n, _int_atom(args[2], "k") % n)
    if head == "const":
        den = _int_atom(args[1], "denominator")
        if den < 1:
            raise ValidationError("denominator must be positive")
        return ConstantInv(BrauerInvariant(_int_atom(args[0], "numerator"), den))
    if head == "prod":
        return Product(tuple(_class_from_node(a, ring) for a in args))
    raise ValidationError(f"unknown class form {head!r}")


# --- factorisation over the boundary ------------------------------------------


@dataclass(frozen=True)
class BoundaryFactorization:
    """f = unit * p**p_exp * prod_i f_i**exps[i]."""

    unit: Fraction
    p_exp: int
    exps: tuple

    def order_along(self, model, i):
        return self.p_exp if i == model.vertical_index else self.exps[i]


@lru_cache(maxsize=4096)
def boundary_factorization(model, f):
    if f.is_zero:
        raise NonFactorable("zero is not invertible on U")
    rest = f.set_domain(sympy.QQ)
    exps = []
    for fi in model.horizontal:
        fi_q = fi.set_domain(sympy.QQ)
        e = 0
        while rest.total_degree() >= fi_q.total_degree():
            q, r = rest.div(fi_q)
            if not r.is_zero:
                break
            rest, e = q, e + 1
        exps.append(e)
    if rest.total_degree() > 0:
        raise NonFactorable(
            f"{f.as_expr()} is not a unit times boundary equations "
            f"(leftover factor {rest.as_expr()})"
        )
    c = Fraction(int(rest.LC().p), int(rest.LC().q))
    p = model.p
    e = 0
    while c.numerator % p == 0:
        c /= p
        e += 1
    while c.denominator % p == 0:
        c *= p
        e -= 1
    if e and not model.include_vertical:
        raise NonFactorable("p is not invertible on U when V(p) is not in the boundary")
    return BoundaryFactorization(c, e, tuple(exps))


def _class_polys(c):
    if isinstance(c, (Quaternion, Cyclic)):
        return (c.f, c.g)
    if isinstance(c, CupUnram):
        return (c.f,)
    return ()


def validate_class(expr, model):
    """Check every factor of ``expr`` is defined on U for ``model``."""
    for c in factors_of(expr):
        if isinstance(c, Product):
            validate_class(c, model)
            continue
        for f in _class_polys(c):
            boundary_factorization(model, f)
        if isinstance(c, (Cyclic, CupUnram)) and gcd(c.n, model.p) != 1:
            raise PDividesN(f"p={model.p} divides n={c.n}")
        if isinstance(c, ConstantInv) and c.q.num and not model.include_vertical:
            raise ValidationError("nonzero constant classes need V(p) in the boundary")
    return expr


# --- evaluation ---------------------------------------------------------------


def evaluate(expr, model, x):
    """Invariant in Q/Z of the pullback of ``expr`` along the point x."""
    validate_class(expr, model)
    total = BrauerInvariant.zero()
    for c in factors_of(expr):
        total = total + _evaluate_one(c, x)
    return total


def _evaluate_one(c, x):
    if isinstance(c, Product):
        return sum((_evaluate_one(d, x) for d in c.factors), BrauerInvariant.zero())
    if isinstance(c, Quaternion):
        return hilbert_symbol(eval_poly(c.f, x), eval_poly(c.g, x))
    if isinstance(c, Cyclic):
        return norm_residue_invariant(eval_poly(c.f, x), eval_poly(c.g, x), c.n)
    if isinstance(c, CupUnram):
        return BrauerInvariant(c.k * valuation(eval_poly(c.f, x)), c.n)
    if isinstance(c, ConstantInv):
        return c.q
    raise TypeError(f"not a class expression: {c!r}")


# --- residues -----------------------------------------------------------------


@dataclass(frozen=True)
class ResidueDescriptor:
    """Residue of a class along one boundary component.

    The residue function is ``sign * unit * p**p_exp * prod_j f_j**powers[j]``
    restricted to the component; ``shift`` adds a constant unramified
    character (used for cup products with unramified characters and for
    constant classes).
    """

    component: int
    exponents: tuple
    n: int
    sign: int
    unit: Fraction
    p_exp: int
    powers: tuple
    shift: int = 0
    model: object = field(default=None, compare=False, repr=False)

    def describe(self):
        parts = []
        if self.sign < 0:
            parts.append("-1")
        if self.unit != 1:
            parts.append(str(self.unit))
        if self.p_exp:
            parts.append(f"p^{self.p_exp}")
        for j, e in enumerate(self.powers):
            if e:
                parts.append(f"({self.model.component_name(j)[2:-1]})^{e}")
        fn = "*".join(parts) or "1"
        tail = f" + unramified {self.shift}" if self.shift else ""
        return f"{self.model.component_name(self.component)} exps={self.exponents} res={fn}{tail}"


def residues(expr, model):
    """Residue descriptors of every factor of ``expr``, one per affected component."""
    validate_class(expr, model)
    out = []
    for c in factors_of(expr):
        out.extend(_residues_one(c, model))
    return out


def _residues_one(c, model):
    comps = range(model.n_components)
    if isinstance(c, Product):
        return [rd for d in c.factors for rd in _residues_one(d, model)]
    if isinstance(c, (Quaternion, Cyclic)):
        F = boundary_factorization(model, c.f)
        G = boundary_factorization(model, c.g)
        out = []
        for i in comps:
            a, b = F.order_along(model, i), G.order_along(model, i)
            if a == 0 and b == 0:
                continue
            out.append(
                ResidueDescriptor(
                    component=i,
                    exponents=(a, b),
                    n=c.order,
                    sign=-1 if (a * b) % 2 else 1,
                    unit=F.unit**b / G.unit**a,
                    p_exp=F.p_exp * b - G.p_exp * a,
                    powers=tuple(
                        0 if j == i else F.exps[j] * b - G.exps[j] * a
                        for j in range(len(model.horizontal))
                    ),
                    model=model,
                )
            )
        return out
    if isinstance(c, CupUnram):
        F = boundary_factorization(model, c.f)
        out = []
        for i in comps:
            a = F.order_along(model, i)
            if a % c.n:
                out.append(_constant_descriptor(model, i, c.n, c.k * a % c.n, (a, 0)))
        return out
    if isinstance(c, ConstantInv):
        if c.q.num == 0:
            return []
        return [_constant_descriptor(model, model.vertical_index, c.q.den, c.q.num, (0, 0))]
    raise TypeError(f"not a class expression: {c!r}")


def _constant_descriptor(model, i, n, shift, exps):
    zeros = (0,) * len(model.horizontal)
    return ResidueDescriptor(i, exps, n, 1, Fraction(1), 0, zeros, shift, model)


def _residue_value_at(rd, xbar):
    """Value in F_p^x of the residue function at the reduction point."""
    model = rd.model
    p = model.p
    horizontal = rd.component != model.vertical_index
    if horizontal and rd.p_exp:
        raise ResidueFunctionVanishes(
            f"residue function on {model.component_name(rd.component)} has p^{rd.p_exp}"
        )
    val = rd.unit.numerator * pow(rd.unit.denominator, -1, p) * rd.sign
    for j, e in enumerate(rd.powers):
        if not e:
            continue
        fj = poly_mod_p_value(model.horizontal[j], xbar, p)
        if fj == 0:
            raise ResidueFunctionVanishes(
                f"{model.component_name(j)} passes through {xbar} "
                f"on {model.component_name(rd.component)}"
            )
        val *= pow(fj, e, p)
    return val % p


def pullback_residue(rd, data):
    """Pull the residue character back along the reduction point, in Z/n."""
    t = _residue_value_at(rd, data.reduction)
    return (residue_character_index(t, rd.n, rd.model.p) + rd.shift) % rd.n


# --- local extension of residues through intersection points (d = 1) ---------


def _root_multiplicity_mod_p(f, a, p):
    """(k, w): f mod p = (x - a)^k * h with h(a) = w != 0."""
    coeffs = [int(c) % p for c in reversed(f.all_coeffs())]  # low first
    k = 0
    while True:
        # synthetic division by (x - a)
        n = len(coeffs) - 1
        if n < 0:
            raise ResidueFunctionVanishes("boundary equation vanishes mod p")
        q = [0] * n
        acc = 0
        for i in range(n, -1, -1):
            acc = (acc * a + coeffs[i]) % p
            if i > 0:
                q[i - 1] = acc
        if acc != 0:
            return k, acc
        coeffs = q
        k += 1


def _hensel_root(f, a, p, precision):
    """Root of f in Z_p congruent to a, for a simple root a of f mod p."""
    df = f.diff()
    mod = p**precision
    x = a
    for _ in range(precision.bit_length() + 2):
        fx = int(f.eval(x)) % mod
        if fx == 0:
            break
        dfx = int(df.eval(x)) % mod
        if dfx % p == 0:
            raise ResidueFunctionVanishes("component is not transversal to V(p) here")
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return x


def _local_symbol_value(rd, xbar, precision):
    """(-1)^K * w where the residue function is pi^K * (unit w) at the point.

    pi is a local parameter of the component at the reduction point.  This is
    the value of the residue character at the point when that character is
    unramified there, which holds when gcd(n, p - 1) = 1.
    """
    model = rd.model
    p = model.p
    if model.dim != 1:
        raise ResidueFunctionVanishes("local extension is implemented for d = 1 only")
    a = xbar[0]
    w = rd.unit.numerator * pow(rd.unit.denominator, -1, p) * rd.sign
    if rd.component == model.vertical_index:
        K = 0
        for j, e in enumerate(rd.powers):
            if e:
                k, wj = _root_multiplicity_mod_p(model.horizontal[j], a, p)
                K += k * e
                w *= pow(wj, e, p)
    else:
        K = rd.p_exp
        alpha = _hensel_root(model.horizontal[rd.component], a, p, precision)
        pt = OPoint.of(p, [alpha], precision, exact=False)
        for j, e in enumerate(rd.powers):
            if e:
                try:
                    v = eval_poly(model.horizontal[j], pt)
                except PrecisionExhausted as exc:
                    raise ResidueFunctionVanishes(
                        f"{model.component_name(j)} meets {model.component_name(rd.component)} generically"
                    ) from exc
                K += v.ordp * e
                w *= pow(v.unit % p, e, p)
    if K % 2:
        w = -w
    return w % p


def pullback_residue_extended(rd, data, precision=32):
    """Like ``pullback_residue`` but defined at points where the residue
    function has a zero or pole, via the local symbol with a uniformizer."""
    try:
        return pullback_residue(rd, data)
    except ResidueFunctionVanishes:
        pass
    t = _local_symbol_value(rd, data.reduction, precision)
    return (residue_character_index(t, rd.n, rd.model.p) + rd.shift) % rd.n


# --- commutative diagram of residues -----------------------------------------


@dataclass(frozen=True)
class DiagramReport:
    lhs: int
    rhs: int
    n: int

    @property
    def equal(self):
        return self.lhs == self.rhs


def _lhs_one(c, x, n):
    """Residue of u*(c) in H^1(F, Z/n), computed from the values at the point."""
    if isinstance(c, Product):
        return sum(_lhs_one(d, x, n) for d in c.factors) % n
    scale = n // c.order
    p = x.p
    if isinstance(c, (Quaternion, Cyclic)):
        t = tame_symbol(eval_poly(c.f, x), eval_poly(c.g, x))
        return scale * residue_character_index(t, c.order, p) % n
    if isinstance(c, CupUnram):
        return scale * c.k * valuation(eval_poly(c.f, x)) % n
    if isinstance(c, ConstantInv):
        return c.q.scaled_to(n)
    raise TypeError(f"not a class expression: {c!r}")


def check_diagram_4(expr, model, x, precision=32):
    """Compare res(u* expr) with sum_i m_i x_i^* res_i(expr), both in Z/n."""
    p = model.p
    n = expr.order
    if gcd(n, p) != 1 or gcd(n, p - 1) != 1:
        raise HypothesisViolated(
            f"need gcd(n, p) = gcd(n, p - 1) = 1, got n={n}, p={p}"
        )
    validate_class(expr, model)
    lhs = _lhs_one(expr, x, n)
    data = intersection_data(model, x)
    rhs = 0
    for rd in residues(expr, model):
        m = data.multiplicities[rd.component]
        if m == 0:
            continue
        scale = n // rd.n
        rhs += m * scale * pullback_residue_extended(rd, data, precision)
    return DiagramReport(lhs % n, rhs % n, n)


# --- separating families and the comparison harness ---------------------------


def spanning_classes(p, l_bound):
    """Classes on G_m in A^1 that separate points by valuation (up to l_bound)
    and by the residue of the unit part."""
    if p == 2:
        raise ValueError("spanning_classes needs an odd prime")
    from .divisor import gm_model

    ring = gm_model(p).ring
    X = ring.var(0)
    n = 2 * l_bound + 1
    while gcd(n, p) != 1:
        n += 1
    w = next(
        g for g in range(2, p)
        if all(pow(g, (p - 1) // ell, p) != 1 for ell in prime_factors(p - 1))
    )
    return [
        CupUnram(X, n, 1),
        Cyclic(X, ring.const(w), p - 1),
        Cyclic(X, ring.const(p), p - 1),
    ]


@dataclass
class EquivalenceReport:
    strong_equiv: bool
    evaluations: list
    violations: list

    @property
    def ok(self):
        return not self.violations


def theorem_0_1_check(model, x1, x2, classes):
    """Evaluate every class at both points; strong-equivalent points must agree."""
    eq = strong_equiv(intersection_data(model, x1), intersection_data(model, x2))
    evals, bad = [], []
    for c in classes:
        e1, e2 = evaluate(c, model, x1), evaluate(c, model, x2)
        evals.append((c, e1, e2))
        if eq and e1 != e2:
            bad.append((c, e1, e2))
    return EquivalenceReport(eq, evals, bad)


__all__ = [
    "Quaternion",
    "Cyclic",
    "CupUnram",
    "ConstantInv",
    "Product",
    "BoundaryFactorization",
    "ResidueDescriptor",
    "DiagramReport",
    "EquivalenceReport",
    "parse_class",
    "poly_sexpr",
    "boundary_factorization",
    "validate_class",
    "evaluate",
    "residues",
    "pullback_residue",
    "pullback_residue_extended",
    "check_diagram_4",
    "spanning_classes",
    "theorem_0_1_check",
]
