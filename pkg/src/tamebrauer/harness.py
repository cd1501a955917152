"""Seeded sampling of points and classes, and the property harnesses.

All randomness flows from one ``random.Random(seed)`` (Mersenne Twister), so a
(scenario, seed) pair always yields the same samples.  Sampled points are
built as truncated p-adic numbers at the requested precision; their integer
lifts are small, so reports do not depend on the precision as long as it
exceeds the multiplicities that occur.
"""

from __future__ import annotations

import hashlib
import random
from functools import lru_cache
from math import gcd

from .brauer import (
    ConstantInv,
    Cyclic,
    CupUnram,
    Product,
    Quaternion,
    check_diagram_4,
    theorem_0_1_check,
)
from .divisor import OPoint, SchemeModel, _terms, intersection_data
from .errors import PointOnBoundaryGenerically, PrecisionExhausted
from .localfield import DEFAULT_PRECISION, padic_make
from .report import Report
from .symbols import BrauerInvariant

# the d = 1 models used by the default property runs
THM16_MODELS = (("x1",), ("x1 - 1",), ("x1", "x1 - 1"))
EQUIV_MODELS = (("x1",), ("x1 - 1",), ("x1^2 - 2",))
THM16_CASES = ((5, 3), (2, 3), (3, 5))


def make_rng(seed):
    return random.Random(seed)


def _value_mod(f, a, mod):
    total = 0
    for (e,), c in _terms(f):
        total += c * pow(a, e, mod)
    return total % mod


@lru_cache(maxsize=256)
def near_roots(f, p, level):
    """Residues a mod p^level with f(a) = 0 mod p^level (f univariate)."""
    if level == 0:
        return (0,)
    roots = []
    mod = p**level
    for a in near_roots(f, p, level - 1):
        for t in range(p):
            b = a + t * p ** (level - 1)
            if _value_mod(f, b, mod) == 0:
                roots.append(b)
    return tuple(roots)


def _lift(c):
    """Symmetric integer lift of a truncated p-adic integer (exact values as is)."""
    if c.is_exact:
        return c.exact
    if c.is_zero:
        return 0
    mod = c.p**c.absolute_precision
    v = c.p**c.ordp * c.unit % mod
    return v - mod if 2 * v > mod else v


def point_label(x):
    """Label of a point; small sampled values read the same at any precision."""
    return "(" + ", ".join(str(_lift(c)) for c in x.coords) + ")"


def _make_point(p, values, precision):
    return OPoint(tuple(padic_make(p, precision, v, exact=False) for v in values))


def _on_boundary(model, x):
    try:
        intersection_data(model, x)
    except (PointOnBoundaryGenerically, PrecisionExhausted):
        return True
    return False


def sample_point(model, rng, precision=DEFAULT_PRECISION, l_max=3):
    """A point of U(Z_p) biased towards the boundary.

    For d = 1 a component and a level l <= l_max are chosen and the point is
    drawn from the residues where that component vanishes mod p^l.
    """
    p = model.p
    while True:
        if model.dim == 1:
            level = rng.randrange(l_max + 1)
            comps = list(model.horizontal)
            roots = ()
            if comps:
                roots = near_roots(rng.choice(comps), p, level)
            if roots:
                base = rng.choice(roots)
                value = base + p**level * rng.randrange(1, p ** (l_max + 1))
            else:
                value = rng.randrange(1, p ** (l_max + 2))
            if rng.random() < 0.5:
                value = -value
            values = (value,)
        else:
            values = tuple(rng.randrange(-(p ** (l_max + 1)), p ** (l_max + 1)) for _ in range(model.dim))
        x = _make_point(p, values, precision)
        if not _on_boundary(model, x):
            return x


def perturb(model, x, rng, precision=DEFAULT_PRECISION):
    """A second point strongly equivalent to x: move every coordinate by
    p^K * r with K above every multiplicity of x."""
    p = model.p
    data = intersection_data(model, x)
    k = max(data.multiplicities) + 1
    while True:
        values = []
        for c in x.coords:
            values.append(_lift(c) + p**k * rng.randrange(1, p**2))
        y = _make_point(p, values, precision)
        if not _on_boundary(model, y):
            return y


def random_unit_function(model, rng, max_exp=2):
    """c * p^e * prod f_i^{a_i} with c a small p-free integer."""
    ring = model.ring
    p = model.p
    c = 0
    while c % p == 0:
        c = rng.randrange(1, 4 * p)
    if rng.random() < 0.5:
        c = -c
    f = ring.const(c)
    if model.include_vertical:
        f = f * ring.const(p ** rng.randrange(max_exp + 1))
    for fi in model.horizontal:
        f = f * fi ** rng.randrange(max_exp + 1)
    return f


def random_class(model, rng, n_choices, kinds, depth=0):
    kind = rng.choice(kinds)
    if kind == "prod" and depth == 0:
        sub = [k for k in kinds if k != "prod"]
        return Product(tuple(random_class(model, rng, n_choices, sub, 1) for _ in range(2)))
    if kind == "prod":
        kind = rng.choice([k for k in kinds if k != "prod"])
    n = rng.choice(n_choices)
    if kind == "quat":
        return Quaternion(random_unit_function(model, rng), random_unit_function(model, rng))
    if kind == "cyclic":
        return Cyclic(random_unit_function(model, rng), random_unit_function(model, rng), n)
    if kind == "cup":
        return CupUnram(random_unit_function(model, rng), n, rng.randrange(1, n) if n > 1 else 0)
    if kind == "const":
        return ConstantInv(BrauerInvariant(rng.randrange(n), n))
    raise ValueError(f"unknown class kind {kind!r}")


def _equiv_kinds(model):
    kinds = ["cyclic", "cup", "prod"]
    if model.p != 2:
        kinds.append("quat")
    if model.include_vertical:
        kinds.append("const")
    return kinds


def _digest(lines):
    return hashlib.sha256("\n".join(lines).encode()).hexdigest()[:16]


def equiv_run(model, rng, samples, classes=None, precision=DEFAULT_PRECISION,
              classes_per_pair=4, n_choices=None, table=True):
    """Sample strong-equivalent pairs and compare evaluations on every class.

    With ``classes`` None, fresh random classes are generated per pair.
    """
    p = model.p
    if n_choices is None:
        n_choices = [n for n in range(2, 10) if gcd(n, p) == 1]
    rep = Report(
        f"Strong equivalence vs evaluation, p={p}, boundary "
        + ", ".join(model.component_name(i) for i in range(model.n_components)),
        ("#", "x1", "x2", "strong_equiv", "class", "inv(x1)", "inv(x2)"),
    )
    kinds = _equiv_kinds(model)
    lines, equiv_pairs, n_evals = [], 0, 0
    for i in range(samples):
        x1 = sample_point(model, rng, precision)
        x2 = perturb(model, x1, rng, precision)
        cls = classes if classes is not None else [
            random_class(model, rng, n_choices, kinds) for _ in range(classes_per_pair)
        ]
        res = theorem_0_1_check(model, x1, x2, cls)
        equiv_pairs += res.strong_equiv
        if not res.strong_equiv:
            rep.fail(f"sample {i}: perturbed point {point_label(x2)} is not strongly equivalent")
        for c, e1, e2 in res.evaluations:
            n_evals += 1
            row = (i, point_label(x1), point_label(x2), res.strong_equiv, c, e1, e2)
            lines.append("|".join(map(str, row)))
            if table:
                rep.add(*row)
        for c, e1, e2 in res.violations:
            rep.fail(f"sample {i}: {c} gives {e1} at {point_label(x1)} but {e2} at {point_label(x2)}")
    rep.put("PAIRS", samples)
    rep.put("STRONG_EQUIV_PAIRS", equiv_pairs)
    rep.put("EVALUATIONS", n_evals)
    rep.put("VIOLATIONS", sum(1 for f in rep.failures if " gives " in f))
    rep.put("DIGEST", _digest(lines))
    return rep


def thm16_run(model, n, rng, samples, precision=DEFAULT_PRECISION, table=True):
    """check_diagram_4 on random (class, point) samples with classes of order n."""
    p = model.p
    kinds = ["cyclic", "cup", "prod"] + (["const"] if model.include_vertical else [])
    rep = Report(
        f"Residue diagram, p={p}, n={n}, boundary "
        + ", ".join(model.component_name(i) for i in range(model.n_components)),
        ("#", "class", "x", "data", "lhs", "rhs", "equal"),
    )
    lines, fails = [], 0
    for i in range(samples):
        c = random_class(model, rng, [n], kinds)
        x = sample_point(model, rng, precision)
        d = check_diagram_4(c, model, x, precision)
        data = intersection_data(model, x)
        row = (i, c, point_label(x), f"m={list(data.multiplicities)}", d.lhs, d.rhs, d.equal)
        lines.append("|".join(map(str, row)))
        if table:
            rep.add(*row)
        if not d.equal:
            fails += 1
            rep.fail(f"sample {i}: {c} at {point_label(x)}: lhs {d.lhs} != rhs {d.rhs}")
    rep.put("SAMPLES", samples)
    rep.put("FAILURES", fails)
    rep.put("DIGEST", _digest(lines))
    return rep


def thm16_suite(seed, samples=100, precision=DEFAULT_PRECISION, cases=THM16_CASES, table=False):
    """The default residue diagram run: ``samples`` per (p, n), spread over THM16_MODELS."""
    rng = make_rng(seed)
    out = Report("Residue diagram over the standard d = 1 models")
    for p, n in cases:
        total = 0
        fails = 0
        for j, eqs in enumerate(THM16_MODELS):
            model = SchemeModel.from_strings(p, 1, list(eqs))
            k = samples // len(THM16_MODELS) + (j < samples % len(THM16_MODELS))
            rep = thm16_run(model, n, rng, k, precision, table)
            out.rows.extend(rep.rows)
            out.failures.extend(rep.failures)
            out.put(f"P{p}_N{n}_MODEL{j}_DIGEST", dict(rep.summary)["DIGEST"])
            total += k
            fails += int(dict(rep.summary)["FAILURES"])
        out.put(f"P{p}_N{n}_SAMPLES", total)
        out.put(f"P{p}_N{n}_FAILURES", fails)
    return out


def equiv_suite(seed, pairs_per_model=200, primes=(5, 7), precision=DEFAULT_PRECISION, table=False):
    """The default strong-equivalence run over EQUIV_MODELS at each prime."""
    rng = make_rng(seed)
    out = Report("Strong equivalence vs evaluation over the standard d = 1 models")
    total = equiv = viol = 0
    for p in primes:
        for j, eqs in enumerate(EQUIV_MODELS):
            model = SchemeModel.from_strings(p, 1, list(eqs))
            rep = equiv_run(model, rng, pairs_per_model, precision=precision, table=table)
            s = dict(rep.summary)
            out.rows.extend(rep.rows)
            out.failures.extend(rep.failures)
            out.put(f"P{p}_MODEL{j}_DIGEST", s["DIGEST"])
            total += int(s["PAIRS"])
            equiv += int(s["STRONG_EQUIV_PAIRS"])
            viol += int(s["VIOLATIONS"])
    out.put("PAIRS", total)
    out.put("STRONG_EQUIV_PAIRS", equiv)
    out.put("VIOLATIONS", viol)
    return out


__all__ = [
    "make_rng",
    "near_roots",
    "sample_point",
    "perturb",
    "random_unit_function",
    "random_class",
    "equiv_run",
    "thm16_run",
    "thm16_suite",
    "equiv_suite",
    "point_label",
]
