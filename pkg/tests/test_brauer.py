import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamebrauer.brauer import (
    ConstantInv,
    CupUnram,
    Cyclic,
    Product,
    Quaternion,
    boundary_factorization,
    check_diagram_4,
    evaluate,
    parse_class,
    pullback_residue,
    residues,
    spanning_classes,
    theorem_0_1_check,
    validate_class,
)
from tamebrauer.divisor import SchemeModel, gm_model, intersection_data, strong_equiv
from tamebrauer.errors import (
    HypothesisViolated,
    NonFactorable,
    PDividesN,
    ResidueFunctionVanishes,
    ValidationError,
)
from tamebrauer.symbols import BrauerInvariant

from oracles import hilbert_oracle


def pt(model, *vals, N=24):
    return model.point(vals, N, True)


def test_quaternion_at_plus_minus_p():
    m = gm_model(7)
    X = m.ring.var(0)
    c = Quaternion(m.ring.const(7), X)
    assert evaluate(c, m, pt(m, 7)) == BrauerInvariant(1, 2)
    assert evaluate(c, m, pt(m, -7)) == BrauerInvariant.zero()


@pytest.mark.parametrize("p", [3, 5, 7])
def test_quaternion_evaluation_against_conic(p):
    m = gm_model(p)
    X = m.ring.var(0)
    c = Quaternion(X, X + p)  # X + p is not a boundary product
    with pytest.raises(NonFactorable):
        evaluate(c, m, pt(m, 1))
    c = Quaternion(X, m.ring.const(p))
    for v in range(1, p):
        for l in (0, 1, 2):
            x = v * p**l
            want = hilbert_oracle(x, p, p)
            assert evaluate(c, m, pt(m, x)).as_fraction() == want


def test_cup_unram_is_k_l_over_n():
    p = 5
    m = gm_model(p)
    X = m.ring.var(0)
    for n, k in [(3, 1), (7, 2), (4, 3)]:
        for l in range(5):
            for v in (1, 2, 3, 4, 6):
                got = evaluate(CupUnram(X, n, k), m, pt(m, v * p**l))
                assert got == BrauerInvariant(k * l, n)


def test_quaternion_is_cyclic_of_order_two():
    for p in (3, 5, 7, 11):
        m = gm_model(p)
        X = m.ring.var(0)
        rng = random.Random(p)
        for _ in range(50):
            x = rng.randrange(1, p) * p ** rng.randrange(3)
            a = m.ring.const(rng.choice([-1, 2, 3, p, -p]))
            assert evaluate(Quaternion(X, a), m, pt(m, x)) == evaluate(Cyclic(X, a, 2), m, pt(m, x))


def test_product_is_additive():
    m = gm_model(7)
    X = m.ring.var(0)
    parts = (Quaternion(m.ring.const(7), X), CupUnram(X, 5, 2), ConstantInv(BrauerInvariant(1, 3)))
    for x in (3, 7, 14, 98, -49):
        total = sum((evaluate(c, m, pt(m, x)) for c in parts), BrauerInvariant.zero())
        assert evaluate(Product(parts), m, pt(m, x)) == total
    assert Product(parts).order == 30


def test_residue_descriptors():
    m = gm_model(7)
    X = m.ring.var(0)
    rs = residues(Cyclic(m.ring.const(7), X, 3), m)
    assert [(r.component, r.exponents) for r in rs] == [(0, (0, 1)), (1, (1, 0))]
    # (-1)^(ab) f^b g^-a: the constant p on V(x), and x^-1 on V(p)
    assert rs[0].p_exp == 1 and rs[0].powers == (0,)
    assert rs[1].p_exp == 0 and rs[1].powers == (-1,)
    assert residues(Quaternion(m.ring.const(3), m.ring.const(5)), m) == []
    for r in residues(Cyclic(X, X, 4), m):
        assert r.sign == -1 and r.unit == 1 and r.p_exp == 0


def test_pullback_residue_vanishing():
    m = gm_model(7)
    X = m.ring.var(0)
    rd = [r for r in residues(Cyclic(m.ring.const(7), X, 3), m) if r.component == 1][0]
    with pytest.raises(ResidueFunctionVanishes):
        pullback_residue(rd, intersection_data(m, pt(m, 7)))
    # away from x = 0 mod p it is the Kummer class of the reduction
    assert pullback_residue(rd, intersection_data(m, pt(m, 1))) == 0


def test_diagram_hypothesis_checked():
    m = gm_model(5)
    X = m.ring.var(0)
    with pytest.raises(HypothesisViolated):
        check_diagram_4(Quaternion(m.ring.const(5), X), m, pt(m, 5))
    # a class without residues: both sides vanish
    d = check_diagram_4(Cyclic(m.ring.const(2), m.ring.const(3), 3), m, pt(m, 10))
    assert d.lhs == d.rhs == 0


def test_diagram_commutes_on_a_grid():
    """Exhaustive over small points and classes on two boundary models."""
    p = 5
    for eqs in (["x1"], ["x1", "x1 - 1"]):
        m = SchemeModel.from_strings(p, 1, eqs)
        fs = [m.ring.const(p), m.ring.const(2)] + list(m.horizontal)
        classes = [CupUnram(f, 3, k) for f in fs for k in (1, 2)]
        classes += [Cyclic(f, g, 3) for f in fs for g in fs]
        classes += [ConstantInv(BrauerInvariant(1, 3))]
        classes += [Product((CupUnram(fs[-1], 3, 1), Cyclic(fs[0], fs[-1], 3), ConstantInv(BrauerInvariant(2, 3))))]
        for x in range(-60, 60):
            if any(f.eval(x) == 0 for f in m.horizontal):
                continue
            for c in classes:
                d = check_diagram_4(c, m, pt(m, x))
                assert d.equal, (c, x, d)


def test_diagram_detects_a_wrong_multiplicity():
    # sanity of the check itself: a residue on V(x) is seen at points near 0
    m = gm_model(5)
    X = m.ring.var(0)
    c = CupUnram(X, 3, 1)
    vals = {check_diagram_4(c, m, pt(m, 5**l)).lhs for l in range(3)}
    assert vals == {0, 1, 2}


def test_spanning_classes_contents():
    cs = spanning_classes(5, 3)
    assert isinstance(cs[0], CupUnram) and cs[0].n == 7 and cs[0].k == 1
    assert [c.n for c in cs[1:]] == [4, 4]
    with pytest.raises(ValueError):
        spanning_classes(2, 1)


def test_spanning_family_separates():
    p = 5
    m = gm_model(p)
    cs = spanning_classes(p, 3)
    e = lambda x: [evaluate(c, m, pt(m, x)) for c in cs]
    assert e(5)[0] == BrauerInvariant(1, 7) and e(25)[0] == BrauerInvariant(2, 7)
    # 5 and 10: same tame value 2^-1 against 2, so (x, 2)_4 alone agrees
    X = m.ring.var(0)
    two = Cyclic(X, m.ring.const(2), 4)
    assert evaluate(two, m, pt(m, 5)) == evaluate(two, m, pt(m, 10))
    assert e(5) != e(10)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_spanning_family_separates_exactly_the_classes(p):
    """Non strongly equivalent points in G_m are told apart (valuations <= 3)."""
    m = gm_model(p)
    cs = spanning_classes(p, 3)
    xs = [v * p**l for l in range(4) for v in range(1, p**2) if v % p]
    sig = {x: tuple(evaluate(c, m, pt(m, x)) for c in cs) for x in xs}
    data = {x: intersection_data(m, pt(m, x)) for x in xs}
    for i, a in enumerate(xs):
        for b in xs[i + 1:]:
            assert (sig[a] == sig[b]) == strong_equiv(data[a], data[b])


def test_equivalence_check_examples():
    m = gm_model(7)
    X = m.ring.var(0)
    classes = [Quaternion(m.ring.const(7), X), CupUnram(X, 3, 1)]
    r = theorem_0_1_check(m, pt(m, 7), pt(m, 7 * 8), classes)
    assert r.strong_equiv and r.ok
    r = theorem_0_1_check(m, pt(m, 7), pt(m, -7), classes)
    assert not r.strong_equiv and r.ok
    assert r.evaluations[0][1] != r.evaluations[0][2]


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([3, 5, 7]), st.integers(1, 10**6), st.integers(0, 3), st.integers(1, 10**4))
def test_strong_equivalent_points_evaluate_alike(p, v, l, r):
    if v % p == 0:
        v += 1
    m = gm_model(p)
    x1 = v * p**l
    x2 = x1 * (1 + p * r)
    X = m.ring.var(0)
    classes = spanning_classes(p, 4) + [Quaternion(X, m.ring.const(p)), Cyclic(X, X + 0, 4)]
    assert theorem_0_1_check(m, pt(m, x1), pt(m, x2), classes).ok


def test_parse_class_round_trip():
    m = SchemeModel.from_strings(7, 1, ["x1", "x1 - 1"])
    texts = [
        "(quat 7 x1)",
        "(cyclic x1 (- x1 1) 3)",
        "(cup-unram (* 7 x1) 3 2)",
        "(const 1 3)",
        "(prod (quat 7 x1) (const 1 2))",
    ]
    for t in texts:
        c = parse_class(t, m.ring)
        validate_class(c, m)
        assert parse_class(str(c), m.ring) == c
    for bad in ("(quat 7)", "(cyclic x1 x1 0)", "(frob x1)", "(const 1 0)", "(cyclic x1 x1 a)", "(quat 7 x1"):
        with pytest.raises(ValidationError):
            parse_class(bad, m.ring)


def test_validation():
    m = SchemeModel.from_strings(7, 1, ["x1"])
    X = m.ring.var(0)
    with pytest.raises(NonFactorable):
        validate_class(Quaternion(X + 1, X), m)
    with pytest.raises(PDividesN):
        validate_class(Cyclic(X, X, 7), m)
    f = boundary_factorization(m, m.ring.parse("14*x1^3"))
    assert (f.unit, f.p_exp, f.exps) == (Fraction(2), 1, (3,))
    nov = SchemeModel.from_strings(7, 1, ["x1"], include_vertical=False)
    with pytest.raises(NonFactorable):
        validate_class(Quaternion(m.ring.const(7), X), nov)
    with pytest.raises(ValidationError):
        validate_class(ConstantInv(BrauerInvariant(1, 2)), nov)
