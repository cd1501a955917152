from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from tamebrauer.errors import (
    DenominatorDivisibleByP,
    DivisionByZero,
    ExactZero,
    NotPrime,
    PrecisionExhausted,
)
from tamebrauer.localfield import (
    padic_arith,
    padic_make,
    unit_class_equal,
    unit_residue,
    valuation,
)

from oracles import vp

PRIMES = [2, 3, 5, 7, 11, 13]


def test_make_examples():
    a = padic_make(7, 8, 343)
    assert (a.ordp, a.unit) == (3, 1)
    b = padic_make(5, 4, 50)
    assert (b.ordp, b.unit) == (2, 2)
    assert padic_make(7, 8, 0).is_zero


def test_make_errors():
    with pytest.raises(NotPrime):
        padic_make(6, 8, 1)
    with pytest.raises(DenominatorDivisibleByP):
        padic_make(5, 8, Fraction(1, 10))
    with pytest.raises(ValueError):
        padic_make(5, 0, 1)


def test_unit_mod_precision():
    a = padic_make(3, 4, Fraction(1, 2))
    assert a.ordp == 0
    assert 2 * a.unit % 81 == 1


def test_arith_examples():
    seven = padic_make(7, 8, 7)
    m = padic_arith("mul", seven, seven)
    assert (m.ordp, m.unit) == (2, 1)
    d = padic_arith("div", padic_make(5, 8, 50), padic_make(5, 8, 2))
    assert (d.ordp, d.unit) == (2, 1)


def test_cancellation_beyond_precision():
    a = padic_make(7, 4, 1 + 7**5, exact=False)
    b = padic_make(7, 4, 1, exact=False)
    with pytest.raises(PrecisionExhausted):
        padic_arith("sub", a, b)
    # with exact operands the difference is known
    e = padic_arith("sub", padic_make(7, 4, 1 + 7**5), padic_make(7, 4, 1))
    assert e.ordp == 5 and e.unit == 1


def test_cancellation_within_precision():
    a = padic_make(7, 8, 1 + 7**5, exact=False)
    b = padic_make(7, 8, 1, exact=False)
    d = padic_arith("sub", a, b)
    assert d.ordp == 5 and d.unit % 7**3 == 1
    assert d.precision <= 3


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        padic_arith("div", padic_make(5, 4, 1), padic_make(5, 4, 0))
    with pytest.raises(ValueError):
        padic_arith("pow", padic_make(5, 4, 1), padic_make(5, 4, 1))
    with pytest.raises(ValueError):
        padic_arith("add", padic_make(5, 4, 1), padic_make(7, 4, 1))


def test_valuation_examples():
    assert valuation(padic_make(7, 8, 7)) == 1
    assert valuation(padic_make(7, 8, 3)) == 0
    assert valuation(padic_make(7, 8, 5 * 7**3)) == 3
    with pytest.raises(ExactZero):
        valuation(padic_make(7, 8, 0))


def test_unit_residue_examples():
    assert unit_residue(padic_make(7, 8, 50)) == 1
    assert unit_residue(padic_make(7, 8, 7 * 8)) == 1
    assert unit_residue(padic_make(7, 8, -7)) == 6
    with pytest.raises(ExactZero):
        unit_residue(padic_make(7, 8, 0))


def test_unit_class_equal_examples():
    P = lambda v: padic_make(5, 8, v)
    assert unit_class_equal(P(5), P(5 * 6))
    assert not unit_class_equal(P(5), P(10))
    assert unit_class_equal(P(3), P(28))


def test_reduce_mod():
    a = padic_make(5, 3, 7 + 5**4, exact=False)
    assert a.reduce_mod(3) == 7
    with pytest.raises(PrecisionExhausted):
        a.reduce_mod(4)
    assert a.digits() == [2, 1, 0]


rationals = st.builds(
    Fraction,
    st.integers(min_value=-(10**12), max_value=10**12),
    st.integers(min_value=1, max_value=10**6),
)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), rationals, rationals)
def test_exact_arithmetic_matches_fractions(p, x, y):
    N = 20
    assume(x.denominator % p and y.denominator % p)
    a, b = padic_make(p, N, x), padic_make(p, N, y)
    for op, fn in (("add", Fraction.__add__), ("sub", Fraction.__sub__), ("mul", Fraction.__mul__)):
        r = fn(x, y)
        got = padic_arith(op, a, b)
        if r == 0:
            assert got.is_zero
            continue
        assert got.ordp == vp(r, p)
        assert got.exact == r
    if y != 0:
        got = padic_arith("div", a, b)
        r = x / y
        if r:
            assert got.ordp == vp(r, p)


@settings(max_examples=300, deadline=None)
@given(
    st.sampled_from(PRIMES),
    st.integers(min_value=3, max_value=12),
    st.integers(min_value=1, max_value=10**15),
    st.integers(min_value=1, max_value=10**15),
)
def test_truncated_arithmetic_is_honest(p, N, x, y):
    """Inexact results agree with exact integer arithmetic on every digit they claim."""
    a = padic_make(p, N, x, exact=False)
    b = padic_make(p, N, y, exact=False)
    for op, r in (("add", x + y), ("sub", x - y), ("mul", x * y)):
        try:
            got = padic_arith(op, a, b)
        except PrecisionExhausted:
            # only when the true value is 0 to the known digits
            cap = min(vp(x, p), vp(y, p)) + N
            assert r == 0 or vp(r, p) >= cap
            continue
        assert got.precision <= N
        assert got.ordp == vp(r, p)
        k = got.absolute_precision
        assert got.reduce_mod(k) == r % p**k


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(PRIMES), st.integers(1, 10**9), st.integers(1, 10**9))
def test_division_round_trip(p, x, y):
    N = 16
    a = padic_make(p, N, x, exact=False)
    b = padic_make(p, N, y, exact=False)
    q = padic_arith("div", a, b)
    back = padic_arith("mul", q, b)
    assert back.ordp == a.ordp
    k = min(back.absolute_precision, a.absolute_precision)
    assert back.reduce_mod(k) == a.reduce_mod(k)


def test_operators_and_coercion():
    a = padic_make(5, 10, 3)
    assert (a + 2).exact == 5
    assert (2 - a).exact == -1
    assert (a * 5).ordp == 1
    assert (1 / a).exact == Fraction(1, 3)
    assert (-a).exact == -3
    assert (a**3).exact == 27
    assert (padic_make(5, 10, 5) ** -2).ordp == -2
