from fractions import Fraction

import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from cyclodiv.errors import NotDivisible, NotInvertible, OrderMismatch
from cyclodiv.polyring import (
    IntPoly,
    TruncSeries,
    binomial_power_inplace,
    binomial_series,
    coefficient,
    exact_div,
    height,
    mul,
    substitute,
    trunc_inverse,
    trunc_mul,
)

coeffs = st.lists(st.integers(-1000, 1000), min_size=0, max_size=65)
polys = coeffs.map(IntPoly)
nonzero = polys.filter(lambda f: not f.is_zero())


def P(*c):
    return IntPoly(c)


def _sympy_mul(f, g):
    x = sympy.symbols("x")
    pf = sympy.Poly(list(reversed(f.coeffs)) or [0], x)
    pg = sympy.Poly(list(reversed(g.coeffs)) or [0], x)
    return IntPoly(reversed((pf * pg).all_coeffs()))


def test_mul_examples():
    assert mul(P(-1, 1), P(1, 1)) == P(-1, 0, 1)
    f = P(3, 0, -2, 7)
    assert mul(f, IntPoly.one()) == f
    assert mul(P(-1, 1), P(1, -1, 1)) == P(-1, 2, -2, 1)


def test_canonical_form():
    assert P(1, 2, 0, 0).coeffs == (1, 2)
    assert P(0, 0).is_zero() and P().degree == -1


@given(polys, polys)
def test_mul_matches_sympy(f, g):
    assert mul(f, g) == _sympy_mul(f, g)


@given(st.lists(st.integers(-(10**30), 10**30), min_size=50, max_size=400), st.lists(st.integers(-(10**30), 10**30), min_size=50, max_size=400))
def test_large_mul_matches_schoolbook(a, b):
    f, g = IntPoly(a), IntPoly(b)
    expect = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            expect[i + j] += x * y
    assert mul(f, g) == IntPoly(expect)


@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert mul(f, g) == mul(g, f)
    assert mul(mul(f, g), h) == mul(f, mul(g, h))
    assert mul(f, g + h) == mul(f, g) + mul(f, h)


@given(polys, nonzero)
def test_exact_div_round_trip(f, g):
    assert exact_div(mul(f, g), g) == f


@given(polys, st.integers(1, 30))
def test_exact_div_binomial_round_trip(f, d):
    g = IntPoly.x_pow_minus_1(d)
    assert exact_div(mul(f, g), g) == f


def test_exact_div_examples():
    assert exact_div(IntPoly.x_pow_minus_1(6), IntPoly.x_pow_minus_1(2)) == P(1, 0, 1, 0, 1)
    f = P(2, -3, 4)
    assert exact_div(f, f) == IntPoly.one()
    with pytest.raises(NotDivisible):
        exact_div(P(-1, 0, 1), P(-2, 1))
    with pytest.raises(ZeroDivisionError):
        exact_div(f, IntPoly())


@given(nonzero, nonzero, st.integers(1, 5))
def test_exact_div_detects_remainder(f, g, c):
    assume(g.degree >= 1)
    h = mul(f, g) + IntPoly([c])
    with pytest.raises(NotDivisible):
        exact_div(h, g)


def test_substitute_and_height():
    assert substitute(P(1, -1, 1), "negate") == P(1, 1, 1)
    assert substitute(P(-1, 1), "power", 3) == P(-1, 0, 0, 1)
    assert substitute(P(1, 1, 1), "power", 2) == P(1, 0, 1, 0, 1)
    f = P(-1, 2, -2, 1)
    assert height(f) == 2 and f.height() == 2
    assert coefficient(f, 1) == 2
    assert coefficient(f, f.degree + 5) == 0


@given(polys, st.integers(-5, 5))
def test_substitute_evaluates(f, x):
    assert substitute(f, "negate")(x) == f(-x)
    assert substitute(f, "power", 3)(x) == f(x**3)


def T(order, *c):
    return TruncSeries(order, c)


def test_trunc_mul_examples():
    assert trunc_mul(T(1, 1, 1), T(1, 1, -1)) == TruncSeries.one(1)
    a = T(3, 1, 2, 3)
    assert trunc_mul(a, TruncSeries.one(3)) == a
    assert trunc_mul(T(2, 1, 1, 1), T(2, 1, -1)) == TruncSeries.one(2)
    with pytest.raises(OrderMismatch):
        trunc_mul(T(1, 1), T(2, 1))
    with pytest.raises(OrderMismatch):
        T(1, 1) + T(2, 1)


def test_trunc_inverse_examples():
    assert trunc_inverse(T(3, 1, -1)) == T(3, 1, 1, 1, 1)
    assert trunc_inverse(T(2, 2)) == T(2, Fraction(1, 2))
    assert trunc_inverse(T(5, 1, 0, -1)) == T(5, 1, 0, 1, 0, 1)
    with pytest.raises(NotInvertible):
        trunc_inverse(T(2, 0, 1))


@given(st.integers(0, 12), st.lists(st.fractions(-20, 20, max_denominator=7), min_size=1, max_size=13))
def test_trunc_inverse_property(order, c):
    assume(c[0] != 0)
    a = TruncSeries(order, c)
    assert trunc_mul(a, trunc_inverse(a)) == TruncSeries.one(order)


def test_series_stays_exact():
    s = T(2, Fraction(3, 1), Fraction(1, 2))
    assert isinstance(s[0], int) and isinstance(s[1], Fraction)
    assert (s * 2)[1] == 1 and isinstance((s * 2)[1], int)
    assert TruncSeries(3, [1, 2])[3] == 0 and s[7] == 0


def test_binomial_series_examples():
    assert binomial_series(1, 1, 3) == T(3, 1, 1, 1, 1)
    assert binomial_series(Fraction(1, 2), 1, 2) == T(2, 1, Fraction(1, 2), Fraction(3, 8))
    assert binomial_series(2, 2, 4) == T(4, 1, 0, 2, 0, 3)


@given(st.integers(-4, 4), st.integers(1, 6), st.integers(0, 20))
def test_binomial_series_integer_exponent(e, d, order):
    # (1 - x^d)^(-e) from the series equals the integral power
    assert binomial_series(e, d, order) == TruncSeries.monomial_binomial(order, d) ** (-e)


@given(st.integers(-4, 4), st.integers(1, 6), st.integers(0, 20))
def test_binomial_power_inplace(e, d, order):
    c = [1] + [0] * order
    binomial_power_inplace(c, d, e)
    assert TruncSeries(order, c) == TruncSeries.monomial_binomial(order, d) ** e


@given(st.fractions(-10, 10, max_denominator=4), st.fractions(-10, 10, max_denominator=4), st.integers(0, 10))
def test_binomial_series_exponents_add(a, b, order):
    lhs = trunc_mul(binomial_series(a, 1, order), binomial_series(b, 1, order))
    assert lhs == binomial_series(a + b, 1, order)
