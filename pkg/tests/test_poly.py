from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from betaforge.errors import NotDivisible, PolynomialParseError
from betaforge.poly import (
    ONE,
    X,
    IntPolynomial,
    RationalFunction,
    cyclotomic,
    div_exact,
    divides,
    format_polynomial,
    gcd,
    geometric,
    parse_polynomial,
    squarefree,
    strip_cyclotomic,
    strip_monomial,
)

from .conftest import polynomials


def test_parse_and_format_round_trip():
    p = parse_polynomial("x^4-x^3-2x^2+1")
    assert p.coeffs == (1, 0, -2, -1, 1)
    assert str(p) == "x^4-x^3-2x^2+1"
    assert parse_polynomial("x**2 - x - 1") == parse_polynomial("x^2-x-1")
    assert parse_polynomial("[1, -1, -1]") == IntPolynomial([1, -1, -1])


@pytest.mark.parametrize("bad", ["", "x^", "2y+1", "x^-1"])
def test_parse_rejects(bad):
    with pytest.raises(PolynomialParseError):
        parse_polynomial(bad)


@given(polynomials(max_degree=8))
def test_format_parse_inverse(p):
    assert parse_polynomial(format_polynomial(p)) == p


def test_from_digits_is_companion_of_finite_word():
    # 1101 -> x^4 - x^3 - x^2 - 1
    assert IntPolynomial.from_digits([1, 1, 0, 1]) == parse_polynomial("x^4-x^3-x^2-1")


def test_reciprocal():
    m = parse_polynomial("x^6-x^5-x^4-x^2+1")
    assert m.reciprocal() == parse_polynomial("x^6-x^4-x^2-x+1")
    s = parse_polynomial("x^2+1")
    assert s.reciprocal(3) == parse_polynomial("x^3+x")


@given(polynomials(max_degree=6), polynomials(max_degree=6))
def test_ring_laws(a, b):
    assert a * b == b * a
    assert (a + b) - b == a
    assert (a * b).degree == a.degree + b.degree


@given(polynomials(max_degree=5), polynomials(min_degree=1, max_degree=4, monic=True))
def test_exact_division_inverts_product(a, b):
    assert div_exact(a * b, b) == a
    assert divides(b, a * b)


def test_div_exact_raises():
    with pytest.raises(NotDivisible):
        div_exact(X * X + ONE, X - ONE)


def test_gcd_examples():
    assert gcd(X * X - ONE, X - ONE) == X - ONE
    assert gcd(parse_polynomial("x^2-x-1"), parse_polynomial("x^2-2")) == ONE


@given(polynomials(min_degree=1, max_degree=4), polynomials(min_degree=1, max_degree=4),
       polynomials(min_degree=1, max_degree=3))
def test_gcd_divides_both(a, b, c):
    g = gcd(a * c, b * c)
    assert divides(g, a * c) and divides(g, b * c)
    assert g.degree >= c.primitive_part().degree or c.degree == 0


def test_cyclotomic_values():
    assert cyclotomic(1) == X - ONE
    assert cyclotomic(6) == parse_polynomial("x^2-x+1")
    assert cyclotomic(12) == parse_polynomial("x^4-x^2+1")
    prod = ONE
    for d in (1, 2, 3, 4, 6, 12):
        prod = prod * cyclotomic(d)
    assert prod == X ** 12 - ONE


def test_strip_cyclotomic_minus_member():
    m = parse_polynomial("x^3-2x^2+x-1")
    t5 = m.shift(5) - m.reciprocal()
    assert t5 == parse_polynomial("x^8-2x^7+x^6-x^5+x^3-x^2+2x-1")
    core, factors = strip_cyclotomic(t5)
    # x + 1 divides as well as x - 1, so the core has degree 6
    assert dict(factors) == {1: 1, 2: 1}
    assert core == parse_polynomial("x^6-2x^5+2x^4-3x^3+2x^2-2x+1")
    assert core(1) != 0
    rebuilt = core
    for d, e in factors:
        rebuilt = rebuilt * cyclotomic(d) ** e
    assert rebuilt == t5


@given(polynomials(min_degree=1, max_degree=4, monic=True), st.lists(st.sampled_from([1, 2, 3, 4, 5, 6]), max_size=3))
def test_strip_cyclotomic_reconstructs(p, ds):
    q = p
    for d in ds:
        q = q * cyclotomic(d)
    core, factors = strip_cyclotomic(q)
    rebuilt = core
    for d, e in factors:
        rebuilt = rebuilt * cyclotomic(d) ** e
    assert rebuilt == q
    assert strip_cyclotomic(core)[1] == []


def test_strip_monomial():
    assert strip_monomial(parse_polynomial("x^4-x^3"))[1] == 3


def test_squarefree():
    assert squarefree(parse_polynomial("x^2-x-1"))
    assert not squarefree((X - ONE) ** 2)


def test_geometric():
    assert geometric(2, 3) == parse_polynomial("x^4+x^2+1")


def test_sign_at_fraction_exact():
    p = parse_polynomial("x^2-2")
    assert p.sign_at_fraction(Fraction(3, 2)) == 1
    assert p.sign_at_fraction(Fraction(7, 5)) == -1


def test_rational_function_reduces():
    rf = RationalFunction(X * X - ONE, X - ONE)
    assert rf.is_polynomial() and rf == RationalFunction(X + ONE)
    assert RationalFunction.parse("(x^2-1)/(x-1)") == RationalFunction(X + ONE)
    assert RationalFunction.parse("1/(x^2+1)(x-1)") == RationalFunction(ONE, (X * X + ONE) * (X - ONE))
