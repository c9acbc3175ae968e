from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from betaforge.algebraic import (
    AlgebraicReal,
    PowerBounds,
    is_root,
    isolate_root_in,
    refine,
    sign_at,
    sturm_count,
)
from betaforge.errors import EndpointRoot, NotSquarefree, NotUnique
from betaforge.poly import ONE, X, IntPolynomial, parse_polynomial, squarefree

from .conftest import numeric_roots, polynomials


def test_sturm_count_simple():
    p = parse_polynomial("x^3-x")
    assert sturm_count(p, "-inf", "+inf") == 3
    assert sturm_count(p, Fraction(1, 2), 2) == 1
    with pytest.raises(EndpointRoot):
        sturm_count(p, 0, 2)


@given(polynomials(min_degree=1, max_degree=7))
def test_sturm_count_matches_numeric(p):
    if not squarefree(p):
        return
    real = sum(1 for z in numeric_roots(p, 60) if abs(mpmath.im(z)) < mpmath.mpf(10) ** -25)
    assert sturm_count(p, "-inf", "+inf") == real


def test_isolate_and_refine_golden_ratio():
    a = isolate_root_in(parse_polynomial("x^2-x-1"), 1, 2)
    r = refine(a, Fraction(1, 10 ** 30))
    assert r.width <= Fraction(1, 10 ** 30)
    with mpmath.workdps(50):
        assert abs(r.to_mpf(40) - (1 + mpmath.sqrt(5)) / 2) < mpmath.mpf(10) ** -29


def test_isolate_errors():
    with pytest.raises(NotUnique):
        isolate_root_in(parse_polynomial("x^2-2"), -2, 2)
    with pytest.raises(NotSquarefree):
        isolate_root_in((X - ONE) ** 2 * (X - IntPolynomial([3])), 2, 4)


def test_sign_at_detects_exact_zero():
    phi = isolate_root_in(parse_polynomial("x^2-x-1"), 1, 2)
    assert sign_at(phi, parse_polynomial("x^3-2x-1")) == 0  # (x+1)(x^2-x-1)
    assert sign_at(phi, X - ONE) == 1
    assert sign_at(phi, X - IntPolynomial([2])) == -1


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=7))
def test_sign_at_matches_numeric(coeffs):
    e = IntPolynomial(coeffs)
    a = isolate_root_in(parse_polynomial("x^3-x-1"), 1, 2)
    s = sign_at(a, e)
    with mpmath.workdps(80):
        v = mpmath.polyval(list(reversed(e.coeffs)), a.to_mpf(80)) if not e.is_zero() else 0
        expected = 0 if abs(v) < mpmath.mpf(10) ** -60 else (1 if v > 0 else -1)
    assert s == expected


def test_power_bounds_enclose():
    a = refine(isolate_root_in(parse_polynomial("x^2-2"), 1, 2), Fraction(1, 2 ** 40))
    pb = PowerBounds(a, 6, 64)
    for i in range(7):
        assert pb.lower[i] <= 2 ** (i / 2) * 2 ** 64 <= pb.upper[i] + 1


def test_is_root():
    a = isolate_root_in(parse_polynomial("x^2-2"), 1, 2)
    assert is_root(a, parse_polynomial("x^4-4"))
    assert not is_root(a, parse_polynomial("x^2+2"))


def test_dyadic_endpoints():
    a = isolate_root_in(parse_polynomial("3x-4"), Fraction(1, 3), Fraction(5, 3))
    for x in a.interval:
        d = x.denominator
        assert d & (d - 1) == 0
