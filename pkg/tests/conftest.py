from __future__ import annotations

from fractions import Fraction

import mpmath
import pytest
from hypothesis import settings, strategies as st

from betaforge.poly import IntPolynomial

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def numeric_roots(p: IntPolynomial, dps: int = 200):
    """All complex roots of ``p`` at high precision (the numeric oracle)."""
    with mpmath.workdps(dps):
        return mpmath.polyroots(list(reversed(p.coeffs)), maxsteps=400, extraprec=4 * dps)


def numeric_unit_disk_profile(p: IntPolynomial, dps: int = 200, tol=None):
    """(inside, on, outside) counts of root moduli relative to one."""
    tol = tol or mpmath.mpf(10) ** (-dps // 3)
    inside = on = outside = 0
    with mpmath.workdps(dps):
        for z in numeric_roots(p, dps):
            a = abs(z)
            if abs(a - 1) < tol:
                on += 1
            elif a < 1:
                inside += 1
            else:
                outside += 1
    return inside, on, outside


def numeric_greedy_digits(p: IntPolynomial, lo: Fraction, hi: Fraction, n: int, dps: int = 600) -> str:
    """First ``n`` greedy digits of 1 for the root of ``p`` in ``(lo, hi)`` by float iteration."""
    with mpmath.workdps(dps):
        coeffs = list(reversed(p.coeffs))
        a = mpmath.mpf(lo.numerator) / lo.denominator
        b = mpmath.mpf(hi.numerator) / hi.denominator
        fa = mpmath.polyval(coeffs, a)
        for _ in range(int(dps * 3.4)):
            mid = (a + b) / 2
            fm = mpmath.polyval(coeffs, mid)
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        beta = (a + b) / 2
        r = mpmath.mpf(1)
        out = []
        for _ in range(n):
            r *= beta
            if r >= 1:
                out.append("1")
                r -= 1
            else:
                out.append("0")
        return "".join(out)


small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def polynomials(draw, min_degree=0, max_degree=6, monic=False):
    deg = draw(st.integers(min_value=min_degree, max_value=max_degree))
    coeffs = draw(st.lists(small_ints, min_size=deg + 1, max_size=deg + 1))
    if monic:
        coeffs[-1] = 1
    elif coeffs[-1] == 0:
        coeffs[-1] = 1
    return IntPolynomial(coeffs)


@pytest.fixture
def chi():
    return IntPolynomial([1, 0, -2, -1, 1])
