"""Real algebraic numbers as (defining polynomial, isolating interval) pairs.

All interval endpoints are dyadic rationals, so bisection never inflates
denominators beyond a power of two.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import EndpointRoot, NotSquarefree, NotUnique, ZeroPolynomialError
from .poly import IntPolynomial, gcd, squarefree


@lru_cache(maxsize=512)
def sturm_chain(p: IntPolynomial) -> tuple[IntPolynomial, ...]:
    """Sturm sequence of ``p`` with every member reduced to its primitive part.

    Only signs matter, so each remainder may be rescaled by a positive factor.
    The pseudo-remainder multiplies by ``lc**e``; when that factor is negative
    the sign is corrected before negation.
    """
    if p.is_zero():
        raise ZeroPolynomialError("Sturm chain of the zero polynomial")
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        a, b = chain[-2], chain[-1]
        r = a.pseudo_remainder(b)
        e = a.degree - b.degree + 1
        if b.leading < 0 and e % 2 == 1:
            r = -r
        if r.is_zero():
            break
        g = r.content()
        chain.append(IntPolynomial(-c // g for c in r.coeffs))
    return tuple(q for q in chain if not q.is_zero())


def _sign_at_infinity(q: IntPolynomial, positive: bool) -> int:
    s = 1 if q.leading > 0 else -1
    if not positive and q.degree % 2 == 1:
        s = -s
    return s


def _variations(chain, x) -> int:
    signs = []
    for q in chain:
        if x is None or isinstance(x, str):
            s = _sign_at_infinity(q, x != "-inf")
        else:
            s = q.sign_at_fraction(x)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _as_endpoint(x):
    if x is None or isinstance(x, str):
        return x
    return Fraction(x)


def sturm_count(p: IntPolynomial, lo, hi) -> int:
    """Number of distinct real roots of ``p`` in the open interval ``(lo, hi)``.

    ``lo`` may be ``"-inf"`` and ``hi`` may be ``"+inf"``.
    """
    lo, hi = _as_endpoint(lo), _as_endpoint(hi)
    for x in (lo, hi):
        if isinstance(x, Fraction) and p.sign_at_fraction(x) == 0:
            raise EndpointRoot(f"{p} vanishes at {x}")
    if isinstance(lo, Fraction) and isinstance(hi, Fraction) and lo >= hi:
        return 0
    if p.degree <= 0:
        return 0
    chain = sturm_chain(p)
    return _variations(chain, lo if lo is not None else "-inf") - _variations(
        chain, hi if hi is not None else "+inf"
    )


def cauchy_bound(p: IntPolynomial) -> Fraction:
    """A rational strictly larger than the modulus of every root."""
    lead = abs(p.leading)
    return 1 + Fraction(max(abs(c) for c in p.coeffs[:-1]), lead) if p.degree > 0 else Fraction(1)


def _is_dyadic(x: Fraction) -> bool:
    return x.denominator & (x.denominator - 1) == 0


def _dyadic_inside(p: IntPolynomial, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Dyadic ``a, b`` with ``lo <= a < b <= hi`` still isolating the single root."""
    if _is_dyadic(lo) and _is_dyadic(hi):
        return lo, hi
    bits = max(1, (hi - lo).denominator.bit_length())
    while True:
        scale = 1 << bits
        a = lo if _is_dyadic(lo) else Fraction(-((-lo.numerator * scale) // lo.denominator), scale)
        b = hi if _is_dyadic(hi) else Fraction((hi.numerator * scale) // hi.denominator, scale)
        if a < b and p.sign_at_fraction(a) and p.sign_at_fraction(b):
            if sturm_count(p, a, b) == 1:
                return a, b
        bits += 1


@dataclass(frozen=True)
class AlgebraicReal:
    """A real root of ``defining`` known to be the only one in ``(lo, hi)``."""

    defining: IntPolynomial
    lo: Fraction
    hi: Fraction

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.lo, self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def refine(self, width) -> AlgebraicReal:
        return refine(self, width)

    def sign_at(self, e: IntPolynomial) -> int:
        return sign_at(self, e)

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def to_float(self) -> float:
        return float(refine(self, Fraction(1, 1 << 60)).midpoint())

    def to_mpf(self, dps: int = 50):
        import mpmath

        a = refine(self, Fraction(1, 1 << int(dps * 3.33 + 16)))
        with mpmath.workdps(dps + 10):
            m = a.midpoint()
            return mpmath.mpf(m.numerator) / m.denominator

    def __str__(self) -> str:
        return f"root of {self.defining} in ({self.lo}, {self.hi})"


def isolate_root_in(p: IntPolynomial, lo, hi) -> AlgebraicReal:
    """Certify that ``p`` has exactly one root in ``(lo, hi)`` and wrap it."""
    if not squarefree(p):
        raise NotSquarefree(f"{p} is not squarefree")
    lo, hi = Fraction(lo), Fraction(hi)
    n = sturm_count(p, lo, hi)
    if n != 1:
        raise NotUnique(f"{p} has {n} roots in ({lo}, {hi})")
    lo, hi = _dyadic_inside(p, lo, hi)
    return AlgebraicReal(p, lo, hi)


def refine(a: AlgebraicReal, width) -> AlgebraicReal:
    """Bisect until the interval is no wider than ``width``."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    p, lo, hi = a.defining, a.lo, a.hi
    if hi - lo <= width:
        return a
    slo = p.sign_at_fraction(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at_fraction(mid)
        if s == 0:
            w = hi - lo
            lo, hi = mid - w / 4, mid + w / 8
            slo = p.sign_at_fraction(lo)
        elif s == slo:
            lo = mid
        else:
            hi = mid
    return AlgebraicReal(p, lo, hi)


class PowerBounds:
    """Fixed-point enclosures of ``beta**i`` for a positive algebraic ``beta``.

    ``lower[i] <= beta**i * 2**prec <= upper[i]``. Evaluating an integer
    polynomial then costs two integer dot products.
    """

    def __init__(self, a: AlgebraicReal, degree: int, prec: int):
        if a.lo < 0:
            raise ValueError("power bounds need a nonnegative interval")
        self.base = a
        self.prec = prec
        scale = 1 << prec
        lo_n = (a.lo.numerator * scale) // a.lo.denominator
        hi_n = -((-a.hi.numerator * scale) // a.hi.denominator)
        lower, upper = [scale], [scale]
        for _ in range(degree):
            lower.append((lower[-1] * lo_n) >> prec)
            upper.append(-((-upper[-1] * hi_n) >> prec))
        self.lower, self.upper = lower, upper

    @property
    def degree(self) -> int:
        return len(self.lower) - 1

    def sign(self, coeffs) -> int | None:
        """Sign of ``sum(c_i beta**i)``, or ``None`` when the enclosure straddles zero."""
        lo = hi = 0
        lower, upper = self.lower, self.upper
        for i, c in enumerate(coeffs):
            if c > 0:
                lo += c * lower[i]
                hi += c * upper[i]
            elif c < 0:
                lo += c * upper[i]
                hi += c * lower[i]
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        return None


def is_root(a: AlgebraicReal, e: IntPolynomial) -> bool:
    """Exact zero test: ``e(a) == 0`` iff ``gcd(e, defining)`` has its root in the interval."""
    if e.is_zero():
        return True
    g = gcd(e, a.defining)
    if g.degree <= 0:
        return False
    return sturm_count(g, a.lo, a.hi) == 1


def _mean_value_sign(a: AlgebraicReal, e: IntPolynomial) -> int | None:
    m = a.midpoint()
    v = e.eval_fraction(m)
    r = max(abs(a.lo), abs(a.hi))
    bound = sum(abs(c) * i * r ** (i - 1) for i, c in enumerate(e.coeffs) if i)
    err = bound * (a.hi - a.lo) / 2
    if v > err:
        return 1
    if v < -err:
        return -1
    return None


def sign_at(a: AlgebraicReal, e: IntPolynomial) -> int:
    """Exact sign of ``e`` evaluated at ``a``.

    An interval enclosure is tried first; when it straddles zero the gcd zero
    test runs, and otherwise the interval is halved and the enclosure retried.
    """
    if e.is_zero():
        return 0
    if e.degree == 0:
        return 1 if e.leading > 0 else -1
    checked_zero = False
    while True:
        if a.lo >= 0:
            bits = max(32, (a.hi - a.lo).denominator.bit_length() + 16)
            s = PowerBounds(a, e.degree, bits).sign(e.coeffs)
        else:
            s = _mean_value_sign(a, e)
        if s is not None:
            return s
        if not checked_zero:
            if is_root(a, e):
                return 0
            checked_zero = True
        a = refine(a, (a.hi - a.lo) / 2)
