"""Greedy expansions of 1 with exact digit decisions and state-hash cycle detection."""
from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction

from .algebraic import AlgebraicReal, PowerBounds, is_root, refine, sign_at
from .errors import BaseOutOfRange, NotDivisible, NotSquarefree
from .poly import IntPolynomial, RationalFunction, div_exact, squarefree
from .words import DigitWord, quasi_greedy_of_finite

DEFAULT_MAX_DIGITS = 5000
MAX_DIGITS_ENV = "BETAFORGE_MAX_DIGITS"


def default_max_digits() -> int:
    raw = os.environ.get(MAX_DIGITS_ENV)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{MAX_DIGITS_ENV} must be a positive integer, got {raw!r}")
        if value < 1:
            raise ValueError(f"{MAX_DIGITS_ENV} must be a positive integer, got {raw!r}")
        return value
    return DEFAULT_MAX_DIGITS


class Status(str, enum.Enum):
    FINITE = "Finite"
    PERIODIC = "Periodic"
    UNDETERMINED = "Undetermined"


@dataclass
class ExpansionResult:
    word: DigitWord
    status: Status
    digits_computed: int
    companion: IntPolynomial | None = None
    cofactor: IntPolynomial | None = None
    pseudo_cofactor: RationalFunction | None = None

    @property
    def determined(self) -> bool:
        return self.status is not Status.UNDETERMINED


def companion_poly(w: DigitWord) -> IntPolynomial:
    """``P_k`` for a finite word, ``P_{k+l} - P_k`` for a periodic presentation.

    The presentation is used as given; a non-minimal one picks up extra factors.
    """
    if "1" not in w.period:
        # empty or all-zero period: a finite word
        return IntPolynomial.from_digits([int(c) for c in w.preperiod])
    full = IntPolynomial.from_digits([int(c) for c in w.preperiod + w.period])
    head = IntPolynomial.from_digits([int(c) for c in w.preperiod])
    return full - head


def cofactor(w: DigitWord, minpoly: IntPolynomial) -> tuple[IntPolynomial, bool]:
    """``companion / minpoly`` and whether that co-factor is self-reciprocal."""
    q = div_exact(companion_poly(w), minpoly)
    return q, q.reciprocal() == q


def pseudo_cofactor(w: DigitWord, defining: IntPolynomial) -> RationalFunction:
    return RationalFunction(companion_poly(w), defining)


class _Oracle:
    """Signs of elements of Z[beta] written in the power basis.

    Holds one set of fixed-point power bounds and doubles the precision when
    an enclosure is inconclusive.
    """

    def __init__(self, base: AlgebraicReal, degree: int, prec: int = 96):
        self.base = base
        self.degree = degree
        self.prec = prec
        self._build()

    def _build(self):
        want = Fraction(1, 1 << self.prec)
        if self.base.width > want:
            self.base = refine(self.base, want)
        self.bounds = PowerBounds(self.base, self.degree, self.prec + 8)

    def sign(self, coeffs) -> int:
        checked_zero = False
        while True:
            s = self.bounds.sign(coeffs)
            if s is not None:
                return s
            if not checked_zero:
                if is_root(self.base, IntPolynomial(coeffs)):
                    return 0
                checked_zero = True
            self.prec *= 2
            self._build()


def _check_base(base: AlgebraicReal) -> None:
    p = base.defining
    if not squarefree(p):
        raise NotSquarefree(f"{p} is not squarefree")
    if not p.is_monic():
        raise BaseOutOfRange(f"defining polynomial {p} must be monic")
    if sign_at(base, IntPolynomial([-1, 1])) != 1 or sign_at(base, IntPolynomial([-2, 1])) != -1:
        raise BaseOutOfRange(f"{base} is not in (1, 2)")


def greedy_expand(base: AlgebraicReal, max_digits: int | None = None) -> ExpansionResult:
    """Greedy expansion of 1 in ``base`` with an exact digit per sign test.

    The remainder ``r_n`` is held as an integer vector in the basis
    ``1, beta, ..., beta^(d-1)``; a repeated vector closes the period.
    """
    if max_digits is None:
        max_digits = default_max_digits()
    if max_digits < 1:
        raise ValueError("max_digits must be positive")
    _check_base(base)
    p = base.defining
    d = p.degree
    # beta^d = -(c_0 + ... + c_{d-1} beta^{d-1}) for the monic defining polynomial
    tail = [-c for c in p.coeffs[:d]]
    oracle = _Oracle(base, d)
    state = (1,) + (0,) * (d - 1)
    seen = {state: 0}
    digits: list[str] = []
    for n in range(1, max_digits + 1):
        top = state[-1]
        s = [0] + list(state[:-1])
        if top:
            for i in range(d):
                s[i] += top * tail[i]
        t = list(s)
        t[0] -= 1
        sg = oracle.sign(t)
        if sg >= 0:
            digits.append("1")
            s = t
        else:
            digits.append("0")
        if sg == 0:
            word = DigitWord("".join(digits))
            return _finish(word, Status.FINITE, n, p)
        state = tuple(s)
        if state in seen:
            i = seen[state]
            word = DigitWord("".join(digits[:i]), "".join(digits[i:]))
            return _finish(word.canonical(), Status.PERIODIC, n, p)
        seen[state] = n
    return ExpansionResult(
        DigitWord("".join(digits)), Status.UNDETERMINED, max_digits
    )


def _finish(word: DigitWord, status: Status, n: int, defining: IntPolynomial) -> ExpansionResult:
    comp = companion_poly(word)
    try:
        q = div_exact(comp, defining)
    except NotDivisible:
        q = None
    return ExpansionResult(word, status, n, comp, q, RationalFunction(comp, defining))


def quasi_greedy_expand(base: AlgebraicReal, max_digits: int | None = None) -> ExpansionResult:
    res = greedy_expand(base, max_digits)
    if res.status is not Status.FINITE:
        return res
    word = quasi_greedy_of_finite(res.word)
    return _finish(word, Status.PERIODIC, res.digits_computed, base.defining)
