"""Dense integer polynomials, exact division, gcd and cyclotomic stripping.

Coefficients are stored in ascending order: ``coeffs[i]`` multiplies ``x**i``.
Every value is immutable and kept in canonical form (no trailing zeros).
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from math import gcd as igcd
from typing import Iterable, Sequence

from .errors import NotDivisible, PolynomialParseError, ZeroPolynomialError

#: Degree reported for the zero polynomial. Never equal to a real degree.
ZERO_DEGREE = -1


class IntPolynomial:
    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)
        self._hash = None

    # construction helpers

    @classmethod
    def monomial(cls, n: int, c: int = 1) -> IntPolynomial:
        return cls([0] * n + [c])

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls([c])

    @classmethod
    def from_digits(cls, digits: Sequence[int]) -> IntPolynomial:
        """``x^k - d_1 x^(k-1) - ... - d_k`` for a digit string ``d_1..d_k``."""
        k = len(digits)
        cs = [0] * (k + 1)
        cs[k] = 1
        for i, d in enumerate(digits, start=1):
            cs[k - i] -= int(d)
        return cls(cs)

    @classmethod
    def parse(cls, text: str) -> IntPolynomial:
        return parse_polynomial(text)

    # basic properties

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else ZERO_DEGREE

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    @property
    def constant_term(self) -> int:
        return self.coeffs[0] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(("IntPolynomial", self.coeffs))
        return self._hash

    def __repr__(self) -> str:
        return f"IntPolynomial({format_polynomial(self)!r})"

    def __str__(self) -> str:
        return format_polynomial(self)

    # ring operations

    def __add__(self, other) -> IntPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> IntPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> IntPolynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> IntPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPolynomial:
        if n < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> IntPolynomial:
        """Multiply by ``x**n``."""
        if not self.coeffs:
            return self
        return IntPolynomial([0] * n + list(self.coeffs))

    def scale(self, c: int) -> IntPolynomial:
        return IntPolynomial(c * x for x in self.coeffs)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def reciprocal(self, degree: int | None = None) -> IntPolynomial:
        """``x**d * p(1/x)`` with ``d = deg p`` unless another formal degree is given."""
        if not self.coeffs:
            raise ZeroPolynomialError("reciprocal of the zero polynomial")
        d = self.degree if degree is None else degree
        if d < self.degree:
            raise ValueError("formal degree below the actual degree")
        padded = list(self.coeffs) + [0] * (d - self.degree)
        return IntPolynomial(reversed(padded))

    def is_reciprocal(self) -> bool:
        return bool(self.coeffs) and self.reciprocal() == self

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = igcd(g, c)
        return g

    def primitive_part(self) -> IntPolynomial:
        """Divide by the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.leading < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    # evaluation

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact value at a rational point, using a single integer Horner pass."""
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        d = self.degree
        if d < 0:
            return Fraction(0)
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return Fraction(acc, qpow // q)

    def sign_at_fraction(self, x: Fraction) -> int:
        x = Fraction(x)
        p, q = x.numerator, x.denominator
        acc = 0
        qpow = 1
        for c in reversed(self.coeffs):
            acc = acc * p + c * qpow
            qpow *= q
        return (acc > 0) - (acc < 0)

    # division

    def divmod_rational(self, other: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
        """Division over the rationals, returning coefficient lists."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        db = other.degree
        lb = other.leading
        if len(rem) - 1 < db:
            return [], rem
        quot = [Fraction(0)] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f = c / lb
            quot[i - db] = f
            for j, bc in enumerate(other.coeffs):
                rem[i - db + j] -= f * bc
        return quot, rem[:db]

    def pseudo_remainder(self, other: IntPolynomial) -> IntPolynomial:
        """``lc(b)**(deg a - deg b + 1) * a mod b`` computed in Z[x]."""
        if other.is_zero():
            raise ZeroDivisionError("pseudo-remainder by zero")
        db = other.degree
        if self.degree < db:
            return self
        lb = other.leading
        b = other.coeffs
        r = list(self.coeffs)
        e = self.degree - db + 1
        while r and len(r) - 1 >= db:
            lr = r[-1]
            shift = len(r) - 1 - db
            r = [lb * c for c in r]
            for j, bc in enumerate(b):
                r[shift + j] -= lr * bc
            while r and r[-1] == 0:
                r.pop()
            e -= 1
        scale = lb ** e
        return IntPolynomial(scale * c for c in r)

    def divmod_exact(self, other: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Integer long division; only valid when every quotient step is integral."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lb = other.leading
        b = other.coeffs
        if len(rem) - 1 < db:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - db)
        for i in range(len(rem) - 1, db - 1, -1):
            c = rem[i]
            if c == 0:
                continue
            f, r = divmod(c, lb)
            if r:
                raise NotDivisible(f"leading coefficient {c} not divisible by {lb}")
            quot[i - db] = f
            for j, bc in enumerate(b):
                rem[i - db + j] -= f * bc
        return IntPolynomial(quot), IntPolynomial(rem[:db])

    def __floordiv__(self, other) -> IntPolynomial:
        return div_exact(self, _coerce(other))


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    if isinstance(x, int):
        return IntPolynomial([x])
    raise TypeError(f"cannot use {type(x).__name__} as an integer polynomial")


X = IntPolynomial([0, 1])
ONE = IntPolynomial([1])
ZERO = IntPolynomial()


def div_exact(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Return ``q`` with ``a == b * q`` or raise :class:`NotDivisible`."""
    if b.is_zero():
        raise ZeroPolynomialError("division by the zero polynomial")
    q, r = a.divmod_exact(b)
    if not r.is_zero():
        raise NotDivisible(f"{a} is not divisible by {b} (remainder {r})")
    return q


def divides(b: IntPolynomial, a: IntPolynomial) -> bool:
    try:
        div_exact(a, b)
    except NotDivisible:
        return False
    return True


def gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd with positive leading coefficient."""
    if a.is_zero() and b.is_zero():
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    a, b = a.primitive_part(), b.primitive_part()
    if a.degree < b.degree:
        a, b = b, a
    while not b.is_zero():
        if b.degree == 0:
            return ONE
        a, b = b, a.pseudo_remainder(b).primitive_part()
    return a.primitive_part()


def squarefree(p: IntPolynomial) -> bool:
    if p.degree <= 0:
        return True
    return gcd(p, p.derivative()).degree == 0


def geometric(step: int, terms: int) -> IntPolynomial:
    """``1 + x^step + x^(2 step) + ... `` with ``terms`` summands."""
    cs = [0] * (step * (terms - 1) + 1) if terms > 0 else []
    for i in range(terms):
        cs[i * step] = 1
    return IntPolynomial(cs)


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPolynomial:
    """The ``d``-th cyclotomic polynomial, by dividing ``x^d - 1`` by the proper divisors."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    p = IntPolynomial.monomial(d) - ONE
    for e in range(1, d):
        if d % e == 0:
            p = div_exact(p, cyclotomic(e))
    return p


def euler_phi(n: int) -> int:
    result = n
    m = n
    f = 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result


def strip_cyclotomic(p: IntPolynomial) -> tuple[IntPolynomial, list[tuple[int, int]]]:
    """Divide out every cyclotomic factor of ``p``.

    Returns ``(core, [(d, multiplicity), ...])`` with
    ``core * prod(cyclotomic(d) ** mult) == p``. The search runs over
    ``d <= 2 * deg(p)**2``, enough because ``phi(d) >= sqrt(d / 2)``.
    """
    if p.is_zero():
        raise ZeroPolynomialError("cannot strip the zero polynomial")
    core = p
    factors: list[tuple[int, int]] = []
    n = p.degree
    for d in range(1, 2 * n * n + 1):
        if euler_phi(d) > core.degree:
            continue
        phi_d = cyclotomic(d)
        mult = 0
        while core.degree >= phi_d.degree:
            q, r = core.divmod_exact(phi_d)
            if not r.is_zero():
                break
            core = q
            mult += 1
        if mult:
            factors.append((d, mult))
    return core, factors


def strip_monomial(p: IntPolynomial) -> tuple[IntPolynomial, int]:
    """Remove the largest power of ``x`` dividing ``p``."""
    k = 0
    while k < len(p.coeffs) and p.coeffs[k] == 0:
        k += 1
    return IntPolynomial(p.coeffs[k:]), k


# text syntax

_TERM_RE = re.compile(
    r"""
    (?P<sign>[+-])?
    (?:
        (?P<coef>\d+)\s*\*?\s*(?P<var1>[xt])(?:\^(?P<exp1>\d+))?
      | (?P<var2>[xt])(?:\^(?P<exp2>\d+))?
      | (?P<const>\d+)
    )
    """,
    re.VERBOSE,
)


def parse_polynomial(text: str) -> IntPolynomial:
    """Parse ``x^6-x^5-x^4-x^2+1`` or an ascending list ``[1,-1,0,1]``."""
    s = "".join(text.split())
    if not s:
        raise PolynomialParseError("empty polynomial")
    if s.startswith("["):
        if not s.endswith("]"):
            raise PolynomialParseError(f"unterminated coefficient list: {text!r}")
        body = s[1:-1]
        if not body:
            return IntPolynomial()
        try:
            return IntPolynomial(int(tok) for tok in body.split(","))
        except ValueError as exc:
            raise PolynomialParseError(f"bad coefficient list: {text!r}") from exc
    s = s.replace("**", "^")
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise PolynomialParseError(f"cannot parse polynomial near {s[pos:]!r}")
        if not first and not m.group("sign"):
            raise PolynomialParseError(f"missing operator near {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("const") is not None:
            c, e = int(m.group("const")), 0
        elif m.group("var1") is not None:
            c = int(m.group("coef"))
            e = int(m.group("exp1")) if m.group("exp1") else 1
        else:
            c = 1
            e = int(m.group("exp2")) if m.group("exp2") else 1
        coeffs[e] = coeffs.get(e, 0) + sign * c
        pos = m.end()
        first = False
    if not coeffs:
        return IntPolynomial()
    out = [0] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return IntPolynomial(out)


def format_polynomial(p: IntPolynomial, var: str = "x") -> str:
    """Descending-power text form, the inverse of :func:`parse_polynomial`."""
    if p.is_zero():
        return "0"
    parts = []
    for e in range(p.degree, -1, -1):
        c = p.coeffs[e]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if e == 0:
            body = str(a)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            body = mono if a == 1 else f"{a}{mono}"
        parts.append((sign, body))
    head_sign, head = parts[0]
    out = ("-" if head_sign == "-" else "") + head
    for sign, body in parts[1:]:
        out += sign + body
    return out


class RationalFunction:
    """A reduced quotient of integer polynomials.

    Normal form: ``gcd(num, den) == 1``, no common integer content and a
    positive leading coefficient in the denominator, so equal functions
    compare equal structurally.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IntPolynomial, den: IntPolynomial = ONE):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = ZERO, ONE
            return
        g = gcd(num, den)
        if g.degree > 0:
            num = div_exact(num, g)
            den = div_exact(den, g)
        c = igcd(num.content(), den.content())
        if den.leading < 0:
            c = -c
        if c != 1:
            num = IntPolynomial(x // c for x in num.coeffs)
            den = IntPolynomial(x // c for x in den.coeffs)
        self.num, self.den = num, den

    @classmethod
    def parse(cls, text: str) -> RationalFunction:
        """Accept ``num`` or ``(num)/(den)`` with optional products in each part."""
        s = "".join(text.split())
        num_s, _, den_s = _split_top_level_slash(s)
        num = _parse_product(num_s)
        den = _parse_product(den_s) if den_s else ONE
        return cls(num, den)

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            other = RationalFunction(other)
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"


def _split_top_level_slash(s: str) -> tuple[str, str, str]:
    depth = 0
    for i, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return s[:i], "/", s[i + 1:]
    return s, "", ""


def _parse_product(s: str) -> IntPolynomial:
    """Parse ``(a)(b)*(c)`` or a bare polynomial."""
    if not s:
        raise PolynomialParseError("empty factor")
    if not s.startswith("("):
        return parse_polynomial(s)
    out = ONE
    pos = 0
    while pos < len(s):
        if s[pos] == "*":
            pos += 1
            continue
        if s[pos] != "(":
            raise PolynomialParseError(f"expected '(' in {s!r}")
        depth = 0
        for end in range(pos, len(s)):
            if s[end] == "(":
                depth += 1
            elif s[end] == ")":
                depth -= 1
                if depth == 0:
                    break
        else:
            raise PolynomialParseError(f"unbalanced parentheses in {s!r}")
        out = out * parse_polynomial(s[pos + 1:end])
        pos = end + 1
    return out
