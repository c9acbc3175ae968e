"""Eventually periodic binary words ``u(v)^w`` and the lexicographic machinery.

A :class:`DigitWord` keeps the presentation it was built with, because the
companion polynomial depends on it. Equality, hashing and printing go
through the canonical form, so two presentations of one stream compare equal.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from math import lcm
from typing import Iterable, Sequence, Union

from .errors import NotGreedy, WordParseError


class Order(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


def _check_binary(s: str, what: str) -> None:
    bad = set(s) - {"0", "1"}
    if bad:
        raise WordParseError(f"{what} contains non-binary digits {sorted(bad)}")


def _primitive_root(s: str) -> str:
    n = len(s)
    for d in range(1, n + 1):
        if n % d == 0 and s[:d] * (n // d) == s:
            return s[:d]
    return s


class DigitWord:
    __slots__ = ("preperiod", "period", "_canon")

    def __init__(self, preperiod: str = "", period: str = ""):
        preperiod, period = str(preperiod), str(period)
        _check_binary(preperiod, "preperiod")
        _check_binary(period, "period")
        self.preperiod = preperiod
        self.period = period
        self._canon = None

    # presentation

    @property
    def k(self) -> int:
        return len(self.preperiod)

    @property
    def ell(self) -> int:
        return len(self.period)

    def is_finite(self) -> bool:
        """True when the stream ends in zeros (period empty or all zeros)."""
        return "1" not in self.period

    def digits(self, n: int) -> str:
        """First ``n`` digits of the stream, zero-extended for finite words."""
        out = self.preperiod[:n]
        if len(out) < n:
            rest = n - len(out)
            if self.period:
                reps = rest // len(self.period) + 1
                out += (self.period * reps)[:rest]
            else:
                out += "0" * rest
        return out

    def canonical(self) -> DigitWord:
        if self._canon is not None:
            return self._canon
        pre, per = self.preperiod, self.period
        if "1" not in per:
            pre = pre.rstrip("0") or "0"
            per = ""
        else:
            per = _primitive_root(per)
            while pre and pre[-1] == per[-1]:
                pre = pre[:-1]
                per = per[-1] + per[:-1]
        c = DigitWord(pre, per)
        c._canon = c
        self._canon = c
        return c

    def is_canonical(self) -> bool:
        c = self.canonical()
        return c.preperiod == self.preperiod and c.period == self.period

    def is_zero(self) -> bool:
        return self.canonical().preperiod == "0"

    def presentation(self) -> str:
        """The word exactly as constructed, e.g. ``1(100100)^w``."""
        if not self.period:
            return self.preperiod or "0"
        return f"{self.preperiod}({self.period})^w"

    def __str__(self) -> str:
        return self.canonical().presentation()

    def __repr__(self) -> str:
        return f"DigitWord({self.presentation()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            other = parse_word(other)
        if not isinstance(other, DigitWord):
            return NotImplemented
        a, b = self.canonical(), other.canonical()
        return a.preperiod == b.preperiod and a.period == b.period

    def __hash__(self) -> int:
        c = self.canonical()
        return hash((c.preperiod, c.period))

    def as_dict(self) -> dict:
        c = self.canonical()
        return {"preperiod": c.preperiod, "period": c.period}

    @classmethod
    def from_dict(cls, d: dict) -> DigitWord:
        return cls(d.get("preperiod", ""), d.get("period", ""))

    @classmethod
    def parse(cls, text: str) -> DigitWord:
        return parse_word(text)

    def window(self) -> str:
        """``a_1 ... a_{k+l}`` of the presentation."""
        return self.preperiod + self.period


def compare_lex(a: DigitWord, b: DigitWord) -> Order:
    """Compare the infinite digit streams (finite words padded with zeros)."""
    la = a.ell if a.ell else 1
    lb = b.ell if b.ell else 1
    n = max(a.k, b.k) + lcm(la, lb)
    da, db = a.digits(n), b.digits(n)
    if da == db:
        return Order.EQ
    return Order.LT if da < db else Order.GT


def shift(a: DigitWord, j: int) -> DigitWord:
    """Drop the first ``j`` digits."""
    if j < 0:
        raise ValueError("shift must be nonnegative")
    if j <= a.k:
        return DigitWord(a.preperiod[j:], a.period).canonical()
    if not a.period:
        return DigitWord("0").canonical()
    r = (j - a.k) % a.ell
    return DigitWord("", a.period[r:] + a.period[:r]).canonical()


def check_parry(a: DigitWord) -> tuple[bool, int | None]:
    """Strict Parry test ``sigma^j(a) < a`` for ``1 <= j <= k + l``.

    Returns ``(ok, first violating j)``.
    """
    c = a.canonical()
    if c.is_zero() or c.digits(1) != "1":
        raise WordParseError("the Parry test needs a word starting with 1")
    for j in range(1, c.k + c.ell + 1):
        if compare_lex(shift(c, j), c) is not Order.LT:
            return False, j
    return True, None


def _weak_parry(c: DigitWord) -> bool:
    return all(compare_lex(shift(c, j), c) is not Order.GT for j in range(1, c.k + c.ell + 1))


def check_reversibly_greedy(a: DigitWord) -> tuple[bool, int | None]:
    """Full window versus every reversed slice ``a_{N-i} ... a_2``, zero padded.

    The precondition accepts quasi-greedy words (``sigma^j(a) <= a``) as well
    as greedy ones, so purely periodic quasi-greedy expansions can be tested.
    Returns ``(ok, first violating i)``; ties violate the strict condition.
    """
    c = a.canonical()
    if c.is_zero() or c.digits(1) != "1" or not _weak_parry(c):
        raise NotGreedy(f"{c} is not a greedy or quasi-greedy word")
    w = c.window()
    n = len(w)
    for i in range(0, n - 1):
        rev = w[1:n - i][::-1]
        if not w > rev.ljust(n, "0"):
            return False, i
    return True, None


def quasi_greedy_of_finite(a: DigitWord) -> DigitWord:
    """``(a_1 ... a_{k-1} (a_k - 1))^w`` for a finite word ending in 1."""
    c = a.canonical()
    if not c.is_finite():
        raise WordParseError(f"{c} is not finite")
    w = c.preperiod
    if w == "0" or w[-1] != "1":
        raise WordParseError(f"{c} must end in the digit 1")
    if w == "1":
        raise WordParseError("the word 1 would describe base 1")
    return DigitWord("", w[:-1] + "0").canonical()


def adjust_last(s: str) -> str:
    """Replace the final digit ``d`` by ``d - 1``; the digit must be 1."""
    if not s or s[-1] != "1":
        raise WordParseError(f"cannot lower the last digit of {s!r}")
    return s[:-1] + "0"


# pattern construction


@dataclass(frozen=True)
class Rev:
    """The reversed fragment, written with a star."""

    part: "Fragment"


@dataclass(frozen=True)
class Rep:
    part: "Fragment"
    times: int


Fragment = Union[str, Rev, Rep, Sequence]


def render(part) -> str:
    if isinstance(part, str):
        _check_binary(part, "fragment")
        return part
    if isinstance(part, Rev):
        return render(part.part)[::-1]
    if isinstance(part, Rep):
        if part.times < 0:
            raise ValueError("negative repetition count")
        return render(part.part) * part.times
    return "".join(render(p) for p in part)


def build_pattern(head: Iterable, cycle: Iterable = ()) -> DigitWord:
    """Concatenate fragments; ``cycle`` becomes the period, kept as presented."""
    return DigitWord(render(list(head)), render(list(cycle)))


# text syntax

_OMEGA = ("w", "ω")


def parse_word(text: str) -> DigitWord:
    """Parse ``1101``, ``11(0010)^w`` or nested forms like ``1(1(10)^20(01)^2100)^w``.

    A single digit or a parenthesised group may carry ``^n`` (one decimal
    digit) or ``^{n}``; the final group may carry ``^w`` and becomes the
    period. Returns the canonical word.
    """
    return parse_presentation(text).canonical()


def parse_presentation(text: str) -> DigitWord:
    """Like :func:`parse_word` but keeps the presentation as written."""
    s = "".join(text.split())
    if not s:
        raise WordParseError("empty word")
    pos = 0

    def parse_seq(depth: int) -> tuple[str, str | None]:
        nonlocal pos
        out = []
        period = None
        while pos < len(s):
            ch = s[pos]
            if ch == ")":
                if depth == 0:
                    raise WordParseError(f"unbalanced ')' in {text!r}")
                return "".join(out), period
            if period is not None:
                raise WordParseError(f"digits after the periodic group in {text!r}")
            if ch in "01":
                atom = ch
                pos += 1
            elif ch == "(":
                pos += 1
                atom, inner_period = parse_seq(depth + 1)
                if inner_period is not None:
                    raise WordParseError(f"nested periodic group in {text!r}")
                if pos >= len(s) or s[pos] != ")":
                    raise WordParseError(f"unbalanced '(' in {text!r}")
                pos += 1
            else:
                raise WordParseError(f"unexpected {ch!r} in {text!r}")
            if pos < len(s) and s[pos] == "^":
                pos += 1
                if pos < len(s) and s[pos] in _OMEGA:
                    pos += 1
                    if depth != 0:
                        raise WordParseError(f"periodic group must be top level in {text!r}")
                    period = atom
                    continue
                if pos < len(s) and s[pos] == "{":
                    end = s.find("}", pos)
                    digits = s[pos + 1:end] if end > 0 else ""
                    pos = end + 1
                else:
                    # a bare exponent is one decimal digit: 0^3110 is 000 110
                    digits = s[pos:pos + 1]
                    pos += 1
                if not digits.isdigit():
                    raise WordParseError(f"bad exponent in {text!r}")
                atom = atom * int(digits)
            out.append(atom)
        if depth != 0:
            raise WordParseError(f"unbalanced '(' in {text!r}")
        return "".join(out), period

    pre, period = parse_seq(0)
    return DigitWord(pre, period or "")
