import time

import pytest

from betaforge.algebraic import isolate_root_in, sign_at
from betaforge.errors import BaseOutOfRange
from betaforge.expansion import (
    MAX_DIGITS_ENV,
    Status,
    companion_poly,
    cofactor,
    default_max_digits,
    greedy_expand,
    quasi_greedy_expand,
)
from betaforge.poly import parse_polynomial
from betaforge.words import check_parry, parse_presentation, parse_word

from .conftest import numeric_greedy_digits


def _base(text):
    return isolate_root_in(parse_polynomial(text), 1, 2)


@pytest.mark.parametrize(
    "text, word, status",
    [
        ("x^2-x-1", "11", Status.FINITE),
        ("x^4-x^3-2x^2+1", "11(10)^w", Status.PERIODIC),
        ("x^6-x^5-x^4-x^2+1", "11(0010)^w", Status.PERIODIC),
        ("x^3-2x^2+x-1", "1101", Status.FINITE),
        ("x^8-x^7-x^6-x^3-x-1", "11001011", Status.FINITE),
    ],
)
def test_known_expansions(text, word, status):
    res = greedy_expand(_base(text))
    assert res.status is status
    assert res.word == parse_word(word)
    assert check_parry(res.word)[0]


@pytest.mark.parametrize("text", ["x^2-x-1", "x^3-x-1", "x^4-x^3-2x^2+1", "x^3-2x^2+x-1", "x^6-x^5-x^4-x^2+1", "x^5-x^4-x^3+x^2-1"])
def test_matches_numeric_iteration(text):
    b = _base(text)
    res = greedy_expand(b)
    # float iteration cannot hit the final remainder 1 exactly, so the last finite digit is skipped
    n = res.word.k - 1 if res.status is Status.FINITE else 300
    assert res.word.digits(n) == numeric_greedy_digits(b.defining, b.lo, b.hi, n)


def test_cofactor_and_companion():
    res = greedy_expand(_base("x^3-2x^2+x-1"))
    assert res.companion == parse_polynomial("x^4-x^3-x^2-1")
    assert res.cofactor == parse_polynomial("x+1")
    q, recip = cofactor(res.word, parse_polynomial("x^3-2x^2+x-1"))
    assert recip
    assert sign_at(_base("x^3-2x^2+x-1"), res.companion) == 0


def test_companion_uses_presentation():
    short = companion_poly(parse_presentation("1(100)^w"))
    long = companion_poly(parse_presentation("1(100100)^w"))
    assert long == short * parse_polynomial("x^3+1")


def test_sqrt2_undetermined_quickly():
    t = time.time()
    res = greedy_expand(_base("x^2-2"))
    assert res.status is Status.UNDETERMINED
    assert res.digits_computed == 5000
    assert time.time() - t < 5


def test_env_override(monkeypatch):
    monkeypatch.setenv(MAX_DIGITS_ENV, "120")
    assert default_max_digits() == 120
    assert greedy_expand(_base("x^2-2")).digits_computed == 120
    monkeypatch.setenv(MAX_DIGITS_ENV, "zero")
    with pytest.raises(ValueError):
        default_max_digits()


def test_quasi_greedy():
    assert quasi_greedy_expand(_base("x^3-2x^2+x-1")).word == parse_word("(1100)^w")
    assert quasi_greedy_expand(_base("x^4-x^3-2x^2+1")).word == parse_word("11(10)^w")


def test_base_range_checked():
    with pytest.raises(BaseOutOfRange):
        greedy_expand(isolate_root_in(parse_polynomial("x^2-3x+1"), 2, 3))
