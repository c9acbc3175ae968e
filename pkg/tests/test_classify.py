import pytest
from hypothesis import given

from betaforge.classify import (
    Kind,
    classify,
    count_roots_in_unit_disk,
    dominant_root,
    is_pisot,
    is_salem,
    reciprocal_transform,
)
from betaforge.errors import NoDominantRoot, OnCircleOrDegenerate, TransformDegenerate
from betaforge.poly import parse_polynomial, squarefree

from .conftest import numeric_unit_disk_profile, polynomials

LEHMER = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1"


@pytest.mark.parametrize(
    "text, kind",
    [
        ("x^2-x-1", Kind.PISOT),
        ("x^3-x-1", Kind.PISOT),
        ("x^4-x^3-2x^2+1", Kind.PISOT),
        ("x^2-3x+1", Kind.PISOT),
        ("x-3", Kind.PISOT),
        (LEHMER, Kind.SALEM),
        ("x^8-x^7-x^6-x^3-x-1", Kind.NEITHER),
        ("x^2-2", Kind.NEITHER),
    ],
)
def test_classify_examples(text, kind):
    assert classify(parse_polynomial(text)).kind is kind


def test_classify_without_root_above_one():
    with pytest.raises(NoDominantRoot):
        classify(parse_polynomial("x^2+1"))


def test_lehmer_evidence():
    ok, c = is_salem(parse_polynomial(LEHMER))
    assert ok
    ev = c.evidence
    assert ev.reciprocal and ev.on_unit_circle == 8 and ev.roots_above_one == 1
    assert 1.176 < c.dominant_root.to_float() < 1.177


def test_reciprocal_transform():
    assert reciprocal_transform(parse_polynomial("x^2-3x+1")) == parse_polynomial("x-3")
    with pytest.raises(TransformDegenerate):
        reciprocal_transform(parse_polynomial("x^3-x-1"))


def test_unit_disk_count_rejects_circle():
    with pytest.raises(OnCircleOrDegenerate):
        count_roots_in_unit_disk(parse_polynomial("x^2+1"))


@given(polynomials(min_degree=1, max_degree=7))
def test_unit_disk_count_matches_numeric(p):
    if p.constant_term == 0 or not squarefree(p):
        return
    inside, on, _ = numeric_unit_disk_profile(p, 80)
    try:
        got = count_roots_in_unit_disk(p)
    except OnCircleOrDegenerate:
        assert on > 0
        return
    assert on == 0
    assert got == inside


@given(polynomials(min_degree=1, max_degree=6, monic=True))
def test_is_pisot_matches_numeric(p):
    if p.constant_term == 0 or not squarefree(p) or p(1) == 0:
        return
    inside, on, outside = numeric_unit_disk_profile(p, 80)
    expected = outside == 1 and on == 0 and inside == p.degree - 1
    try:
        dom = dominant_root(p)
    except NoDominantRoot:
        dom = None
    ok, _ = is_pisot(p)
    # the single conjugate outside the disk must be the real root above one
    assert ok == (expected and dom is not None)
