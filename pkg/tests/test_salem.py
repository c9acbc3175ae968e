import pytest
from hypothesis import given, strategies as st

from betaforge.errors import HypothesisFailed, MOutOfRange, NoSalemRoot, PatternMismatch, Undetermined, UnsupportedParams
from betaforge.expansion import companion_poly
from betaforge.poly import ONE, X, IntPolynomial, parse_polynomial
from betaforge.catalog import regular_pisot
from betaforge.salem import (
    Sign,
    check_hypotheses,
    TheoremId,
    build_family_member,
    companion_identity_holds,
    expand_member,
    expected_companion,
    extract_base_case,
    find_base_case,
    lambda_via_A,
    middle_length,
    predict,
    predict_pos_finite,
    tau_via_B,
    tau_via_Z,
    template,
    verify,
)
from betaforge.words import DigitWord, check_reversibly_greedy, parse_word

CHI = parse_polynomial("x^4-x^3-2x^2+1")
PHI2 = parse_polynomial("x^3-2x^2+x-1")
SIX = parse_polynomial("x^6-x^5-x^4-x^2+1")
GOLDEN = parse_polynomial("x^2-x-1")


@given(st.sampled_from([CHI, PHI2, SIX, GOLDEN]), st.sampled_from(["+", "-"]), st.integers(4, 14))
def test_member_invariants(M, sign, m):
    try:
        mem = build_family_member(M, sign, m, classify_core=False)
    except NoSalemRoot:
        return
    star = M.reciprocal()
    expected = M.shift(m) + star if sign == "+" else M.shift(m) - star
    assert mem.raw == expected
    if sign == "-":
        assert mem.raw(1) == 0
        assert (1, 1) in mem.factors
    assert mem.core(1) != 0
    assert mem.salem_root.lo >= 1 and mem.salem_root.hi <= 2


def test_member_is_salem_for_known_members():
    for m in range(4, 12):
        assert build_family_member(CHI, "+", m).is_salem


def test_small_m_has_no_salem_root():
    with pytest.raises(NoSalemRoot):
        build_family_member(GOLDEN, "+", 1)


def test_non_pisot_rejected():
    with pytest.raises(ValueError):
        build_family_member(parse_polynomial("x^2-2"), "+", 5)


def test_sign_parse():
    assert Sign.parse("plus") is Sign.PLUS and Sign.parse("-") is Sign.MINUS
    with pytest.raises(ValueError):
        Sign.parse("?")


# base cases


def test_chi_positive_periodic_middles():
    w = parse_word("11(10)^w")
    assert find_base_case(TheoremId.POS_PERIODIC, CHI, 1, w).tau_or_lambda == "0110"
    assert find_base_case(TheoremId.POS_PERIODIC, CHI, 2, w).tau_or_lambda == "10001"


@pytest.mark.parametrize(
    "M, tid, j, n, middle",
    [
        (SIX, TheoremId.NEG_PERIODIC_EVEN, 2, 1, "1"),
        (SIX, TheoremId.NEG_PERIODIC, 4, 2, "0"),
        (SIX, TheoremId.NEG_PERIODIC, 4, 1, "0"),
        (PHI2, TheoremId.NEG_FINITE, 3, 1, "1"),
        (PHI2, TheoremId.NEG_FINITE_EVEN, 1, 1, "00"),
        (PHI2, TheoremId.NEG_FINITE_EVEN, 4, 1, "10101"),
    ],
)
def test_base_cases(M, tid, j, n, middle):
    case = find_base_case(tid, M, j, n=n)
    assert case.tau_or_lambda == middle
    assert len(middle) == middle_length(tid, case.pisot_word, j)
    assert verify(case, range(1, 5)).all_match


def test_extract_matches_non_minimal_period():
    # m = 7 for Phi_2 is 1(100)^w, read against the template as 1(100100)^w
    mem = build_family_member(PHI2, "-", 7)
    case = extract_base_case(TheoremId.NEG_FINITE, parse_word("1101"), mem)
    assert predict(case, 1).presentation() == "1(100100)^w"
    assert str(predict(case, 1)) == "1(100)^w"


def test_extract_errors():
    w = parse_word("11(0010)^w")
    with pytest.raises(Undetermined):
        extract_base_case(TheoremId.NEG_PERIODIC_EVEN, w, build_family_member(SIX, "-", 7), max_digits=20)
    with pytest.raises(PatternMismatch):
        extract_base_case(TheoremId.NEG_PERIODIC, w, build_family_member(SIX, "-", 6))
    with pytest.raises(UnsupportedParams):
        extract_base_case(TheoremId.POS_PERIODIC, w, build_family_member(SIX, "-", 6))
    with pytest.raises(UnsupportedParams):
        extract_base_case(TheoremId.NEG_FINITE, w, build_family_member(SIX, "-", 6))
    with pytest.raises(UnsupportedParams):
        find_base_case(TheoremId.NEG_PERIODIC_EVEN, parse_polynomial("x^3-x-1"), 1)  # finite word
    # theorem hypotheses
    bad = parse_polynomial("x^8-x^7-x^6-x^3-x-1")
    with pytest.raises((HypothesisFailed, ValueError)):
        find_base_case(TheoremId.NEG_FINITE, bad, 2, parse_word("11001011"))


def test_relaxed_mode_skips_reversible_greedy():
    spec = regular_pisot("PhiC", "-", 3, 7)
    word, core = spec.expected_word, spec.minimal_polynomial()
    assert not check_reversibly_greedy(word)[0]
    with pytest.raises(HypothesisFailed):
        check_hypotheses(TheoremId.NEG_FINITE, word, core)
    q = check_hypotheses(TheoremId.NEG_FINITE, word, core, relaxed=True)
    assert q.reciprocal() == q
    with pytest.raises(HypothesisFailed):
        check_hypotheses(TheoremId.NEG_PERIODIC, word, core, relaxed=True)


def test_pos_finite_prediction():
    assert predict_pos_finite(parse_word("11"), 5) == parse_word("1(100)^w")
    assert predict_pos_finite(parse_word("11"), 5).presentation() == "1(100100)^w"
    assert predict_pos_finite(parse_word("1101"), 9) == parse_word("1(101000010100)^w")
    with pytest.raises(MOutOfRange):
        predict_pos_finite(parse_word("11"), 4)
    for word, M, m in [("11", GOLDEN, 5), ("11", GOLDEN, 8), ("1101", PHI2, 9), ("1101", PHI2, 12)]:
        assert expand_member(build_family_member(M, "+", m)).word == predict_pos_finite(parse_word(word), m)


def test_predict_examples():
    c1 = find_base_case(TheoremId.POS_PERIODIC, CHI, 1)
    c2 = find_base_case(TheoremId.POS_PERIODIC, CHI, 2)
    assert predict(c1, 2) == parse_word("1(1(10)0110(01)100)^w")
    assert predict(c2, 3) == parse_word("1(1(10)^30(01)^3100)^w")  # m = 8
    assert c2.member_index(3) == 8
    c = find_base_case(TheoremId.NEG_FINITE, PHI2, 3)
    assert predict(c, 3) == parse_word("1(10011001100100)^w")


def test_template_counts():
    w = template(TheoremId.NEG_PERIODIC_EVEN, "1", "0010", "1", 2)
    # kappa, gamma^2, middle, reversed gamma^2, kappa, 00
    assert w.presentation() == "1(" + "1" + "0010" * 2 + "1" + "0100" * 2 + "1" + "00" + ")^w"


# closed-form readings


def test_tau_via_Z_readings():
    M = parse_polynomial("x^6-x^5-x^4-x^3+1")
    w = parse_word("1101(01100)^w")
    got = {j: tau_via_Z(w, M, j) for j in range(1, 6)}
    assert not got[1].valid and str(got[1]) == "00100200100"
    assert not got[3].valid and not got[4].valid
    assert got[2] == "010001100010"
    assert got[5] == "011" + "0" * 9 + "110"


def test_tau_via_B_needs_even_period():
    with pytest.raises(UnsupportedParams):
        tau_via_B(DigitWord("11", "100"), SIX, 1)


def test_lambda_via_A_matches_extract():
    case = find_base_case(TheoremId.NEG_PERIODIC, SIX, 4)
    assert lambda_via_A(case.pisot_word, SIX, 4) == case.tau_or_lambda
    case = find_base_case(TheoremId.NEG_PERIODIC_EVEN, SIX, 2)
    assert tau_via_B(case.pisot_word, SIX, 2) == case.tau_or_lambda == "1"


def test_reading_invalid_when_minpoly_wrong():
    r = tau_via_Z(parse_word("11(10)^w"), PHI2, 1)
    assert not r.valid and "divide" in r.reason


# companion identities


@pytest.mark.parametrize(
    "M, tid, j",
    [
        (CHI, TheoremId.POS_PERIODIC, 1),
        (CHI, TheoremId.POS_PERIODIC, 2),
        (SIX, TheoremId.NEG_PERIODIC_EVEN, 2),
        (SIX, TheoremId.NEG_PERIODIC, 4),
        (PHI2, TheoremId.NEG_FINITE_EVEN, 1),
        (PHI2, TheoremId.NEG_FINITE_EVEN, 4),
        (PHI2, TheoremId.NEG_FINITE, 3),
    ],
)
def test_companion_identities(M, tid, j):
    case = find_base_case(tid, M, j)
    for n in range(1, 7):
        assert companion_poly(predict(case, n)) == expected_companion(case, n)
        assert companion_identity_holds(case, n)


def test_non_minimal_period_factor_mismatch():
    case = find_base_case(TheoremId.NEG_PERIODIC, SIX, 4)
    k, ell, lam = 2, 4, len(case.tau_or_lambda)
    for n in range(1, 4):
        w = predict(case, n)
        doubled = DigitWord(w.preperiod, w.period * 2)
        extra = IntPolynomial.monomial(n * ell + 2 * k + lam) + ONE
        assert companion_poly(doubled) == companion_poly(w) * extra
        # the symmetric form would need x^(n l + l/2) + 1 instead, which differs here
        assert 2 * k + lam != ell // 2
        assert companion_poly(doubled) != companion_poly(w) * (IntPolynomial.monomial(n * ell + ell // 2) + ONE)


def test_verify_reports_undetermined_rows():
    case = find_base_case(TheoremId.NEG_FINITE, PHI2, 3)
    rep = verify(case, [1, 2], max_digits=50)
    assert [r.status for r in rep.rows] == ["match", "match"]
    rep = verify(case, [1, 2], jobs=2)
    assert rep.all_match and [r.n for r in rep.rows] == [1, 2]
