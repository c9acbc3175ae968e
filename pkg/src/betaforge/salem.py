"""Salem families ``T_m = M x^m +- M*`` and the periodic expansion templates.

Each template family is described by :class:`TheoremId`. A member index
``m`` splits as ``m = n * step + j`` with ``1 <= j <= step``; the base case
fixes the free middle string (tau or lambda) and :func:`predict` fills in
the copies of gamma for other ``n``.
"""
from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .algebraic import AlgebraicReal, isolate_root_in, sturm_count
from .classify import Classification, is_pisot, is_salem
from .errors import (
    HypothesisFailed,
    MOutOfRange,
    NoSalemRoot,
    NotDivisible,
    PatternMismatch,
    Undetermined,
    UnsupportedParams,
)
from .expansion import ExpansionResult, Status, companion_poly, greedy_expand
from .poly import ONE, IntPolynomial, div_exact, geometric, strip_cyclotomic, strip_monomial
from .words import DigitWord, Rep, Rev, adjust_last, build_pattern, check_reversibly_greedy


class Sign(str, enum.Enum):
    PLUS = "+"
    MINUS = "-"

    @classmethod
    def parse(cls, text) -> Sign:
        if isinstance(text, Sign):
            return text
        t = str(text).strip().lower()
        if t in ("+", "plus", "pos", "positive"):
            return cls.PLUS
        if t in ("-", "minus", "neg", "negative"):
            return cls.MINUS
        raise ValueError(f"unknown sign {text!r}")


class TheoremId(str, enum.Enum):
    POS_FINITE = "PosFinite21"
    POS_PERIODIC = "PosPeriodic22"
    NEG_PERIODIC_EVEN = "NegPeriodicEven32"
    NEG_PERIODIC = "NegPeriodic33"
    NEG_FINITE_EVEN = "NegFiniteEven36"
    NEG_FINITE = "NegFinite38"

    @property
    def sign(self) -> Sign:
        return Sign.PLUS if self in (TheoremId.POS_FINITE, TheoremId.POS_PERIODIC) else Sign.MINUS

    @property
    def needs_finite(self) -> bool:
        return self in (TheoremId.POS_FINITE, TheoremId.NEG_FINITE_EVEN, TheoremId.NEG_FINITE)

    @classmethod
    def parse(cls, text) -> TheoremId:
        if isinstance(text, TheoremId):
            return text
        for t in cls:
            if t.value.lower() == str(text).lower() or t.name.lower() == str(text).lower():
                return t
        raise ValueError(f"unknown theorem id {text!r}")


# family members


@dataclass
class SalemFamilyMember:
    pisot_minpoly: IntPolynomial
    sign: Sign
    m: int
    raw: IntPolynomial
    core: IntPolynomial
    factors: list[tuple[int, int]]
    salem_root: AlgebraicReal
    classification: Classification | None = None

    @property
    def is_salem(self) -> bool:
        return self.classification is not None and self.classification.kind.value == "Salem"

    def factor_string(self) -> str:
        return " ".join(f"Phi{d}^{e}" if e > 1 else f"Phi{d}" for d, e in self.factors)


def family_polynomial(M: IntPolynomial, sign, m: int) -> IntPolynomial:
    sign = Sign.parse(sign)
    star = M.reciprocal()
    return M.shift(m) + star if sign is Sign.PLUS else M.shift(m) - star


def build_family_member(
    M: IntPolynomial, sign, m: int, check_pisot: bool = True, classify_core: bool = True
) -> SalemFamilyMember:
    """Assemble ``T_m``, strip cyclotomic factors and isolate the root in (1, 2)."""
    sign = Sign.parse(sign)
    if m < 1:
        raise MOutOfRange("m must be positive")
    if not M.is_monic():
        raise ValueError(f"{M} is not monic")
    if check_pisot and not is_pisot(M)[0]:
        raise ValueError(f"{M} is not a Pisot polynomial")
    raw = family_polynomial(M, sign, m)
    core, factors = strip_cyclotomic(raw)
    core, xpow = strip_monomial(core)
    if core.leading < 0:
        core = -core
    if core.degree < 1 or core(1) == 0 or core(2) == 0 or sturm_count(core, 1, 2) != 1:
        raise NoSalemRoot(f"T_{m} = {raw} has no isolated root in (1, 2)")
    root = isolate_root_in(core, 1, 2)
    cls = None
    if classify_core:
        ok, cls = is_salem(core)
        if cls.dominant_root is None:
            cls.dominant_root = root
    return SalemFamilyMember(M, sign, m, raw, core, factors, root, cls)


def expand_member(member: SalemFamilyMember, max_digits: int | None = None) -> ExpansionResult:
    return greedy_expand(member.salem_root, max_digits)


# templates


@dataclass(frozen=True)
class TemplateParts:
    step: int
    kappa: str
    gamma: str


def theorem_parts(theorem_id, pisot_word: DigitWord) -> TemplateParts:
    """``step``, ``kappa`` and ``gamma`` as each template prescribes."""
    tid = TheoremId.parse(theorem_id)
    w = pisot_word.canonical()
    if tid.needs_finite:
        if not w.is_finite() or w.is_zero():
            raise UnsupportedParams(f"{tid.value} needs a finite word, got {w}")
        a = w.preperiod
        k = len(a)
        if tid is TheoremId.POS_FINITE:
            return TemplateParts(0, a[1:], a)
        if tid is TheoremId.NEG_FINITE_EVEN and k % 2:
            raise UnsupportedParams(f"{tid.value} needs an even length, got k={k}")
        gamma = adjust_last(a)
        return TemplateParts(k, gamma[1:], gamma)
    if w.is_finite():
        raise UnsupportedParams(f"{tid.value} needs an infinite word, got {w}")
    if not w.preperiod:
        raise UnsupportedParams(f"{tid.value} needs a nonempty preperiod, got {w}")
    k, ell = w.k, w.ell
    if tid is TheoremId.NEG_PERIODIC_EVEN and ell % 2:
        raise UnsupportedParams(f"{tid.value} needs an even period, got l={ell}")
    return TemplateParts(ell, w.preperiod[1:], w.period)


def middle_length(theorem_id, pisot_word: DigitWord, j: int) -> int:
    tid = TheoremId.parse(theorem_id)
    w = pisot_word.canonical()
    if tid is TheoremId.POS_PERIODIC:
        return 3 * w.ell - w.k - 1 + j
    if tid is TheoremId.NEG_PERIODIC_EVEN:
        return j - w.k + w.ell // 2 - 1
    if tid is TheoremId.NEG_PERIODIC:
        return j - w.k - 1
    if tid is TheoremId.NEG_FINITE_EVEN:
        return j - 1 + w.k // 2
    if tid is TheoremId.NEG_FINITE:
        return j - 2
    raise UnsupportedParams("the positive finite template has no free middle")


def template(theorem_id, kappa: str, gamma: str, middle: str, n: int) -> DigitWord:
    """The template word at ``n``, kept in its ``1(...)^w`` presentation."""
    tid = TheoremId.parse(theorem_id)
    if n < 1:
        raise ValueError("n must be at least 1")
    if tid in (TheoremId.POS_PERIODIC, TheoremId.NEG_FINITE_EVEN):
        body = [kappa, Rep(gamma, n - 1), middle, Rep(Rev(gamma), n - 1), Rev(kappa), "00"]
    elif tid is TheoremId.NEG_PERIODIC_EVEN:
        body = [kappa, Rep(gamma, n), middle, Rep(Rev(gamma), n), Rev(kappa), "00"]
    elif tid is TheoremId.NEG_PERIODIC:
        body = [kappa, Rep(gamma, n), middle, Rev(kappa), "00"]
    elif tid is TheoremId.NEG_FINITE:
        body = [kappa, Rep(gamma, n - 1), middle, "00"]
    else:
        raise UnsupportedParams("use predict_pos_finite for the positive finite template")
    return build_pattern(["1"], body)


def _template_split(theorem_id, parts: TemplateParts, n: int) -> tuple[str, str]:
    """Fixed text before and after the middle of the period at ``n``."""
    tid = TheoremId.parse(theorem_id)
    kappa, gamma = parts.kappa, parts.gamma
    if tid in (TheoremId.POS_PERIODIC, TheoremId.NEG_FINITE_EVEN):
        return kappa + gamma * (n - 1), gamma[::-1] * (n - 1) + kappa[::-1] + "00"
    if tid is TheoremId.NEG_PERIODIC_EVEN:
        return kappa + gamma * n, gamma[::-1] * n + kappa[::-1] + "00"
    if tid is TheoremId.NEG_PERIODIC:
        return kappa + gamma * n, kappa[::-1] + "00"
    return kappa + gamma * (n - 1), "00"


def predict_pos_finite(pisot_word: DigitWord, m: int) -> DigitWord:
    """``1(kappa 0^(m-k-1) kappa* 00)^w`` for a finite word and ``m > 2k``."""
    parts = theorem_parts(TheoremId.POS_FINITE, pisot_word)
    k = len(parts.gamma)
    if m <= 2 * k:
        raise MOutOfRange(f"m must exceed 2k = {2 * k}, got {m}")
    return build_pattern(["1"], [parts.kappa, Rep("0", m - k - 1), Rev(parts.kappa), "00"])


def split_index(theorem_id, pisot_word: DigitWord, m: int) -> tuple[int, int]:
    """``(n, j)`` with ``m = n * step + j`` and ``1 <= j <= step``."""
    step = theorem_parts(theorem_id, pisot_word).step
    j = (m - 1) % step + 1
    return (m - j) // step, j


# base cases


@dataclass
class TheoremCase:
    theorem_id: TheoremId
    pisot_word: DigitWord
    minpoly: IntPolynomial
    j: int
    kappa: str
    gamma: str
    tau_or_lambda: str
    base_m: int
    period_step: int
    cofactor: IntPolynomial = field(default=ONE)

    @property
    def base_n(self) -> int:
        return (self.base_m - self.j) // self.period_step

    def member_index(self, n: int) -> int:
        return n * self.period_step + self.j

    def as_dict(self) -> dict:
        return {
            "theorem": self.theorem_id.value,
            "pisot_word": str(self.pisot_word),
            "minpoly": str(self.minpoly),
            "j": self.j,
            "kappa": self.kappa,
            "gamma": self.gamma,
            "tau_or_lambda": self.tau_or_lambda,
            "base_m": self.base_m,
            "period_step": self.period_step,
            "cofactor": str(self.cofactor),
        }


def check_hypotheses(theorem_id, pisot_word: DigitWord, minpoly: IntPolynomial, relaxed: bool = False) -> IntPolynomial:
    """Reversibly greedy word and reciprocal co-factor; returns the co-factor.

    ``relaxed`` drops the reversibly greedy requirement for the finite
    negative template without symmetric middle, which may not need it.
    """
    tid = TheoremId.parse(theorem_id)
    if not (relaxed and tid is TheoremId.NEG_FINITE):
        ok, i = check_reversibly_greedy(pisot_word)
        if not ok:
            raise HypothesisFailed(f"{pisot_word} is not reversibly greedy (i={i})")
    try:
        q = div_exact(companion_poly(pisot_word.canonical()), minpoly)
    except NotDivisible as exc:
        raise HypothesisFailed(f"{minpoly} does not divide the companion of {pisot_word}") from exc
    if q.reciprocal() != q:
        raise HypothesisFailed(f"co-factor {q} is not reciprocal")
    return q


def extract_base_case(
    theorem_id,
    pisot_word: DigitWord,
    member: SalemFamilyMember,
    relaxed: bool = False,
    max_digits: int | None = None,
    expansion: ExpansionResult | None = None,
) -> TheoremCase:
    """Match the member's expansion against the template and solve for the middle."""
    tid = TheoremId.parse(theorem_id)
    w = pisot_word.canonical()
    parts = theorem_parts(tid, w)
    if tid is TheoremId.POS_FINITE:
        raise UnsupportedParams("the positive finite template has no base case")
    if member.sign is not tid.sign:
        raise UnsupportedParams(f"{tid.value} needs sign {tid.sign.value}")
    q = check_hypotheses(tid, w, member.pisot_minpoly, relaxed)
    n, j = split_index(tid, w, member.m)
    if n < 1:
        raise MOutOfRange(f"m={member.m} is below the first member for j={j}")
    mid_len = middle_length(tid, w, j)
    if mid_len < 0:
        raise PatternMismatch(f"j={j} gives a negative middle length {mid_len}")
    res = expansion if expansion is not None else expand_member(member, max_digits)
    if res.status is Status.UNDETERMINED:
        raise Undetermined(
            f"expansion of the m={member.m} member is not periodic within "
            f"{res.digits_computed} digits",
            res.digits_computed,
        )
    head, tail = _template_split(tid, parts, n)
    period_len = len(head) + mid_len + len(tail)
    got = res.word
    body = got.digits(1 + period_len)[1:]
    if got.digits(1) != "1" or DigitWord("1", body) != got:
        raise PatternMismatch(f"{got} has no period of length {period_len} after a leading 1")
    if not (body.startswith(head) and body.endswith(tail)):
        raise PatternMismatch(f"{got} does not fit the {tid.value} template")
    middle = body[len(head):len(head) + mid_len]
    case = TheoremCase(tid, w, member.pisot_minpoly, j, parts.kappa, parts.gamma, middle,
                       member.m, parts.step, q)
    # a short true period can line up with the template by accident
    if not companion_identity_holds(case, n):
        raise PatternMismatch(f"{got} fits the {tid.value} template only through a shorter period")
    return case


def find_base_case(
    theorem_id,
    M: IntPolynomial,
    j: int,
    pisot_word: DigitWord | None = None,
    relaxed: bool = False,
    max_digits: int | None = None,
    n: int = 1,
) -> TheoremCase:
    """Expand ``M``'s base, build the member at ``n * step + j`` and extract."""
    tid = TheoremId.parse(theorem_id)
    if pisot_word is None:
        pisot_word = pisot_expansion(M, max_digits)
    parts = theorem_parts(tid, pisot_word)
    if not 1 <= j <= parts.step:
        raise UnsupportedParams(f"j must lie in 1..{parts.step}, got {j}")
    member = build_family_member(M, tid.sign, n * parts.step + j, check_pisot=False,
                                 classify_core=False)
    return extract_base_case(tid, pisot_word, member, relaxed, max_digits)


def pisot_expansion(M: IntPolynomial, max_digits: int | None = None) -> DigitWord:
    root = isolate_root_in(M, 1, 2)
    res = greedy_expand(root, max_digits)
    if res.status is Status.UNDETERMINED:
        raise Undetermined(f"greedy expansion for {M} undetermined", res.digits_computed)
    return res.word


def predict(case: TheoremCase, n: int) -> DigitWord:
    return template(case.theorem_id, case.kappa, case.gamma, case.tau_or_lambda, n)


def expected_companion(case: TheoremCase, n: int) -> IntPolynomial:
    """The closed-form companion polynomial of ``predict(case, n)``."""
    tid = case.theorem_id
    M, Q = case.minpoly, case.cofactor
    m = case.member_index(n)
    T = family_polynomial(M, tid.sign, m)
    step = case.period_step
    if tid is TheoremId.POS_PERIODIC:
        return Q * T * geometric(step, n + 1)
    if tid in (TheoremId.NEG_PERIODIC, TheoremId.NEG_FINITE):
        return div_exact(Q * T, IntPolynomial.monomial(step) - ONE)
    p = step // 2
    num = Q * T * (IntPolynomial.monomial(2 * n * p + p) + ONE)
    return div_exact(num, IntPolynomial.monomial(2 * p) - ONE)


def companion_identity_holds(case: TheoremCase, n: int) -> bool:
    try:
        return companion_poly(predict(case, n)) == expected_companion(case, n)
    except NotDivisible:
        return False


@dataclass
class VerifyRow:
    n: int
    m: int
    predicted: DigitWord
    computed: DigitWord | None
    status: str  # match | mismatch | undetermined | error

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "predicted": str(self.predicted),
            "computed": None if self.computed is None else str(self.computed),
            "status": self.status,
        }


@dataclass
class VerifyReport:
    case: TheoremCase
    rows: list[VerifyRow]

    @property
    def all_match(self) -> bool:
        return all(r.status == "match" for r in self.rows)

    def counts(self) -> dict:
        out = {"match": 0, "mismatch": 0, "undetermined": 0, "error": 0}
        for r in self.rows:
            out[r.status] += 1
        return out


def _verify_one(case: TheoremCase, n: int, max_digits) -> VerifyRow:
    m = case.member_index(n)
    predicted = predict(case, n)
    try:
        member = build_family_member(case.minpoly, case.theorem_id.sign, m, check_pisot=False,
                                     classify_core=False)
    except NoSalemRoot:
        return VerifyRow(n, m, predicted, None, "error")
    res = expand_member(member, max_digits)
    if res.status is Status.UNDETERMINED:
        return VerifyRow(n, m, predicted, None, "undetermined")
    status = "match" if res.word == predicted else "mismatch"
    return VerifyRow(n, m, predicted, res.word, status)


def verify(case: TheoremCase, n_range=range(1, 5), max_digits: int | None = None, jobs: int = 1) -> VerifyReport:
    """Expand each member ``n * step + j`` and compare with the prediction."""
    ns = list(n_range)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(lambda n: _verify_one(case, n, max_digits), ns))
    else:
        rows = [_verify_one(case, n, max_digits) for n in ns]
    return VerifyReport(case, rows)


# closed-form readings of the middle string


@dataclass(frozen=True)
class DigitReading:
    """Coefficients read as digits, highest degree first."""

    coeffs: tuple[int, ...]
    valid: bool
    reason: str = ""

    @property
    def word(self) -> str | None:
        return "".join(str(c) for c in self.coeffs) if self.valid else None

    def __str__(self) -> str:
        if not self.coeffs and self.reason:
            return f"Invalid ({self.reason})"
        return "".join(str(c) if 0 <= c <= 9 else f"({c})" for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, str):
            return self.valid and self.word == other
        if isinstance(other, DigitReading):
            return (self.coeffs, self.valid) == (other.coeffs, other.valid)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.coeffs, self.valid))


def _read_window(poly: IntPolynomial, top: int, bottom: int) -> DigitReading:
    if top < bottom - 1:
        return DigitReading((), False, "empty or negative window")
    coeffs = tuple(poly[d] for d in range(top, bottom - 1, -1))
    outside = [d for d in range(poly.degree + 1) if poly[d] and not bottom <= d <= top]
    if outside:
        return DigitReading(coeffs, False, f"nonzero coefficient outside the window at x^{outside[0]}")
    ok = all(c in (0, 1) for c in coeffs)
    return DigitReading(coeffs, ok, "" if ok else "coefficient outside {0, 1}")


def _periodic_pieces(pisot_word: DigitWord):
    w = pisot_word.canonical()
    if w.is_finite() or not w.preperiod:
        raise UnsupportedParams(f"{w} is not eventually periodic with a preperiod")
    digits = [int(c) for c in w.preperiod]
    pk = IntPolynomial.from_digits(digits)
    pkl = IntPolynomial.from_digits(digits + [int(c) for c in w.period])
    return w, pk, pkl


def _check_minpoly(R: IntPolynomial, minpoly: IntPolynomial | None) -> str:
    if minpoly is None:
        return ""
    try:
        div_exact(R, minpoly)
    except NotDivisible:
        return f"{minpoly} does not divide the companion polynomial"
    return ""


def tau_via_Z(pisot_word: DigitWord, minpoly: IntPolynomial | None, j: int) -> DigitReading:
    """Middle string of the positive periodic base case read off ``Z_j``."""
    w, pk, pkl = _periodic_pieces(pisot_word)
    k, ell = w.k, w.ell
    bad = _check_minpoly(pkl - pk, minpoly)
    if bad:
        return DigitReading((), False, bad)
    S = pk.shift(ell) - pkl
    S_star = S.reciprocal(ell - 1) if not S.is_zero() else S
    Z = ((pk + S).shift(ell + j) + S.shift(2 * ell + j) + pk.reciprocal().shift(2 * ell)
         + S_star.shift(k + 1) + S_star.shift(ell + k + 1))
    return _read_window(Z, 3 * ell + j - 1, k + 1)


def Z_polynomial(pisot_word: DigitWord, j: int) -> IntPolynomial:
    w, pk, pkl = _periodic_pieces(pisot_word)
    k, ell = w.k, w.ell
    S = pk.shift(ell) - pkl
    S_star = S.reciprocal(ell - 1) if not S.is_zero() else S
    return ((pk + S).shift(ell + j) + S.shift(2 * ell + j) + pk.reciprocal().shift(2 * ell)
            + S_star.shift(k + 1) + S_star.shift(ell + k + 1))


def _divided_reading(pisot_word, minpoly, j, divisor_exp: int, lift: int) -> DigitReading:
    w, pk, pkl = _periodic_pieces(pisot_word)
    R = pkl - pk
    bad = _check_minpoly(R, minpoly)
    if bad:
        return DigitReading((), False, bad)
    try:
        A = div_exact(R.shift(j) - R.reciprocal(), IntPolynomial.monomial(divisor_exp) - ONE)
    except NotDivisible:
        return DigitReading((), False, f"not divisible by x^{divisor_exp} - 1")
    part = pk.shift(lift) + pk.reciprocal() - A
    return _read_window(part, lift - 1, w.k + 1)


def lambda_via_A(pisot_word: DigitWord, minpoly: IntPolynomial | None, j: int) -> DigitReading:
    """Middle string of the negative periodic template read off ``A(x)``."""
    w = pisot_word.canonical()
    return _divided_reading(w, minpoly, j, w.ell, j)


def tau_via_B(pisot_word: DigitWord, minpoly: IntPolynomial | None, j: int) -> DigitReading:
    """Middle string of the symmetric negative template read off ``B(x)``."""
    w = pisot_word.canonical()
    if w.ell % 2:
        raise UnsupportedParams(f"period length {w.ell} is odd")
    p = w.ell // 2
    return _divided_reading(w, minpoly, j, p, p + j)
