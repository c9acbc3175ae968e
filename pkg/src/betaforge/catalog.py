"""Limit points, regular Pisot families and their tabulated expansions."""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .algebraic import isolate_root_in
from .classify import is_pisot
from .errors import BetaForgeError, UnsupportedParams
from .expansion import Status, greedy_expand
from .poly import ONE, X, IntPolynomial, RationalFunction, geometric, strip_cyclotomic, strip_monomial
from .salem import Sign, TheoremId, find_base_case, theorem_parts
from .words import DigitWord, check_reversibly_greedy

FINITE_RG = "Finite Reversibly Greedy"
RG = "Reversibly Greedy"

LIMIT_NAMES = ("Phi_r", "Psi_r", "Chi")
FAMILY_NAMES = ("PhiA", "PhiB", "PhiC", "PsiA", "PsiB", "ChiA", "ChiB")


def _xp(n: int) -> IntPolynomial:
    return IntPolynomial.monomial(n)


def limit_point(name: str, r: int = 1) -> IntPolynomial:
    """``Phi_r``, ``Psi_r`` or ``chi`` (``r`` ignored for chi)."""
    key = _norm(name)
    if key == "chi":
        return IntPolynomial([1, 0, -2, -1, 1])
    if r < 1:
        raise UnsupportedParams("r must be at least 1")
    if key == "phi_r":
        return _xp(r + 1) - _xp(r).scale(2) + X - ONE
    if key == "psi_r":
        return _xp(r + 1) - geometric(1, r + 1)
    raise UnsupportedParams(f"unknown limit point {name!r}")


def _norm(name: str) -> str:
    key = name.strip().lower().replace("φ", "phi").replace("ψ", "psi").replace("χ", "chi")
    return {"phi": "phi_r", "psi": "psi_r"}.get(key, key)


def _addend(name: str, r: int) -> tuple[str, IntPolynomial]:
    key = _norm(name)
    if key == "phia":
        return "Phi_r", _xp(r) - _xp(r - 1) + ONE
    if key == "phib":
        return "Phi_r", _xp(r) - X + ONE
    if key == "phic":
        return "Phi_r", (_xp(r) + ONE) * (X - ONE)
    if key == "psia":
        return "Psi_r", _xp(r + 1) - ONE
    if key == "psib":
        return "Psi_r", geometric(1, r)
    if key == "chia":
        return "Chi", IntPolynomial([-1, -1, 1, 1])
    if key == "chib":
        return "Chi", IntPolynomial([1, 0, -1, 0, 1])
    raise UnsupportedParams(f"unknown family {name!r}")


def family_polynomial(name: str, sign, r: int, q: int) -> IntPolynomial:
    """``base(x) x^q +- addend(x)`` for one of the seven regular families."""
    sign = Sign.parse(sign)
    base_name, add = _addend(name, r)
    base = limit_point(base_name, r)
    return base.shift(q) + add if sign is Sign.PLUS else base.shift(q) - add


# tabulated expansions


def _geo_rf(num: IntPolynomial, *den: IntPolynomial) -> RationalFunction:
    d = ONE
    for f in den:
        d = d * f
    return RationalFunction(num, d)


@dataclass(frozen=True)
class Row:
    """One tabulated expansion: a word and pseudo-co-factor in terms of ``r, q, s``."""

    name: str
    sign: str  # "plus", "minus" or "none"
    restriction: str
    params: Callable[[int, int], int | None]  # (r, q) -> s, or None when outside
    q_min: Callable[[int], int | None]
    word: Callable[[int, int, int], str]
    pseudo_cofactor: Callable[[int, int, int], RationalFunction]
    prop: str
    strict: bool = True  # False: a mismatch is reported as disputed

    @property
    def key(self) -> str:
        return f"{self.name}{'' if self.sign == 'none' else ('+' if self.sign == 'plus' else '-')}[{self.restriction}]"


def _pw(s: str, n: int) -> str:
    if n < 0:
        raise UnsupportedParams("negative repetition")
    return s * n


def _ge(bound: Callable[[int], int]):
    return lambda r, q: 0 if q >= bound(r) else None


def _lin(a: Callable[[int], int], b: Callable[[int], int], s_min: int = 1):
    """``q = a(r) * s + b(r)`` with ``s >= s_min``."""

    def params(r, q):
        step, off = a(r), b(r)
        if (q - off) % step:
            return None
        s = (q - off) // step
        return s if s >= s_min else None

    return params


def _lin_min(a, b, s_min=1):
    return lambda r: a(r) * s_min + b(r)


PHI_PC = lambda r, q, s: _geo_rf(geometric(1, r))  # noqa: E731
ONE_RF = lambda r, q, s: RationalFunction(ONE)  # noqa: E731
X2M1 = _xp(2) - ONE


def _rows() -> list[Row]:
    z, o = "0", "1"
    rows = [
        Row("Phi_r", "none", "r>=1", lambda r, q: 0, lambda r: None,
            lambda r, q, s: o * r + z * (r - 1) + o, PHI_PC, FINITE_RG),
        Row("Psi_r", "none", "r>=1", lambda r, q: 0, lambda r: None,
            lambda r, q, s: o * (r + 1), ONE_RF, FINITE_RG),
        Row("Chi", "none", "none", lambda r, q: 0, lambda r: None,
            lambda r, q, s: "11(10)^w", ONE_RF, RG),
        Row("PhiA", "minus", "q>=2r", _ge(lambda r: 2 * r), lambda r: 2 * r,
            lambda r, q, s: o * r + z * (r - 1) + o + _pw(z, q - 2 * r) + o + z * r + o * (r - 1),
            PHI_PC, FINITE_RG),
        Row("PhiB", "minus", "q>=2r", _ge(lambda r: 2 * r), lambda r: 2 * r,
            lambda r, q, s: o * r + z * (r - 1) + o + _pw(z, q - 2 * r) + o * (r - 1) + z * r + o,
            PHI_PC, FINITE_RG),
        Row("PhiC", "minus", "q>=2r+1", _ge(lambda r: 2 * r + 1), lambda r: 2 * r + 1,
            lambda r, q, s: f"{o * r}{z * (r - 1)}1({_pw(z, q - 2 * r)}{o * r}{z * r})^w",
            PHI_PC, RG),
        Row("PhiA", "plus", "q=2rs+r-1", _lin(lambda r: 2 * r, lambda r: r - 1),
            _lin_min(lambda r: 2 * r, lambda r: r - 1),
            lambda r, q, s: (o * r + z * r) * s + o * (r - 1),
            lambda r, q, s: _geo_rf(ONE, _xp(r) + ONE, X - ONE), FINITE_RG, False),
        Row("PhiB", "plus", "q=2rs+1", _lin(lambda r: 2 * r, lambda r: 1),
            _lin_min(lambda r: 2 * r, lambda r: 1),
            lambda r, q, s: (o * r + z * r) * s + o,
            lambda r, q, s: _geo_rf(ONE, _xp(r) + ONE, X - ONE), FINITE_RG, False),
        Row("PhiC", "plus", "q=2rs", _lin(lambda r: 2 * r, lambda r: 0),
            _lin_min(lambda r: 2 * r, lambda r: 0),
            lambda r, q, s: (o * r + z * r) * (s - 1) + z * (q - 1) + o,
            lambda r, q, s: _geo_rf(_xp(q) - ONE, _xp(r) + ONE, X - ONE), FINITE_RG, False),
        # q = r would need 0^(-1); the first valid parameter is q = r + 1
        Row("PsiA", "minus", "q>=r+1", _ge(lambda r: r + 1), lambda r: r + 1,
            lambda r, q, s: f"{o * (r + 1)}({z * (q - r - 1)}{o * r}0)^w", ONE_RF, RG),
        # q = r - 1 would need 0^(-1); the first valid parameter is q = r
        Row("PsiB", "minus", "q>=r", _ge(lambda r: r), lambda r: r,
            lambda r, q, s: o * (r + 1) + z * (q - r) + o * r, ONE_RF, FINITE_RG),
        Row("PsiA", "plus", "q=(r+1)s", _lin(lambda r: r + 1, lambda r: 0),
            _lin_min(lambda r: r + 1, lambda r: 0),
            lambda r, q, s: (o * r + z) * s + z * (q - 1) + o,
            lambda r, q, s: RationalFunction(geometric(r + 1, s)), FINITE_RG, False),
        Row("PsiB", "plus", "q=(r+1)s+r", _lin(lambda r: r + 1, lambda r: r),
            _lin_min(lambda r: r + 1, lambda r: r),
            lambda r, q, s: (o * r + z) * (s - 1) + o * r,
            lambda r, q, s: _geo_rf(ONE, _xp(r + 1) - ONE), FINITE_RG, False),
    ]
    even = lambda s_min: _lin(lambda r: 2, lambda r: 0, s_min)  # noqa: E731
    odd = lambda s_min: _lin(lambda r: 2, lambda r: 1, s_min)  # noqa: E731
    t = "10"
    rows += [
        Row("ChiA", "minus", "q=2s,s>=2", even(2), lambda r: 4,
            lambda r, q, s: f"11{t * (s - 2)}11011({t * (s - 2)}0111{'01' * (s - 2)}1000)^w",
            lambda r, q, s: _geo_rf((_xp(q) - ONE) * (_xp(q + 1) + ONE), X2M1), RG, False),
        Row("ChiA", "minus", "q=2s+1,s>=2", odd(2), lambda r: 5,
            lambda r, q, s: f"11{t * (s - 2)}11(00011{t * (s - 2)}00)^w",
            lambda r, q, s: _geo_rf(_xp(q) - ONE, X2M1), RG, False),
        Row("ChiA", "plus", "q=2s,s>=3", even(3), lambda r: 6,
            lambda r, q, s: f"11{t * (s - 2)}011100{t * (s - 3)}000010{'00' * (s - 2)}11",
            lambda r, q, s: _geo_rf((_xp(q - 2) + ONE) * (_xp(q + 2) - ONE), X2M1), FINITE_RG, False),
        Row("ChiA", "plus", "q=2s+1,s>=1", odd(1), lambda r: 3,
            lambda r, q, s: f"11{t * (s - 1)}01000{t * (s - 1)}0{'00' * s}11",
            lambda r, q, s: _geo_rf((_xp(q) + ONE) * (_xp(q + 1) - ONE), X2M1), FINITE_RG, False),
        Row("ChiB", "minus", "q=2s,s>=3", even(3), lambda r: 6,
            lambda r, q, s: f"11{t * (s - 3)}1100000{t * (s - 3)}001",
            lambda r, q, s: _geo_rf(_xp(q - 2) - ONE, X2M1), FINITE_RG, False),
        Row("ChiB", "minus", "q=2s+1,s>=3", odd(3), lambda r: 7,
            lambda r, q, s: f"11{t * (s - 2)}1101000{t * (s - 3)}011(1{'00' * (s - 1)}10)^w",
            lambda r, q, s: _geo_rf(_xp(2 * q - 2) - _xp(q - 1) - _xp(q - 3) + ONE, X2M1), RG, False),
        Row("ChiB", "plus", "q=2s,s>=3", even(3), lambda r: 6,
            lambda r, q, s: f"11{t * (s - 2)}0101(1{t * (s - 3)}011011{t * (s - 3)}010000100)^w",
            lambda r, q, s: _geo_rf(
                _xp(4) * (_xp(q - 1) + ONE) * IntPolynomial([1, -1, 1]) + _xp(2 * q + 4) - ONE, X2M1),
            RG, False),
        Row("ChiB", "plus", "q=2s+1,s>=1", odd(1), lambda r: 3,
            lambda r, q, s: f"11{t * (s - 1)}001",
            lambda r, q, s: _geo_rf(ONE, X2M1), FINITE_RG, False),
    ]
    return rows


ROWS: tuple[Row, ...] = tuple(_rows())


# family specs


@dataclass
class FamilySpec:
    name: str
    sign: str
    r: int | None
    q: int | None
    polynomial: IntPolynomial
    expected_word: DigitWord | None = None
    expected_pseudo_cofactor: RationalFunction | None = None
    restriction: str = ""
    expected_property: str | None = None
    s: int | None = None
    strict: bool = True

    @property
    def label(self) -> str:
        sg = {"plus": "+", "minus": "-"}.get(self.sign, "")
        if self.name in LIMIT_NAMES:
            return self.name if self.r is None else f"{self.name}(r={self.r})"
        if self.r is None:
            return f"{self.name}{sg}(q={self.q})"
        return f"{self.name}{sg}(r={self.r},q={self.q})"

    def defining_polynomial(self) -> IntPolynomial:
        """The family polynomial without its power of ``x``; pseudo-co-factors refer to it."""
        return strip_monomial(self.polynomial)[0]

    def minimal_polynomial(self) -> IntPolynomial:
        """The family polynomial with cyclotomic and ``x`` factors removed."""
        core, _ = strip_cyclotomic(self.polynomial)
        core, _ = strip_monomial(core)
        return core if core.leading > 0 else -core

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "sign": self.sign,
            "r": self.r,
            "q": self.q,
            "polynomial": str(self.polynomial),
            "expected_word": None if self.expected_word is None else str(self.expected_word),
            "expected_pseudo_cofactor": (
                None if self.expected_pseudo_cofactor is None else str(self.expected_pseudo_cofactor)
            ),
            "restriction": self.restriction,
        }


def _sign_word(sign) -> str:
    if sign is None or sign == "none":
        return "none"
    return "plus" if Sign.parse(sign) is Sign.PLUS else "minus"


def _canonical_name(name: str) -> str:
    key = _norm(name)
    for n in LIMIT_NAMES + FAMILY_NAMES:
        if n.lower() == key:
            return n
    raise UnsupportedParams(f"unknown family {name!r}")


def find_row(name: str, sign, r: int | None, q: int | None) -> tuple[Row, int] | None:
    name, sign = _canonical_name(name), _sign_word(sign)
    for row in ROWS:
        if row.name == name and row.sign == sign:
            s = row.params(r or 1, q if q is not None else 0)
            if s is not None:
                return row, s
    return None


def regular_pisot(name: str, sign=None, r: int | None = None, q: int | None = None) -> FamilySpec:
    """A limit point or family member with its tabulated data where available."""
    name = _canonical_name(name)
    if name in LIMIT_NAMES:
        if name != "Chi" and (r is None or r < 1):
            raise UnsupportedParams(f"{name} needs r >= 1")
        poly = limit_point(name, r or 1)
        row, s = find_row(name, None, r, None)
        word = DigitWord.parse(row.word(r or 1, 0, s))
        return FamilySpec(name, "none", None if name == "Chi" else r, None, poly, word,
                          row.pseudo_cofactor(r or 1, 0, s), row.restriction, row.prop)
    if sign is None:
        raise UnsupportedParams(f"{name} needs a sign")
    if name.startswith("Chi"):
        r = None
    elif r is None or r < 1:
        raise UnsupportedParams(f"{name} needs r >= 1")
    if q is None or q < 1:
        raise UnsupportedParams(f"{name} needs q >= 1")
    sg = _sign_word(sign)
    poly = family_polynomial(name, sg, r or 1, q)
    hit = find_row(name, sg, r, q)
    if hit is None:
        return FamilySpec(name, sg, r, q, poly)
    row, s = hit
    rr = r or 1
    return FamilySpec(name, sg, r, q, poly, DigitWord.parse(row.word(rr, q, s)),
                      row.pseudo_cofactor(rr, q, s), row.restriction, row.prop,
                      s if s else None, row.strict)


def catalog_specs(r_max: int = 4, q_extra: int = 6) -> list[FamilySpec]:
    """Every tabulated row for ``r <= r_max`` and ``q`` up to ``q_extra`` past its minimum.

    Rows parametrised by ``s`` always keep their first two members.
    """
    out: list[FamilySpec] = []
    for row in ROWS:
        if row.name in LIMIT_NAMES:
            rs = [None] if row.name == "Chi" else range(1, r_max + 1)
            for r in rs:
                out.append(regular_pisot(row.name, None, r))
            continue
        rs = [None] if row.name.startswith("Chi") else range(1, r_max + 1)
        for r in rs:
            q0 = row.q_min(r or 1)
            hits = 0
            q = q0
            while q <= q0 + q_extra or hits < 2:
                s = row.params(r or 1, q)
                if s is not None:
                    out.append(regular_pisot(row.name, row.sign, r, q))
                    hits += 1
                q += 1
    return out


# validation


@dataclass
class ValidationRow:
    spec: FamilySpec
    computed_word: DigitWord | None
    status: str  # pass | fail | disputed
    word_ok: bool
    property_ok: bool
    pseudo_cofactor_ok: bool
    pisot_ok: bool
    reversibly_greedy: bool | None
    computed_pseudo_cofactor: RationalFunction | None
    note: str = ""

    def as_dict(self) -> dict:
        d = self.spec.as_dict()
        d.update({
            "label": self.spec.label,
            "status": self.status,
            "computed_word": None if self.computed_word is None else str(self.computed_word),
            "word_ok": self.word_ok,
            "expected_property": self.spec.expected_property,
            "reversibly_greedy": self.reversibly_greedy,
            "property_ok": self.property_ok,
            "computed_pseudo_cofactor": (
                None if self.computed_pseudo_cofactor is None else str(self.computed_pseudo_cofactor)
            ),
            "pseudo_cofactor_ok": self.pseudo_cofactor_ok,
            "pisot_ok": self.pisot_ok,
            "note": self.note,
        })
        return d


@dataclass
class ValidationReport:
    rows: list[ValidationRow] = field(default_factory=list)

    def counts(self) -> dict:
        out = {"pass": 0, "fail": 0, "disputed": 0}
        for r in self.rows:
            out[r.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.rows)


def _bad_row(spec: FamilySpec, pisot_ok: bool, note: str) -> ValidationRow:
    status = "fail" if spec.strict else "disputed"
    return ValidationRow(spec, None, status, False, False, False, pisot_ok, None, None, note)


def validate_spec(spec: FamilySpec, max_digits: int | None = None) -> ValidationRow:
    core = spec.minimal_polynomial()
    if core.degree < 1:
        return _bad_row(spec, False, f"{spec.polynomial} has no non-cyclotomic factor")
    try:
        pisot_ok = is_pisot(core)[0]
        res = greedy_expand(isolate_root_in(core, 1, 2), max_digits)
    except BetaForgeError as exc:
        return _bad_row(spec, False, f"{type(exc).__name__}: {exc}")
    if res.status is Status.UNDETERMINED:
        return _bad_row(spec, pisot_ok, "expansion undetermined")
    word = res.word
    rg = check_reversibly_greedy(word)[0]
    prop = (FINITE_RG if word.is_finite() else RG) if rg else None
    pc = RationalFunction(res.companion, spec.defining_polynomial())
    word_ok = spec.expected_word is not None and word == spec.expected_word
    prop_ok = prop == spec.expected_property
    pc_ok = spec.expected_pseudo_cofactor is not None and pc == spec.expected_pseudo_cofactor
    good = word_ok and prop_ok and pc_ok and pisot_ok
    notes = []
    if not word_ok:
        notes.append(f"word: expected {spec.expected_word}, computed {word}")
    if not pc_ok:
        notes.append(f"pseudo-co-factor: expected {spec.expected_pseudo_cofactor}, computed {pc}")
    if not prop_ok:
        notes.append(f"property: expected {spec.expected_property}, computed {prop}")
    if not pisot_ok:
        notes.append("core is not Pisot")
    status = "pass" if good else ("fail" if spec.strict else "disputed")
    return ValidationRow(spec, word, status, word_ok, prop_ok, pc_ok, pisot_ok, rg, pc, "; ".join(notes))


def validate_catalog(r_max: int = 4, q_extra: int = 6, max_digits: int | None = None,
                     jobs: int = 1) -> ValidationReport:
    specs = catalog_specs(r_max, q_extra)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            rows = list(ex.map(lambda s: validate_spec(s, max_digits), specs))
    else:
        rows = [validate_spec(s, max_digits) for s in specs]
    return ValidationReport(rows)


def export_json(specs: Iterable[FamilySpec] | None = None, indent: int = 2) -> str:
    if specs is None:
        specs = catalog_specs()
    return json.dumps([s.as_dict() for s in specs], indent=indent)


# applicability survey


SURVEY_THEOREMS = (
    TheoremId.POS_PERIODIC,
    TheoremId.NEG_PERIODIC_EVEN,
    TheoremId.NEG_PERIODIC,
    TheoremId.NEG_FINITE_EVEN,
    TheoremId.NEG_FINITE,
)


@dataclass
class SurveyRow:
    label: str
    polynomial: IntPolynomial
    word: DigitWord | None
    reversibly_greedy: bool | None
    reciprocal_cofactor: bool | None
    applicable: dict[str, list[int]]

    def as_dict(self) -> dict:
        return {
            "label": self.label,
            "polynomial": str(self.polynomial),
            "word": None if self.word is None else str(self.word),
            "reversibly_greedy": self.reversibly_greedy,
            "reciprocal_cofactor": self.reciprocal_cofactor,
            "applicable": {k: v for k, v in self.applicable.items()},
        }


def survey_polynomial(label: str, M: IntPolynomial, max_digits: int | None = None,
                      theorems: Iterable[TheoremId] = SURVEY_THEOREMS) -> SurveyRow:
    """Which ``j`` admit a base case for each theorem, for the Pisot root of ``M``."""
    core, _ = strip_cyclotomic(M)
    core, _ = strip_monomial(core)
    core = core if core.leading > 0 else -core
    res = greedy_expand(isolate_root_in(core, 1, 2), max_digits)
    if res.status is Status.UNDETERMINED:
        return SurveyRow(label, core, None, None, None, {})
    word = res.word
    rg = check_reversibly_greedy(word)[0]
    q = res.cofactor
    recip = q is not None and q.reciprocal() == q
    applicable: dict[str, list[int]] = {}
    for tid in theorems:
        try:
            step = theorem_parts(tid, word).step
        except UnsupportedParams:
            continue
        js = []
        for j in range(1, step + 1):
            try:
                find_base_case(tid, core, j, word, max_digits=max_digits)
            except (BetaForgeError, ValueError):
                continue
            js.append(j)
        applicable[tid.value] = js
    return SurveyRow(label, core, word, rg, recip, applicable)


def survey_specs(specs: Iterable[FamilySpec], max_digits: int | None = None, jobs: int = 1) -> list[SurveyRow]:
    specs = list(specs)

    def one(spec: FamilySpec) -> SurveyRow:
        return survey_polynomial(spec.label, spec.polynomial, max_digits)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(one, specs))
    return [one(s) for s in specs]
