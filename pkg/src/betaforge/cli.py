"""Command-line entry point.

Exit codes: 0 ok, 2 input error, 3 undetermined, 4 pattern mismatch,
1 when ``verify`` finds a mismatch.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Sequence

from . import catalog, salem
from .algebraic import isolate_root_in, sturm_count
from .classify import classify
from .errors import (
    BetaForgeError,
    HypothesisFailed,
    NoSalemRoot,
    NotGreedy,
    PatternMismatch,
    Undetermined,
    UnsupportedParams,
)
from .expansion import companion_poly, default_max_digits, greedy_expand, quasi_greedy_expand
from .poly import IntPolynomial, parse_polynomial, squarefree, strip_cyclotomic, strip_monomial
from .words import check_parry, check_reversibly_greedy, parse_presentation

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_UNDETERMINED = 3
EXIT_PATTERN = 4


class InputError(Exception):
    pass


# argument parsing helpers


def parse_range(text: str) -> list[int]:
    """``4..11``, ``5`` or ``1,3,5..7``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        m = re.fullmatch(r"(-?\d+)\s*\.\.\s*(-?\d+)", part)
        if m:
            a, b = int(m.group(1)), int(m.group(2))
            if a > b:
                raise InputError(f"empty range {part!r}")
            out.extend(range(a, b + 1))
        elif re.fullmatch(r"-?\d+", part):
            out.append(int(part))
        else:
            raise InputError(f"bad range {text!r}")
    if not out:
        raise InputError("empty range")
    return out


_SPEC_RE = re.compile(r"^(?P<name>[A-Za-z_]+?)(?P<sign>[+-])?\s*(?:\((?P<args>[\d,\s]*)\))?$")


def resolve_polynomial(text: str) -> tuple[IntPolynomial, catalog.FamilySpec | None]:
    """A polynomial, or a catalog label such as ``PhiC-(2,5)``, ``Phi_r(2)`` or ``Chi``."""
    m = _SPEC_RE.match(text.strip())
    if m and not re.fullmatch(r"x", m.group("name")):
        name = m.group("name")
        try:
            canon = catalog._canonical_name(name)
        except UnsupportedParams:
            canon = None
        if canon is not None:
            args = [int(a) for a in (m.group("args") or "").split(",") if a.strip()]
            try:
                if canon in catalog.LIMIT_NAMES:
                    spec = catalog.regular_pisot(canon, None, args[0] if args else None)
                elif canon.startswith("Chi"):
                    spec = catalog.regular_pisot(canon, m.group("sign"), None, args[0] if args else None)
                else:
                    if len(args) != 2:
                        raise InputError(f"{canon} needs (r,q)")
                    spec = catalog.regular_pisot(canon, m.group("sign"), args[0], args[1])
            except UnsupportedParams as exc:
                raise InputError(str(exc)) from exc
            return spec.minimal_polynomial(), spec
    try:
        return parse_polynomial(text), None
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def base_in_unit_interval(p: IntPolynomial):
    """The root in (1, 2) of the non-cyclotomic part of ``p``."""
    core, _ = strip_cyclotomic(p)
    core, _ = strip_monomial(core)
    if core.leading < 0:
        core = -core
    if core.degree < 1 or not core.is_monic():
        raise InputError(f"{p} has no monic non-cyclotomic factor")
    if not squarefree(core):
        raise InputError(f"{core} is not squarefree")
    if core(1) == 0 or core(2) == 0 or sturm_count(core, 1, 2) != 1:
        raise InputError(f"{p} needs exactly one root in (1, 2)")
    return isolate_root_in(core, 1, 2)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def write_rows(rows: list[dict], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(rows, indent=2) + "\n")
        return
    if not rows:
        return
    rows = [{k: _cell(v) for k, v in r.items()} for r in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n",
                           quoting=csv.QUOTE_MINIMAL)
        w.writeheader()
        for r in rows:
            w.writerow(r)
        out.write(buf.getvalue())
        return
    keys = list(rows[0])
    widths = {k: max(len(k), *(len(str(r[k])) for r in rows)) for k in keys}
    out.write("  ".join(k.ljust(widths[k]) for k in keys).rstrip() + "\n")
    for r in rows:
        out.write("  ".join(r[k].ljust(widths[k]) for k in keys).rstrip() + "\n")


def _max_digits(args) -> int:
    value = args.max_digits if args.max_digits is not None else default_max_digits()
    if value < 1:
        raise InputError("--max-digits must be positive")
    return value


def _pmap(fn, items, jobs: int):
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# commands


def cmd_expand(args, out) -> int:
    p, _ = resolve_polynomial(args.poly)
    base = base_in_unit_interval(p)
    fn = quasi_greedy_expand if args.quasi else greedy_expand
    res = fn(base, _max_digits(args))
    rg = None
    if res.determined:
        try:
            rg = check_reversibly_greedy(res.word)[0]
        except NotGreedy:
            rg = False
    payload = {
        "poly": str(p),
        "word": res.word.as_dict() if res.determined else None,
        "status": res.status.value,
        "companion": None if res.companion is None else str(res.companion),
        "cofactor": None if res.cofactor is None else str(res.cofactor),
        "reversibly_greedy": rg,
    }
    if args.format == "json":
        payload["digits_computed"] = res.digits_computed
        if not res.determined:
            payload["prefix"] = res.word.preperiod[:64]
        out.write(json.dumps(payload, indent=2) + "\n")
    elif res.determined:
        out.write(f"{res.word} {res.status.value}\n")
        out.write(f"k={res.word.k} l={res.word.ell}\n")
        out.write(f"companion: {res.companion}\n")
        out.write(f"cofactor: {payload['cofactor']}\n")
        out.write(f"reversibly greedy: {str(rg).lower()}\n")
    else:
        out.write(f"Undetermined after {res.digits_computed} digits\n")
    return EXIT_OK if res.determined else EXIT_UNDETERMINED


def cmd_classify(args, out) -> int:
    p, _ = resolve_polynomial(args.poly)
    c = classify(p)
    payload = {
        "poly": str(p),
        "kind": c.kind.value,
        "dominant_root": None if c.dominant_root is None else f"{c.dominant_root.to_float():.15g}",
        "evidence": c.evidence.as_dict(),
    }
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(c.kind.value + "\n")
        out.write(json.dumps(payload["evidence"], sort_keys=True) + "\n")
    return EXIT_OK


def cmd_companion(args, out) -> int:
    w = parse_presentation(args.word)
    comp = companion_poly(w)
    payload = {"word": w.presentation(), "canonical": str(w), "companion": str(comp)}
    if w.digits(1) == "1":
        payload["parry"] = check_parry(w)[0]
    if args.minpoly:
        M, _ = resolve_polynomial(args.minpoly)
        try:
            q = comp // M
            payload["cofactor"] = str(q)
            payload["reciprocal_cofactor"] = q.reciprocal() == q
        except ArithmeticError:
            payload["cofactor"] = None
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK


def _family_row(M: IntPolynomial, sign, m: int, max_digits: int) -> dict:
    row = {"m": m, "sign": salem.Sign.parse(sign).value, "raw": str(salem.family_polynomial(M, sign, m)),
           "cyclotomic": "", "core": "", "salem": "", "status": "", "word": "", "digits": ""}
    try:
        member = salem.build_family_member(M, sign, m, check_pisot=False)
    except NoSalemRoot:
        row["status"] = "NoSalemRoot"
        return row
    row["cyclotomic"] = member.factor_string()
    row["core"] = str(member.core)
    row["salem"] = member.is_salem
    res = salem.expand_member(member, max_digits)
    row["status"] = res.status.value
    row["word"] = str(res.word) if res.determined else ""
    row["digits"] = res.digits_computed
    return row


def cmd_family(args, out) -> int:
    M, _ = resolve_polynomial(args.poly)
    ms = parse_range(args.range)
    sign = salem.Sign.parse(args.sign)
    md = _max_digits(args)
    rows = _pmap(lambda m: _family_row(M, sign, m, md), ms, args.jobs)
    if args.brief:
        rows = [{"m": r["m"], "status": r["status"], "word": r["word"]} for r in rows]
    write_rows(rows, args.format, out)
    return EXIT_OK


def _base_case(args, M):
    tid = salem.TheoremId.parse(args.theorem)
    word = parse_presentation(args.word) if args.word else None
    return salem.find_base_case(tid, M, args.j, word, args.relaxed, _max_digits(args), args.base_n)


def cmd_predict(args, out) -> int:
    M, _ = resolve_polynomial(args.poly)
    ns = parse_range(args.n)
    tid = salem.TheoremId.parse(args.theorem)
    if tid is salem.TheoremId.POS_FINITE:
        word = parse_presentation(args.word) if args.word else salem.pisot_expansion(M, _max_digits(args))
        rows = []
        for m in ns:
            w = salem.predict_pos_finite(word, m)
            rows.append({"m": m, "predicted": str(w), "presentation": w.presentation()})
        write_rows(rows, args.format, out)
        return EXIT_OK
    case = _base_case(args, M)
    rows = []
    for n in ns:
        w = salem.predict(case, n)
        rows.append({"n": n, "m": case.member_index(n), "predicted": str(w),
                     "presentation": w.presentation()})
    if args.format == "text":
        out.write(f"{case.theorem_id.value} j={case.j} kappa={case.kappa} gamma={case.gamma} "
                  f"middle={case.tau_or_lambda or '(empty)'} base_m={case.base_m}\n")
    write_rows(rows, args.format, out)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    M, _ = resolve_polynomial(args.poly)
    ns = parse_range(args.n)
    md = _max_digits(args)
    tid = salem.TheoremId.parse(args.theorem)
    if tid is salem.TheoremId.POS_FINITE:
        word = parse_presentation(args.word) if args.word else salem.pisot_expansion(M, md)
        rows = []
        for m in ns:
            pred = salem.predict_pos_finite(word, m)
            res = salem.expand_member(salem.build_family_member(M, "+", m, check_pisot=False,
                                                                classify_core=False), md)
            status = "undetermined" if not res.determined else ("match" if res.word == pred else "mismatch")
            rows.append({"m": m, "predicted": str(pred),
                         "computed": str(res.word) if res.determined else "", "status": status})
        statuses = [r["status"] for r in rows]
    else:
        case = _base_case(args, M)
        report = salem.verify(case, ns, md, args.jobs)
        rows = []
        for r in report.rows:
            d = r.as_dict()
            d["companion_identity"] = salem.companion_identity_holds(case, r.n)
            rows.append(d)
        statuses = [r.status for r in report.rows]
        if args.format == "text":
            out.write(f"{case.theorem_id.value} j={case.j} middle={case.tau_or_lambda or '(empty)'}\n")
    write_rows(rows, args.format, out)
    if any(s in ("mismatch", "error") for s in statuses):
        return EXIT_MISMATCH
    if any(s == "undetermined" for s in statuses):
        return EXIT_UNDETERMINED
    return EXIT_OK


def cmd_survey(args, out) -> int:
    md = _max_digits(args)
    name = catalog._canonical_name(args.family)
    specs: list[catalog.FamilySpec] = []
    if name in catalog.LIMIT_NAMES:
        rs = [None] if name == "Chi" else parse_range(args.r)
        specs = [catalog.regular_pisot(name, None, r) for r in rs]
    else:
        if args.sign is None:
            raise InputError(f"{name} needs --sign")
        rs = [None] if name.startswith("Chi") else parse_range(args.r)
        for r in rs:
            if args.q:
                qs = parse_range(args.q)
            else:
                hit = [row for row in catalog.ROWS if row.name == name
                       and row.sign == catalog._sign_word(args.sign)]
                q0 = min(row.q_min(r or 1) for row in hit) if hit else 1
                qs = range(q0, q0 + args.q_extra + 1)
            specs.extend(catalog.regular_pisot(name, args.sign, r, q) for q in qs)
    rows = catalog.survey_specs(specs, md, args.jobs)
    flat = []
    counts: dict[str, int] = {}
    for row in rows:
        d = {"label": row.label, "polynomial": str(row.polynomial),
             "word": "" if row.word is None else str(row.word),
             "reversibly_greedy": row.reversibly_greedy,
             "reciprocal_cofactor": row.reciprocal_cofactor}
        for tid in catalog.SURVEY_THEOREMS:
            js = row.applicable.get(tid.value)
            d[tid.value] = "" if js is None else " ".join(map(str, js))
            if js:
                counts[tid.value] = counts.get(tid.value, 0) + 1
        flat.append(d)
    if args.format == "json":
        out.write(json.dumps({"rows": flat, "counts": counts, "instances": len(flat)}, indent=2) + "\n")
    else:
        write_rows(flat, args.format, out)
        summary = ", ".join(f"{k}={v}" for k, v in sorted(counts.items())) or "none"
        print(f"instances={len(flat)} applicable: {summary}", file=sys.stderr)
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    if args.action == "export":
        if args.format != "json":
            raise InputError("catalog export supports --format json only")
        out.write(catalog.export_json(catalog.catalog_specs(args.r_max, args.q_extra)) + "\n")
        return EXIT_OK
    report = catalog.validate_catalog(args.r_max, args.q_extra, _max_digits(args), args.jobs)
    rows = [r.as_dict() for r in report.rows]
    if args.format == "text":
        for r in report.rows:
            line = f"{r.status:8s} {r.spec.label}"
            out.write(line + (f"  {r.note}" if r.note else "") + "\n")
        c = report.counts()
        out.write(f"pass={c['pass']} fail={c['fail']} disputed={c['disputed']}\n")
    else:
        write_rows(rows, args.format, out)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="betaforge", description="Greedy beta-expansions for Pisot and Salem numbers.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--max-digits", type=int, default=None)

    p = sub.add_parser("expand", help="greedy expansion of 1 in the root in (1, 2)")
    p.add_argument("poly")
    p.add_argument("--quasi", action="store_true", help="quasi-greedy expansion")
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("classify", help="Pisot, Salem or Neither")
    p.add_argument("poly")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("companion", help="companion polynomial of a word")
    p.add_argument("word")
    p.add_argument("--minpoly")
    common(p)
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("family", help="expansions along M x^m +- M*")
    p.add_argument("poly")
    p.add_argument("sign")
    p.add_argument("range")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--brief", action="store_true", help="only m, status and word")
    common(p, ("text", "json", "csv"))
    p.set_defaults(func=cmd_family)

    commands = (
        ("predict", cmd_predict, "template words from a base case"),
        ("verify", cmd_verify, "compare predicted words with direct expansion"),
    )
    for name, func, help_text in commands:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("poly")
        p.add_argument("theorem", help=", ".join(t.value for t in salem.TheoremId))
        p.add_argument("j", type=int, nargs="?", default=None)
        p.add_argument("--n", default="1..4", help="n range, or m range for PosFinite21")
        p.add_argument("--word", help="Pisot word, default: computed")
        p.add_argument("--base-n", type=int, default=1, help="n of the member used as base case")
        p.add_argument("--relaxed", action="store_true", help="skip the reversibly greedy check for NegFinite38")
        p.add_argument("--jobs", type=int, default=1)
        common(p, ("text", "json", "csv"))
        p.set_defaults(func=func)

    p = sub.add_parser("survey", help="theorem applicability over a family grid")
    p.add_argument("family")
    p.add_argument("--sign")
    p.add_argument("--r", default="1..3")
    p.add_argument("--q", help="explicit q range")
    p.add_argument("--q-extra", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    common(p, ("csv", "json", "text"))
    p.set_defaults(func=cmd_survey)

    p = sub.add_parser("catalog", help="export or validate the built-in catalog")
    p.add_argument("action", choices=("export", "validate"))
    p.add_argument("--r-max", type=int, default=4)
    p.add_argument("--q-extra", type=int, default=6)
    p.add_argument("--jobs", type=int, default=1)
    common(p, ("json", "text", "csv"))
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if getattr(args, "theorem", None) is not None and args.j is None:
            if salem.TheoremId.parse(args.theorem) is not salem.TheoremId.POS_FINITE:
                raise InputError("j is required for this theorem")
        return args.func(args, out)
    except Undetermined as exc:
        print(f"undetermined: {exc}", file=sys.stderr)
        return EXIT_UNDETERMINED
    except PatternMismatch as exc:
        print(f"pattern mismatch: {exc}", file=sys.stderr)
        return EXIT_PATTERN
    except (InputError, HypothesisFailed, BetaForgeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
