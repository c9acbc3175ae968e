"""Exact greedy beta-expansions for Pisot numbers and the Salem numbers built from them."""
from .algebraic import AlgebraicReal, isolate_root_in, refine, sign_at, sturm_count
from .classify import Classification, Kind, classify, count_roots_in_unit_disk, is_pisot, is_salem
from .errors import (
    BetaForgeError,
    HypothesisFailed,
    MOutOfRange,
    NoSalemRoot,
    PatternMismatch,
    Undetermined,
    UnsupportedParams,
)
from .expansion import ExpansionResult, Status, companion_poly, greedy_expand, quasi_greedy_expand
from .poly import IntPolynomial, RationalFunction, parse_polynomial, strip_cyclotomic
from .salem import (
    SalemFamilyMember,
    TheoremCase,
    TheoremId,
    build_family_member,
    extract_base_case,
    lambda_via_A,
    predict,
    predict_pos_finite,
    tau_via_B,
    tau_via_Z,
    verify,
)
from .words import DigitWord, check_parry, check_reversibly_greedy, parse_word

__version__ = "0.1.0"

__all__ = [
    "AlgebraicReal",
    "BetaForgeError",
    "Classification",
    "DigitWord",
    "ExpansionResult",
    "HypothesisFailed",
    "IntPolynomial",
    "Kind",
    "MOutOfRange",
    "NoSalemRoot",
    "PatternMismatch",
    "RationalFunction",
    "SalemFamilyMember",
    "Status",
    "TheoremCase",
    "TheoremId",
    "Undetermined",
    "UnsupportedParams",
    "build_family_member",
    "check_parry",
    "check_reversibly_greedy",
    "classify",
    "companion_poly",
    "count_roots_in_unit_disk",
    "extract_base_case",
    "greedy_expand",
    "is_pisot",
    "is_salem",
    "isolate_root_in",
    "lambda_via_A",
    "parse_polynomial",
    "parse_word",
    "predict",
    "predict_pos_finite",
    "quasi_greedy_expand",
    "refine",
    "sign_at",
    "strip_cyclotomic",
    "sturm_count",
    "tau_via_B",
    "tau_via_Z",
    "verify",
]
