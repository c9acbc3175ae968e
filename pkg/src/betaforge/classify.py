"""Exact Pisot / Salem classification of algebraic integers."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .algebraic import AlgebraicReal, cauchy_bound, isolate_root_in, sturm_count
from .errors import (
    NoDominantRoot,
    NotSquarefree,
    OnCircleOrDegenerate,
    TransformDegenerate,
    ZeroPolynomialError,
)
from .poly import ONE, X, IntPolynomial, div_exact, gcd, squarefree


class Kind(str, enum.Enum):
    PISOT = "Pisot"
    SALEM = "Salem"
    NEITHER = "Neither"


@dataclass
class Evidence:
    degree: int
    reciprocal: bool
    roots_above_one: int | None = None
    inside_unit_disk: int | None = None
    on_unit_circle: int | None = None
    note: str = ""
    # the cyclotomic-free core is assumed, not proven, irreducible
    irreducibility_verified: bool = False

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "reciprocal": self.reciprocal,
            "roots_above_one": self.roots_above_one,
            "inside_unit_disk": self.inside_unit_disk,
            "on_unit_circle": self.on_unit_circle,
            "note": self.note,
            "irreducibility_verified": self.irreducibility_verified,
        }


@dataclass
class Classification:
    kind: Kind
    dominant_root: AlgebraicReal | None
    evidence: Evidence = field(default=None)

    def __bool__(self) -> bool:
        return self.kind is not Kind.NEITHER


# unit-disk counting


def _chebyshev_like(n: int) -> list[IntPolynomial]:
    """``D_k(y)`` with ``x^k + x^-k = D_k(x + 1/x)``, for ``k <= n``."""
    out = [IntPolynomial([2]), X]
    for _ in range(2, n + 1):
        out.append(X * out[-1] - out[-2])
    return out[: n + 1]


def reciprocal_transform(p: IntPolynomial) -> IntPolynomial:
    """``G`` with ``p(x) = x^n G(x + 1/x)`` for a self-reciprocal ``p`` of degree ``2n``."""
    if p.is_zero() or p.reciprocal() != p or p.degree % 2:
        raise TransformDegenerate(f"{p} is not self-reciprocal of even degree")
    n = p.degree // 2
    d = _chebyshev_like(n)
    g = IntPolynomial([p[n]])
    for k in range(1, n + 1):
        g = g + d[k].scale(p[n + k])
    return g


def _inertia(m: list[list[Fraction]]) -> tuple[int, int, int]:
    """(positive, negative, zero) eigenvalue counts of a symmetric rational matrix."""
    m = [row[:] for row in m]
    pos = neg = 0
    size = len(m)
    active = list(range(size))
    while active:
        piv = next((i for i in active if m[i][i] != 0), None)
        if piv is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and m[i][j] != 0), None
            )
            if pair is None:
                return pos, neg, len(active)
            i, j = pair
            # congruence: add row/col j to row/col i, giving a nonzero diagonal
            for k in active:
                m[i][k] += m[j][k]
            for k in active:
                m[k][i] += m[k][j]
            piv = i
        d = m[piv][piv]
        if d > 0:
            pos += 1
        else:
            neg += 1
        rest = [i for i in active if i != piv]
        for i in rest:
            f = m[i][piv] / d
            if f:
                for k in rest:
                    m[i][k] -= f * m[piv][k]
        active = rest
    return pos, neg, 0


def _schur_cohn_inside(h: IntPolynomial) -> int:
    """Roots of ``h`` inside the unit disk; ``h`` must have no pair ``z, 1/z``."""
    n = h.degree
    if n <= 0:
        return 0
    a = h.coeffs
    # C = A^T A - B^T B with A, B upper-triangular Toeplitz in a_i and a_{n-i}
    cmat = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        for s in range(n):
            acc = 0
            for k in range(min(r, s) + 1):
                acc += a[r - k] * a[s - k] - a[n - r + k] * a[n - s + k]
            cmat[r][s] = Fraction(acc)
    pos, neg, zero = _inertia(cmat)
    if zero:
        raise OnCircleOrDegenerate(f"singular Schur-Cohn form for {h}")
    return neg


def count_roots_in_unit_disk(p: IntPolynomial) -> int:
    """Exact number of complex roots with modulus below one.

    The factor shared with the reciprocal polynomial holds every root pair
    ``z, 1/z`` and every unimodular root; it is handled through the
    ``x + 1/x`` transform, the remainder through the Schur-Cohn form.
    """
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if p.constant_term == 0:
        raise OnCircleOrDegenerate("p(0) = 0")
    if not squarefree(p):
        raise NotSquarefree(f"{p} is not squarefree")
    g = gcd(p, p.reciprocal())
    h = div_exact(p, g) if g.degree > 0 else p
    inside = 0
    if g.degree > 0:
        if g(1) == 0 or g(-1) == 0:
            raise OnCircleOrDegenerate(f"{p} has a root at +-1")
        gg = g.primitive_part()
        if gg.reciprocal() != gg:
            gg = -gg
        G = reciprocal_transform(gg)
        try:
            on = sturm_count(G, -2, 2)
        except Exception as exc:  # EndpointRoot means a root at +-1
            raise OnCircleOrDegenerate(str(exc)) from exc
        if on:
            raise OnCircleOrDegenerate(f"{p} has {2 * on} roots on the unit circle")
        inside += g.degree // 2
    return inside + _schur_cohn_inside(h)


def _roots_above_one(p: IntPolynomial) -> int:
    q = p
    if q(1) == 0:
        q = div_exact(q, X - ONE)
    if q.degree <= 0:
        return 0
    return sturm_count(q, 1, "+inf")


def dominant_root(p: IntPolynomial) -> AlgebraicReal:
    """The largest real root, which must exceed one."""
    if p.degree < 1:
        raise NoDominantRoot(f"{p} has no roots")
    q = p
    if q(1) == 0:
        q = div_exact(q, X - ONE)
    bound = cauchy_bound(p)
    if q.degree <= 0 or sturm_count(q, 1, bound) == 0:
        raise NoDominantRoot(f"{p} has no real root greater than 1")
    lo = Fraction(1)
    while sturm_count(q, lo, bound) > 1:
        # walk up until the top root is isolated
        mid = (lo + bound) / 2
        if q.sign_at_fraction(mid) == 0:
            mid += (bound - mid) / 3
        if sturm_count(q, mid, bound) >= 1:
            lo = mid
        else:
            bound = mid
    if q.sign_at_fraction(lo) == 0:
        lo = lo + (bound - lo) / 1024
    root = isolate_root_in(q, lo, bound)
    return AlgebraicReal(p, root.lo, root.hi) if q is not p else root


def _check_entry(p: IntPolynomial) -> None:
    if p.is_zero():
        raise ZeroPolynomialError("zero polynomial")
    if not squarefree(p):
        raise NotSquarefree(f"{p} is not squarefree")


def is_pisot(p: IntPolynomial) -> tuple[bool, Classification]:
    _check_entry(p)
    ev = Evidence(degree=p.degree, reciprocal=p.reciprocal() == p)
    if not p.is_monic() or p.constant_term == 0:
        ev.note = "not monic with nonzero constant term"
        return False, Classification(Kind.NEITHER, None, ev)
    ev.roots_above_one = _roots_above_one(p)
    root = dominant_root(p) if ev.roots_above_one else None
    try:
        ev.inside_unit_disk = count_roots_in_unit_disk(p)
    except OnCircleOrDegenerate as exc:
        ev.note = f"unit-disk count inapplicable: {exc}"
        return False, Classification(Kind.NEITHER, root, ev)
    ok = ev.roots_above_one == 1 and ev.inside_unit_disk == p.degree - 1 and p(1) != 0
    return ok, Classification(Kind.PISOT if ok else Kind.NEITHER, root, ev)


def is_salem(p: IntPolynomial) -> tuple[bool, Classification]:
    _check_entry(p)
    ev = Evidence(degree=p.degree, reciprocal=p.reciprocal() == p)
    if not p.is_monic() or p.degree < 4 or p.degree % 2 or not ev.reciprocal:
        ev.note = "not a self-reciprocal monic polynomial of even degree >= 4"
        return False, Classification(Kind.NEITHER, None, ev)
    G = reciprocal_transform(p)
    n = p.degree // 2
    if G(2) == 0 or G(-2) == 0:
        ev.note = "root at +-1"
        return False, Classification(Kind.NEITHER, None, ev)
    above = sturm_count(G, 2, "+inf")
    below = sturm_count(G, "-inf", -2)
    circle = sturm_count(G, -2, 2)
    ev.roots_above_one = above
    ev.on_unit_circle = 2 * circle
    ev.inside_unit_disk = above
    ok = above == 1 and below == 0 and circle == n - 1
    root = dominant_root(p) if above else None
    return ok, Classification(Kind.SALEM if ok else Kind.NEITHER, root, ev)


def classify(p: IntPolynomial) -> Classification:
    """Pisot, Salem or Neither, with the dominant root isolated above one."""
    _check_entry(p)
    if _roots_above_one(p) == 0:
        raise NoDominantRoot(f"{p} has no real root greater than 1")
    ok, c = is_pisot(p)
    if ok:
        return c
    ok, s = is_salem(p)
    if ok:
        return s
    if c.dominant_root is None:
        c.dominant_root = dominant_root(p)
    return c
