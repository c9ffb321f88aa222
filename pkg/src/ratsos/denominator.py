"""Rational denominators for the norm-form counterexamples.

For an isotropic vector (a_1, ..., a_r) over K, i.e. sum a_v^2 = 0, the
forms g_v = tr(a_v f/l) have sum g_v^2 divisible by f.  The quotient h has
degree d - 2 and f h = sum g_v^2 is a sum of squares over Q.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement, product
from math import gcd
from typing import Iterator, Mapping, Sequence

import mpmath

from .certificate import SOSCertificate, rational_sqrt, verify_sos
from .counterexample import EvidenceBundle, certify_not_sos, vanishing_dimension
from .errors import (
    EvidenceMissing,
    FieldMismatch,
    IsotropicInvalid,
    NotDivisible,
    NotFoundWithinBound,
    NotTotallyImaginary,
    RamifiedPrime,
)
from .counterexample import factor_degree_pattern
from .numberfield import FieldElement, NumberField, make_field, norm
from .polyring import SparsePoly, exact_divide, norm_form, trace_poly

SQRT_DIGITS = 60
DEFAULT_CANDIDATE_CAP = 20_000


@dataclass(frozen=True)
class IsotropicVector:
    field: NumberField
    entries: tuple[FieldElement, ...]

    def __post_init__(self):
        entries = tuple(self.field(a) for a in self.entries)
        object.__setattr__(self, "entries", entries)

    def square_sum(self) -> FieldElement:
        return sum((a * a for a in self.entries), self.field.zero)

    def is_valid(self) -> bool:
        return bool(self.entries) and any(self.entries) and self.square_sum() == 0

    def normalized(self) -> "IsotropicVector":
        """Rotate a nonzero entry to the front and scale it to 1."""
        k = next((i for i, a in enumerate(self.entries) if a), None)
        if k is None:
            return self
        rotated = self.entries[k:] + self.entries[:k]
        inv = rotated[0].inverse()
        return IsotropicVector(self.field, tuple(a * inv for a in rotated))

    def to_json(self) -> dict:
        return {"field": self.field.to_json(), "entries": [a.to_json() for a in self.entries]}

    @staticmethod
    def from_json(data: Mapping) -> "IsotropicVector":
        K = make_field([int(c) for c in data["field"]])
        return IsotropicVector(
            K, tuple(FieldElement(K, tuple(Fraction(c) for c in e)) for e in data["entries"])
        )


# --- the forms ---------------------------------------------------------------------

@lru_cache(maxsize=64)
def _norm_and_quotient(K: NumberField, l: SparsePoly) -> tuple[SparsePoly, SparsePoly]:
    lk = l.over(K)
    f = norm_form(K, lk)
    return f, exact_divide(f.over(K), lk)


def trace_quotient_form(K: NumberField, l: SparsePoly, a) -> SparsePoly:
    """tr(a * f/l) taken coefficientwise; a rational form of degree d - 1."""
    _, quotient = _norm_and_quotient(K, l)
    return trace_poly(quotient * K(a))


@dataclass(frozen=True)
class DenominatorCertificate:
    """f h = sum g_v^2 with g_v = tr(a_v f/l)."""

    f: SparsePoly
    h: SparsePoly
    g_forms: tuple[SparsePoly, ...]
    isotropic: IsotropicVector
    linear_form: SparsePoly

    def sos_certificate(self) -> SOSCertificate:
        return SOSCertificate(self.f * self.h, tuple((Fraction(1), g) for g in self.g_forms))

    def verify(self) -> bool:
        """Re-derive everything from (field, linear form, isotropic vector)."""
        K = self.isotropic.field
        if not self.isotropic.is_valid():
            return False
        f, _ = _norm_and_quotient(K, self.linear_form)
        if f != self.f or len(self.g_forms) != len(self.isotropic.entries):
            return False
        for g, a in zip(self.g_forms, self.isotropic.entries):
            if g != trace_quotient_form(K, self.linear_form, a):
                return False
        if not self.h.is_homogeneous() or self.h.degree() != K.degree - 2:
            return False
        return verify_sos(self.sos_certificate())

    def to_json(self) -> dict:
        return {
            "kind": "denominator",
            "f": self.f.to_json(),
            "h": self.h.to_json(),
            "g_forms": [g.to_json() for g in self.g_forms],
            "isotropic": self.isotropic.to_json(),
            "linear_form": self.linear_form.to_json(),
        }

    @staticmethod
    def from_json(data: Mapping) -> "DenominatorCertificate":
        return DenominatorCertificate(
            SparsePoly.from_json(data["f"]),
            SparsePoly.from_json(data["h"]),
            tuple(SparsePoly.from_json(g) for g in data["g_forms"]),
            IsotropicVector.from_json(data["isotropic"]),
            SparsePoly.from_json(data["linear_form"]),
        )


def build_denominator(K: NumberField, l: SparsePoly, v: IsotropicVector) -> DenominatorCertificate:
    if v.field != K:
        raise FieldMismatch("isotropic vector lives over a different field")
    if not v.is_valid():
        raise IsotropicInvalid("the squares of the entries do not sum to zero")
    f, _ = _norm_and_quotient(K, l)
    gs = tuple(trace_quotient_form(K, l, a) for a in v.entries)
    total = SparsePoly.zero(l.nvars)
    for g in gs:
        total = total + g * g
    try:
        h = exact_divide(total, f)
    except NotDivisible as exc:  # impossible for an isotropic vector
        raise AssertionError(f"sum of squares not divisible by f: {exc}") from exc
    if not h.is_homogeneous() or h.degree() != K.degree - 2:
        raise AssertionError(f"denominator has unexpected degree {h.degree()}")
    return DenominatorCertificate(f, h, gs, v, l)


# --- isotropic search -------------------------------------------------------------

def _rationals_up_to(h: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for q in range(1, h + 1):
        for p in range(1, h + 1):
            if gcd(p, q) == 1:
                vals.add(Fraction(p, q))
                vals.add(Fraction(-p, q))
    return sorted(vals)


def _height(x: Fraction) -> int:
    return max(abs(x.numerator), x.denominator) if x else 0


def element_height(a: FieldElement) -> int:
    return max(_height(c) for c in a.coords)


def _leading_sign(a: FieldElement) -> int:
    last = next((c for c in reversed(a.coords) if c), 0)
    return (last > 0) - (last < 0)


def _canonical_sign(a: FieldElement) -> FieldElement:
    return -a if _leading_sign(a) < 0 else a


def elements_by_height(K: NumberField, bound: int, up_to_sign: bool = False) -> Iterator[FieldElement]:
    """Nonzero elements with coordinate height <= bound, by increasing height
    and lexicographically within a height.  With ``up_to_sign`` only elements
    whose leading coordinate is positive are produced."""
    for h in range(1, bound + 1):
        vals = _rationals_up_to(h)
        for coords in product(vals, repeat=K.degree):
            if max(_height(c) for c in coords) == h:
                a = FieldElement(K, coords)
                if not up_to_sign or _leading_sign(a) > 0:
                    yield a


@lru_cache(maxsize=32)
def _complex_roots(K: NumberField):
    with mpmath.workdps(SQRT_DIGITS):
        return tuple(mpmath.polyroots(list(reversed(K.minpoly)), maxsteps=200, extraprec=200))


def field_sqrt(c: FieldElement) -> FieldElement | None:
    """An exact square root of c in its field, or None.

    Candidates come from interpolating numerical square roots at the
    complex embeddings; only an exact check b*b == c is trusted.
    """
    K = c.field
    if c.is_zero():
        return K.zero
    if rational_sqrt(norm(c)) is None:
        return None
    roots = _complex_roots(K)
    d = K.degree
    with mpmath.workdps(SQRT_DIGITS):
        vals = []
        for r in roots:
            v = mpmath.mpf(0)
            for x in reversed(c.coords):
                v = v * r + mpmath.mpf(x.numerator) / x.denominator
            vals.append(mpmath.sqrt(v))
        vand = mpmath.matrix([[r**j for j in range(d)] for r in roots])
        for signs in product((1, -1), repeat=d - 1):
            rhs = mpmath.matrix([vals[0]] + [s * v for s, v in zip(signs, vals[1:])])
            try:
                sol = mpmath.lu_solve(vand, rhs)
            except ZeroDivisionError:
                return None
            if any(abs(mpmath.im(x)) > mpmath.mpf(10) ** (-SQRT_DIGITS // 3) for x in sol):
                continue
            coords = tuple(
                Fraction(mpmath.nstr(mpmath.re(x), SQRT_DIGITS - 5)).limit_denominator(10**15)
                for x in sol
            )
            b = FieldElement(K, coords)
            if b * b == c:
                return b
    return None


def find_isotropic(
    K: NumberField, height_bound: int, r_max: int = 5, candidate_cap: int = DEFAULT_CANDIDATE_CAP
) -> IsotropicVector:
    """Search (1, i), then (1, a, b), then (1, a, b, c, e) with sum of squares 0.

    a (and b, c in the five-term case) run over elements of coordinate
    height <= height_bound; the last entry is an exact square root.
    """
    if K.signature != 0:
        raise NotTotallyImaginary(f"{K!r} has {K.signature} real embeddings")
    one = K.one

    def last_entry(c: FieldElement) -> FieldElement | None:
        root = field_sqrt(c)
        if root is None or element_height(root) > height_bound:
            return None
        return _canonical_sign(root)

    if height_bound >= 1:
        i = last_entry(-one)
        if i is not None:
            return IsotropicVector(K, (one, i))
    seen = 0
    for a in elements_by_height(K, height_bound, up_to_sign=True):
        seen += 1
        if seen > candidate_cap:
            raise NotFoundWithinBound(f"candidate cap {candidate_cap} reached")
        b = last_entry(-one - a * a)
        if b is not None:
            return IsotropicVector(K, (one, a, b))
    if r_max >= 5:
        pool = [K.zero] + list(elements_by_height(K, height_bound, up_to_sign=True))
        for a, b, c in combinations_with_replacement(pool, 3):
            seen += 1
            if seen > candidate_cap:
                raise NotFoundWithinBound(f"candidate cap {candidate_cap} reached")
            e = last_entry(-one - a * a - b * b - c * c)
            if e is not None:
                return IsotropicVector(K, (one, a, b, c, e))
    raise NotFoundWithinBound(f"no isotropic vector with entries of height <= {height_bound}")


def two_is_inert(K: NumberField) -> bool:
    """Informational only: whether the minimal polynomial stays irreducible mod 2."""
    try:
        return factor_degree_pattern(K.minpoly, 2).degrees == (K.degree,)
    except RamifiedPrime:
        return False


# --- minimality -----------------------------------------------------------------

@dataclass(frozen=True)
class MinimalityReport:
    field: NumberField
    min_degree: int
    vanishing_dims: Mapping[int, int]
    transitivity: str

    def to_json(self) -> dict:
        return {
            "min_degree": self.min_degree,
            "vanishing_dims": {str(k): v for k, v in sorted(self.vanishing_dims.items())},
            "transitivity": self.transitivity,
            "statement": f"every h with f*h a sum of squares over Q has degree >= {self.min_degree}",
        }


def minimality_report(
    K: NumberField, l: SparsePoly, evidence: EvidenceBundle | None = None
) -> MinimalityReport:
    """deg h >= d - 2: each g_v vanishes on all pairwise intersections, and no
    nonzero rational form of degree <= d - 2 does."""
    if evidence is None:
        evidence = certify_not_sos(K, l)
    if evidence.conclusion != "NotSOSOverQ" or evidence.field != K:
        raise EvidenceMissing("no non-SOS evidence for this field and linear form")
    d = K.degree
    dims = {}
    for D in range(1, d - 1):
        dims[D] = evidence.vanishing_dims.get(D)
        if dims[D] is None:
            dims[D] = vanishing_dimension(K, l, D, general_position=True)
    if any(dims.values()):
        raise EvidenceMissing(f"nonzero vanishing dimension below degree {d - 1}: {dims}")
    return MinimalityReport(K, d - 2, dims, evidence.transitivity.kind)


def square_count_note(v: IsotropicVector) -> int:
    """Number of squares in f h = sum g_v^2, i.e. the length of v."""
    return len(v.entries)
