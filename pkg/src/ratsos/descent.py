"""Descent of sums of squares from a totally real field K down to Q.

If f = sum_j g_j**2 with g_j over K and f rational, write each coefficient
of g_j in a basis y_1..y_d of K that diagonalizes the trace form,
g_j = sum_i y_i x_ij with x_ij rational.  Taking traces,

    d f = tr(f) = sum_j tr(g_j**2) = sum_i a_i sum_j x_ij**2,

where a_i = tr(y_i**2) > 0.  The weights a_i / d are then turned into
pure squares with four-square composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from .certificate import SOSCertificate, to_pure, verify_sos
from .errors import (
    DomainMismatch,
    InvalidInputCertificate,
    NotTotallyReal,
    RationalityFailure,
    TargetNotRational,
)
from .numberfield import NumberField, diagonalize_trace_form
from .polyring import SparsePoly, trace_poly
from .squares import FourSquare, euler_compose, euler_compose_forms, four_square_decompose

__all__ = [
    "FourSquare",
    "DescentResult",
    "four_square_decompose",
    "euler_compose",
    "euler_compose_forms",
    "descend_sos",
    "descend_quadratic_module",
    "square_count_bound",
]


def square_count_bound(d: int, m: int, pk: int = 4) -> int:
    """Number of squares over Q guaranteed after descending m squares over K.

    pk is the Pythagoras number of the base field (4 for Q).
    """
    if min(d, m, pk) < 1:
        raise ValueError("d, m and pk must be positive")
    if d == 1:
        return m
    if pk == 4:
        return m + 4 * (d - 1) * ceil(m / 4)
    low = min(pk, m)
    block = 2 if low <= 2 else 4 if low <= 4 else 8
    return block * d * ceil(pk / block) * ceil(m / block)


@dataclass(frozen=True)
class DescentResult:
    weighted: SOSCertificate
    pure: SOSCertificate
    square_count: int
    bound: int
    input_squares: int = 0
    field_degree: int = 1

    def __post_init__(self):
        if self.square_count > self.bound:
            raise AssertionError(f"{self.square_count} squares exceed the bound {self.bound}")

    def to_json(self) -> dict:
        return {
            "kind": "descent",
            "weighted": self.weighted.to_json(),
            "pure": self.pure.to_json(),
            "square_count": self.square_count,
            "bound": self.bound,
            "input_squares": self.input_squares,
            "field_degree": self.field_degree,
        }

    @staticmethod
    def from_json(data) -> "DescentResult":
        return DescentResult(
            SOSCertificate.from_json(data["weighted"]),
            SOSCertificate.from_json(data["pure"]),
            int(data["square_count"]),
            int(data["bound"]),
            int(data.get("input_squares", 0)),
            int(data.get("field_degree", 1)),
        )

    def recheck(self) -> bool:
        """Both certificates verify for one target and the count fits the bound."""
        return (
            self.weighted.target == self.pure.target
            and self.weighted.domain is None
            and all(w == 1 for w in self.pure.weights)
            and len(self.pure) == self.square_count <= self.bound
            and self.bound == square_count_bound(self.field_degree, max(self.input_squares, 1), 4)
            and verify_sos(self.weighted)
            and verify_sos(self.pure)
        )


def _coordinate_forms(K: NumberField, g: SparsePoly) -> list[SparsePoly]:
    """Rational x_1..x_d with g = sum_i y_i x_i in the trace-form basis."""
    diag = diagonalize_trace_form(K)
    parts: list[dict] = [{} for _ in range(K.degree)]
    for e, c in g.terms.items():
        for i, x in enumerate(diag.coordinates(c)):
            if x:
                parts[i][e] = x
    return [SparsePoly(g.nvars, p) for p in parts]


def _pure_squares_of(K: NumberField, g_forms: Sequence[SparsePoly]) -> tuple[list, list]:
    """Weighted summands (a_i/d, x_ij) and the composed pure forms."""
    diag = diagonalize_trace_form(K)
    d = K.degree
    coords = [_coordinate_forms(K, g) for g in g_forms]
    weighted, pure = [], []
    for i, a in enumerate(diag.diagonal):
        c = Fraction(a) / d
        column = [row[i] for row in coords if not row[i].is_zero()]
        weighted.extend((c, x) for x in column)
        if not column:
            continue
        if i == 0:
            pure.extend(column)
            continue
        fs = four_square_decompose(c)
        zero = SparsePoly.zero(column[0].nvars)
        for start in range(0, len(column), 4):
            block = column[start:start + 4]
            block += [zero] * (4 - len(block))
            pure.extend(q for q in euler_compose_forms(fs, block) if not q.is_zero())
    return weighted, pure


def _normalize_input(K: NumberField, cert: SOSCertificate) -> SOSCertificate:
    if not K.is_totally_real:
        raise NotTotallyReal(f"{K!r} has only {K.signature} real embeddings")
    if cert.domain is None:
        cert = SOSCertificate(cert.target.over(K), tuple((w, p.over(K)) for w, p in cert.summands))
    elif cert.domain != K:
        raise InvalidInputCertificate("certificate lives over a different field")
    try:
        ok = verify_sos(cert)
    except DomainMismatch as exc:
        raise InvalidInputCertificate(str(exc)) from exc
    if not ok:
        raise InvalidInputCertificate("input certificate does not verify over K")
    return to_pure(cert)


def descend_sos(K: NumberField, cert: SOSCertificate) -> DescentResult:
    """Turn an SOS certificate over totally real K for a rational f into ones over Q."""
    pure_in = _normalize_input(K, cert)
    if not pure_in.target.is_rational():
        raise TargetNotRational("target has irrational coefficients")
    f = pure_in.target.to_rational()
    weighted, pure = _pure_squares_of(K, pure_in.forms)
    m = len(pure_in)
    w_cert = SOSCertificate(f, tuple(weighted))
    p_cert = SOSCertificate(f, tuple((Fraction(1), q) for q in pure))
    bound = square_count_bound(K.degree, max(m, 1), 4)
    return DescentResult(w_cert, p_cert, len(pure), bound, m, K.degree)


def descend_quadratic_module(
    K: NumberField, generators: Sequence[SparsePoly], coeffs: Sequence[SOSCertificate]
) -> list[SOSCertificate]:
    """Rational SOS multipliers s_i with sum s_i h_i = sum t_i h_i.

    Each s_i is tr(t_i)/d, written as a weighted sum of rational squares.
    """
    if len(generators) != len(coeffs):
        raise ValueError("need one multiplier per generator")
    if not K.is_totally_real:
        raise NotTotallyReal(f"{K!r} has only {K.signature} real embeddings")
    pures = [_normalize_input(K, t) for t in coeffs]
    nvars = generators[0].nvars if generators else 0
    combo = SparsePoly.zero(nvars, K)
    for h, t in zip(generators, pures):
        if h.domain is not None:
            raise DomainMismatch("generators must have rational coefficients")
        combo = combo + t.target * h.over(K)
    if not combo.is_rational():
        raise RationalityFailure("sum of t_i h_i has irrational coefficients")
    out = []
    for t in pures:
        weighted, _ = _pure_squares_of(K, t.forms)
        target = trace_poly(t.target) * Fraction(1, K.degree)
        out.append(SOSCertificate(target, tuple(weighted)))
    return out
