"""Norm forms that are sums of squares over R but not over Q, with evidence.

Given a totally imaginary field K of even degree d >= 4 and a linear form l
over K, f = N(l) is the product of the d conjugates of l.  The evidence
that f is not a sum of squares of rational forms has four parts: K has no
real embedding, the conjugate hyperplanes are in general position, the
Galois action is transitive enough on pairs of conjugates, and no nonzero
rational form of degree d/2 vanishes on all pairwise intersections of the
conjugate hyperplanes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from . import finitefield, linalg, upoly
from .complexroots import PRECISIONS, Ball, certified_roots
from .errors import (
    DegreeTooSmall,
    GeneralPositionUnverified,
    NotInvolution,
    NotSquarefree,
    OddDegree,
    PrecisionExhausted,
    RamifiedPrime,
    RatSOSError,
    TauHasFixedPoint,
    TooFewVariables,
    BudgetExhausted,
    ZeroPivotCoefficient,
)
from .numberfield import (
    FieldElement,
    NumberField,
    complex_embedding_balls,
    discriminant,
    make_field,
)
from .polyring import (
    SparsePoly,
    divide_with_remainder,
    exact_divide,
    linear_coeffs,
    norm_form,
    restrict_to_hyperplane,
)

DEFAULT_PRIME_BUDGET = 200


# --- factor patterns ------------------------------------------------------------

@dataclass(frozen=True)
class FactorPattern:
    prime: int
    degrees: tuple[int, ...]

    def to_json(self) -> dict:
        return {"prime": self.prime, "degrees": list(self.degrees)}


def factor_degree_pattern(m: Sequence[int], p: int) -> FactorPattern:
    """Degrees of the irreducible factors of m modulo an unramified prime p."""
    m = [int(c) for c in m]
    if not finitefield.is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m[-1] % p == 0:
        raise RamifiedPrime(f"leading coefficient vanishes mod {p}")
    disc = discriminant(m) if m[-1] == 1 else None
    mp = finitefield.reduce_mod(m, p)
    if (disc is not None and disc % p == 0) or not finitefield.is_squarefree(mp, p):
        raise RamifiedPrime(f"{p} divides the discriminant of {m}")
    return FactorPattern(p, finitefield.degree_pattern(mp, p))


def unramified_patterns(m: Sequence[int], bound: int) -> Iterable[FactorPattern]:
    disc = discriminant(m)
    for p in finitefield.primes_up_to(bound):
        if disc % p:
            yield factor_degree_pattern(m, p)


# --- transitivity ---------------------------------------------------------------

@dataclass(frozen=True)
class Transitivity:
    """kind is "TwoTransitive", "ConditionStar" or "Unverified"."""

    kind: str
    p: int | None = None
    q: int | None = None
    detail: str = ""

    @property
    def verified(self) -> bool:
        return self.kind != "Unverified"

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "q": self.q, "detail": self.detail}


def two_transitivity_evidence(K: NumberField, prime_budget: int = DEFAULT_PRIME_BUDGET) -> Transitivity:
    """A d-cycle (pattern {d}) plus a (d-1)-cycle (pattern {1, d-1}) in the
    Galois group make it 2-transitive.  Scans unramified primes <= prime_budget."""
    d = K.degree
    full, cycle = (d,), tuple(sorted((1, d - 1)))
    p = q = None
    for pat in unramified_patterns(K.minpoly, prime_budget):
        if p is None and pat.degrees == full:
            p = pat.prime
        if q is None and d > 2 and pat.degrees == cycle:
            q = pat.prime
        if p is not None and (q is not None or d <= 2):
            return Transitivity("TwoTransitive", p, q, f"patterns {{{d}}} at {p}, {{1,{d-1}}} at {q}")
    return Transitivity("Unverified", p, q, f"no certifying primes up to {prime_budget}")


def _normalize_perm(perm: Sequence[int], d: int | None = None) -> tuple[int, ...]:
    perm = tuple(int(x) for x in perm)
    if perm and min(perm) == 1 and 0 not in perm:
        perm = tuple(x - 1 for x in perm)
    if sorted(perm) != list(range(len(perm))) or (d is not None and len(perm) != d):
        raise ValueError(f"{perm} is not a permutation")
    return perm


def _pair_orbit(gens: Sequence[tuple[int, ...]], start: frozenset) -> set[frozenset]:
    seen = {start}
    todo = [start]
    while todo:
        pair = todo.pop()
        for g in gens:
            img = frozenset(g[x] for x in pair)
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return seen


def pair_orbits(generators: Sequence[Sequence[int]]) -> list[set[frozenset]]:
    """Orbits of the generated group on unordered pairs of points."""
    gens = [_normalize_perm(g) for g in generators]
    d = len(gens[0])
    remaining = {frozenset(pr) for pr in combinations(range(d), 2)}
    orbits = []
    while remaining:
        orbit = _pair_orbit(gens, min(remaining, key=sorted))
        orbits.append(orbit)
        remaining -= orbit
    return orbits


def is_two_transitive(generators: Sequence[Sequence[int]]) -> bool:
    """Transitive on ordered pairs of distinct points."""
    gens = [_normalize_perm(g) for g in generators]
    d = len(gens[0])
    if d < 2:
        return True
    seen = {(0, 1)}
    todo = [(0, 1)]
    while todo:
        x, y = todo.pop()
        for g in gens:
            img = (g[x], g[y])
            if img not in seen:
                seen.add(img)
                todo.append(img)
    return len(seen) == d * (d - 1)


def condition_star_check(generators: Sequence[Sequence[int]], tau: Sequence[int]) -> bool:
    """Every unordered pair is conjugate to one of the pairs {z, tau z}."""
    t = _normalize_perm(tau)
    d = len(t)
    if any(t[t[i]] != i for i in range(d)):
        raise NotInvolution(f"{tau} is not an involution")
    if any(t[i] == i for i in range(d)):
        raise TauHasFixedPoint(f"{tau} has a fixed point")
    gens = [_normalize_perm(g, d) for g in generators]
    covered: set[frozenset] = set()
    for z in range(d):
        pair = frozenset((z, t[z]))
        if pair not in covered:
            covered |= _pair_orbit(gens, pair)
    return len(covered) == d * (d - 1) // 2


# --- norm forms and general position ----------------------------------------------

def build_norm_form(K: NumberField, l: SparsePoly, n: int | None = None) -> SparsePoly:
    d = K.degree
    if d % 2:
        raise OddDegree(f"degree {d} is odd")
    if d < 4:
        raise DegreeTooSmall(f"degree {d} < 4")
    n = l.nvars - 1 if n is None else n
    if n < 2:
        raise TooFewVariables(f"need at least 3 variables, got {n + 1}")
    if l.nvars != n + 1:
        raise TooFewVariables(f"linear form has {l.nvars} variables, expected {n + 1}")
    f = norm_form(K, l)
    assert f.domain is None and f.is_homogeneous() and f.degree() == d
    return f


@dataclass(frozen=True)
class GeneralPosition:
    result: bool
    method: str  # "Vandermonde", "Exact", "Interval" or "Unverified"

    def __bool__(self):
        return self.result

    def to_json(self) -> dict:
        return {"result": self.result, "method": self.method}


def _is_vandermonde(K: NumberField, coeffs: Sequence) -> bool:
    a = K.gen
    return all(c == a**i for i, c in enumerate(coeffs))


def _ball_det(rows: list[list[Ball]]) -> Ball:
    if len(rows) == 1:
        return rows[0][0]
    acc = None
    for j, x in enumerate(rows[0]):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = x * _ball_det(minor)
        if j % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def general_position_check(K: NumberField, l: SparsePoly) -> GeneralPosition:
    """Whether any r <= n+1 of the d conjugate hyperplanes meet in codimension r.

    The conjugate coefficient matrix factors as (Vandermonde in the roots) x
    (power-basis coordinates), so its rank is a rational rank.  A rank
    deficit decides False exactly; when d <= n+1 full rank decides True.
    Otherwise each maximal minor is enclosed in a certified disk.
    """
    coeffs = linear_coeffs(l.over(K))
    k = len(coeffs)
    if _is_vandermonde(K, coeffs):
        return GeneralPosition(True, "Vandermonde")
    d = K.degree
    coords = [[c.coords[j] for c in coeffs] for j in range(d)]
    size = min(d, k)
    if linalg.rank(coords) < size:
        return GeneralPosition(False, "Exact")
    if d <= k:
        return GeneralPosition(True, "Exact")
    for prec in PRECISIONS:
        try:
            roots = certified_roots(K.minpoly, prec)
        except PrecisionExhausted:
            continue
        cols = [complex_embedding_balls(c, roots) for c in coeffs]
        rows = [[cols[i][r] for i in range(k)] for r in range(d)]
        if all(not _ball_det([rows[r] for r in sub]).contains_zero() for sub in combinations(range(d), k)):
            return GeneralPosition(True, "Interval")
    raise PrecisionExhausted("a minor could not be separated from 0")


# --- vanishing on pairwise intersections -------------------------------------------

def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


def vanishing_dimension(
    K: NumberField, l: SparsePoly, D: int, *, general_position: bool | None = None
) -> int:
    """Q-dimension of the rational forms of degree D vanishing on every
    intersection of two conjugate hyperplanes.

    A rational g does so iff its restriction to l = 0 is divisible there by
    q = (f/l)|_{l=0}: restricted to l = 0, q is the product of the other
    conjugates, and the Galois group moves any pair of conjugates to one
    that contains l.  The remainder of that division is Q-linear in g.
    """
    if D < 0:
        raise ValueError("degree must be nonnegative")
    if general_position is None:
        try:
            general_position = bool(general_position_check(K, l))
        except PrecisionExhausted:
            general_position = False
    if not general_position:
        raise GeneralPositionUnverified("conjugate hyperplanes not certified in general position")
    lk = l.over(K)
    cs = linear_coeffs(lk)
    pivot = next((i for i, c in enumerate(cs) if c != 0), None)
    if pivot is None:
        raise ZeroPivotCoefficient("linear form is zero")
    f = norm_form(K, lk)
    q = restrict_to_hyperplane(exact_divide(f.over(K), lk), lk, pivot)
    basis = monomials(l.nvars, D)
    remainders = []
    for e in basis:
        g = SparsePoly(l.nvars, {e: 1})
        remainders.append(divide_with_remainder(restrict_to_hyperplane(g, lk, pivot), q)[1])
    support = sorted({e for r in remainders for e in r.terms})
    rows = []
    for r in remainders:
        row = []
        for e in support:
            c = r.terms.get(e)
            row.extend(c.coords if c is not None else [Fraction(0)] * K.degree)
        rows.append(row)
    return len(basis) - (linalg.rank(rows) if support else 0)


# --- the evidence bundle -------------------------------------------------------------

@dataclass(frozen=True)
class EvidenceBundle:
    field: NumberField
    linear_form: SparsePoly
    f: SparsePoly
    totally_imaginary: bool
    general_position: GeneralPosition
    transitivity: Transitivity
    vanishing_dims: Mapping[int, int]
    conclusion: str  # "NotSOSOverQ" or "Inconclusive"
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.conclusion == "NotSOSOverQ" and not self.supports_conclusion():
            raise AssertionError("NotSOSOverQ without the required evidence")

    def supports_conclusion(self) -> bool:
        half = self.field.degree // 2
        return (
            self.totally_imaginary
            and self.general_position.result
            and self.transitivity.verified
            and self.vanishing_dims.get(half) == 0
        )

    def to_json(self) -> dict:
        return {
            "kind": "evidence",
            "field": self.field.to_json(),
            "linear_form": self.linear_form.to_json(),
            "f": self.f.to_json(),
            "totally_imaginary": self.totally_imaginary,
            "general_position": self.general_position.to_json(),
            "transitivity": self.transitivity.to_json(),
            "vanishing_dims": {str(k): v for k, v in sorted(self.vanishing_dims.items())},
            "conclusion": self.conclusion,
            "notes": list(self.notes),
        }

    @staticmethod
    def from_json(data: Mapping) -> "EvidenceBundle":
        K = make_field([int(c) for c in data["field"]])
        gp, tr = data["general_position"], data["transitivity"]
        return EvidenceBundle(
            K,
            SparsePoly.from_json(data["linear_form"]),
            SparsePoly.from_json(data["f"]),
            bool(data["totally_imaginary"]),
            GeneralPosition(bool(gp["result"]), gp["method"]),
            Transitivity(tr["kind"], tr.get("p"), tr.get("q"), tr.get("detail", "")),
            {int(k): int(v) for k, v in data["vanishing_dims"].items()},
            data["conclusion"],
            tuple(data.get("notes", ())),
        )


def certify_not_sos(
    K: NumberField,
    l: SparsePoly,
    n: int | None = None,
    *,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
    group_data: Mapping | None = None,
) -> EvidenceBundle:
    """Collect the evidence for f = N(l); failures give Inconclusive.

    ``group_data`` may supply {"generators", "tau", "correspondence"} for a
    Galois action that the prime scan cannot certify; the correspondence
    (G-set point -> conjugate index) is required and recorded, not checked.
    """
    f = build_norm_form(K, l, n)
    notes = []
    imaginary = K.signature == 0
    try:
        gp = general_position_check(K, l)
    except PrecisionExhausted as exc:
        gp = GeneralPosition(False, "Unverified")
        notes.append(str(exc))
    trans = two_transitivity_evidence(K, prime_budget)
    if not trans.verified and group_data is not None:
        if "correspondence" not in group_data:
            notes.append("group data without a correspondence to the conjugates was ignored")
        else:
            try:
                if condition_star_check(group_data["generators"], group_data["tau"]):
                    trans = Transitivity("ConditionStar", detail="caller-supplied Galois action")
            except RatSOSError as exc:
                notes.append(str(exc))
    dims: dict[int, int] = {}
    if gp.result:
        for D in range(1, K.degree):
            dims[D] = vanishing_dimension(K, l, D, general_position=True)
    bundle = EvidenceBundle(K, l, f, imaginary, gp, trans, dims, "Inconclusive", tuple(notes))
    if bundle.supports_conclusion():
        bundle = EvidenceBundle(K, l, f, imaginary, gp, trans, dims, "NotSOSOverQ", tuple(notes))
    return bundle


# --- field search ---------------------------------------------------------------

def check_search_properties(
    m: Sequence[int], avoid: Iterable[int], prime_budget: int = DEFAULT_PRIME_BUDGET
) -> tuple[int, int] | None:
    """(p, q) if m is positive definite, its discriminant avoids ``avoid`` and
    it has patterns {d} at p and {1, d-1} at q; otherwise None."""
    m = [int(c) for c in m]
    d = len(m) - 1
    if upoly.count_real_roots(m) != 0:
        return None
    disc = discriminant(m)
    if disc == 0 or any(disc % s == 0 for s in avoid):
        return None
    p = q = None
    for pat in unramified_patterns(m, prime_budget):
        if p is None and pat.degrees == (d,):
            p = pat.prime
        if q is None and pat.degrees == (1, d - 1):
            q = pat.prime
        if p is not None and q is not None:
            return p, q
    return None


def search_field(
    d: int,
    avoid: Iterable[int] = (),
    budget: int = 10**4,
    seed: int = 0,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
) -> NumberField:
    """Random monic degree-d polynomial (coefficients in [-5, 5], positive
    constant term) passing :func:`check_search_properties`."""
    if d % 2 or d < 4:
        raise DegreeTooSmall(f"need an even degree >= 4, got {d}")
    avoid = tuple(avoid)
    rng = random.Random(seed)
    for _ in range(budget):
        m = [rng.randint(-5, 5) for _ in range(d)] + [1]
        m[0] = abs(m[0]) or rng.randint(1, 5)
        if check_search_properties(m, avoid, prime_budget):
            return make_field(m)
    raise BudgetExhausted(f"no suitable degree-{d} field in {budget} samples")


@dataclass(frozen=True)
class Level2Field:
    """A field with an explicit identity 1 + A(a)^2 + B(a)^2 = 0."""

    field: NumberField
    witness: tuple[FieldElement, FieldElement, FieldElement]


def search_level2_field(
    d: int,
    avoid: Iterable[int] = (),
    budget: int = 10**4,
    seed: int = 0,
    prime_budget: int = DEFAULT_PRIME_BUDGET,
) -> Level2Field:
    """Like :func:`search_field`, restricted to m = (A^2 + B^2 + 1)/2.

    A, B are monic of degree d/2 with B = A + 1 mod 2, which makes m monic
    and integral; m has no real roots since A^2 + B^2 + 1 > 0, and
    (1, A(a), B(a)) is isotropic for a root a.
    """
    if d % 2 or d < 4:
        raise DegreeTooSmall(f"need an even degree >= 4, got {d}")
    avoid = tuple(avoid)
    rng = random.Random(seed)
    h = d // 2
    for _ in range(budget):
        A = [rng.randint(-2, 2) for _ in range(h)] + [1]
        B = [a + 1 + 2 * rng.randint(-1, 1) if i == 0 else a + 2 * rng.randint(-1, 1)
             for i, a in enumerate(A[:-1])] + [1]
        total = upoly.add(upoly.add(upoly.mul(A, A), upoly.mul(B, B)), [1])
        m = [int(c / 2) for c in total]
        if check_search_properties(m, avoid, prime_budget) is None:
            continue
        try:
            K = make_field(m)
        except (RatSOSError, NotSquarefree):
            continue
        wa, wb = K.from_poly(A), K.from_poly(B)
        assert 1 + wa * wa + wb * wb == 0
        return Level2Field(K, (K.one, wa, wb))
    raise BudgetExhausted(f"no suitable level-2 degree-{d} field in {budget} samples")
