"""Exact arithmetic in Q[t]/(m(t)) for a monic irreducible integer polynomial m.

Elements are coordinate vectors in the power basis 1, a, ..., a^(d-1) of a
root a of m.  Besides the ring operations this module provides traces and
norms, the trace form and its diagonalization over Q, and Sturm-based
isolation of the real embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import finitefield, linalg, upoly
from .complexroots import Ball, certified_roots
from .errors import (
    DivisionByZero,
    FieldMismatch,
    IrreducibilityUncertified,
    NoRealEmbeddings,
    NotSquarefree,
    PrecisionExhausted,
    Reducible,
)

PRIME_BUDGET = 25
MAX_SUBSET_DEGREE = 16
SIGN_START_BITS = 10
SIGN_MAX_BITS = 200


# --- helpers on bare minimal polynomials ----------------------------------

def _reduction_table(minpoly: Sequence[int]) -> list[tuple[Fraction, ...]]:
    """Coordinates of a^k for k = d .. 2d-2."""
    d = len(minpoly) - 1
    cur = [Fraction(-c) for c in minpoly[:-1]]  # a^d
    table = []
    for _ in range(max(d - 1, 1)):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [x - top * c for x, c in zip(cur, minpoly[:-1])]
    return table


def _mult_matrix(minpoly: Sequence[int], coords: Sequence[Fraction]) -> linalg.Matrix:
    """Matrix of multiplication by an element; column i is the image of a^i."""
    d = len(minpoly) - 1
    cols = []
    cur = list(coords)
    for _ in range(d):
        cols.append(cur)
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [x - top * c for x, c in zip(cur, minpoly[:-1])]
    return linalg.transpose(cols)


def discriminant(minpoly: Sequence[int]) -> int:
    """Discriminant of a monic integer polynomial, (-1)^(d(d-1)/2) Res(m, m')."""
    d = len(minpoly) - 1
    if d < 1:
        raise ValueError("degree must be at least 1")
    if d == 1:
        return 1
    dm = upoly.deriv(minpoly)
    coords = [Fraction(c) for c in dm] + [Fraction(0)] * (d - len(dm))
    res = linalg.det(_mult_matrix(minpoly, coords))
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    assert res.denominator == 1
    return sign * int(res)


def power_traces(minpoly: Sequence[int], count: int) -> list[Fraction]:
    """Power sums p_k = sum of r^k over the roots r, k = 0..count-1 (Newton)."""
    d = len(minpoly) - 1
    c = [Fraction(x) for x in minpoly]
    p = [Fraction(d)]
    for k in range(1, count):
        if k <= d:
            s = k * c[d - k] + sum((c[d - i] * p[k - i] for i in range(1, k)), Fraction(0))
        else:
            s = sum((c[d - i] * p[k - i] for i in range(1, d + 1)), Fraction(0))
        p.append(-s)
    return p


def _subset_sums(degs: Iterable[int]) -> set[int]:
    sums = {0}
    for g in degs:
        sums |= {s + g for s in sums}
    return sums


def _rational_root(minpoly: Sequence[int]) -> int | None:
    c0 = minpoly[0]
    if c0 == 0:
        return 0
    n = abs(c0)
    cands = set()
    f = 1
    while f * f <= n:
        if n % f == 0:
            cands |= {f, n // f}
        f += 1
    for r in sorted(cands):
        for s in (r, -r):
            if upoly.evaluate(minpoly, s) == 0:
                return s
    return None


def _root_subset_search(minpoly: Sequence[int], sizes: Sequence[int]):
    """Decide whether m has a monic integer factor of one of the given degrees.

    Returns the factor (coefficients, constant first) or None after every
    root subset has been excluded with certified disks.
    """
    d = len(minpoly) - 1
    for prec_idx in range(5):
        balls = certified_roots(minpoly, min_prec=64 << prec_idx)
        ambiguous = False
        for k in sizes:
            for subset in combinations(range(d), k):
                # coefficients of prod (t - r) as balls
                coeffs = [Ball.exact(1, balls[0].prec)]
                for i in subset:
                    nxt = [Ball.exact(0, balls[0].prec)] * (len(coeffs) + 1)
                    for j, c in enumerate(coeffs):
                        nxt[j + 1] = nxt[j + 1] + c
                        nxt[j] = nxt[j] - c * balls[i]
                    coeffs = nxt
                cand = []
                excluded = False
                for c in coeffs:
                    n = round(c.re)
                    if not c.contains(n):
                        excluded = True
                        break
                    if c.rad >= Fraction(1, 2):
                        ambiguous = True
                    cand.append(n)
                if excluded:
                    continue
                q, r = upoly.divmod_(minpoly, cand)
                if not r:
                    return cand
        if not ambiguous:
            return None
    raise PrecisionExhausted("root-subset search could not exclude all candidates")


# --- the field --------------------------------------------------------------

class NumberField:
    """Q[t]/(m(t)) with m monic, integral and certified irreducible.

    Construction runs the certification; use :func:`make_field`, which
    caches fields by minimal polynomial.
    """

    def __init__(self, minpoly: Sequence[int]):
        m = [Fraction(c) for c in minpoly]
        if not m or any(c.denominator != 1 for c in m):
            raise ValueError("minimal polynomial must have integer coefficients")
        m = [int(c) for c in upoly.trim(m)]
        if len(m) < 2 or m[-1] != 1:
            raise ValueError("minimal polynomial must be monic of degree >= 1")
        self.minpoly: tuple[int, ...] = tuple(m)
        self.degree = d = len(m) - 1
        if not upoly.is_squarefree(m):
            raise NotSquarefree(f"{list(m)} is not squarefree")
        self.discriminant = discriminant(m)
        self.irreducibility = self._certify_irreducible()
        self.signature = upoly.count_real_roots(m)
        self._table = _reduction_table(m)
        self._traces = power_traces(m, 2 * d - 1)

    def _certify_irreducible(self) -> dict:
        m, d = self.minpoly, self.degree
        if d == 1:
            return {"method": "linear"}
        r = _rational_root(m)
        if r is not None:
            raise Reducible(f"{list(m)} has the rational root {r}", factor=[-r, 1])
        allowed = set(range(d + 1))
        patterns = {}
        for p in finitefield.primes():
            if len(patterns) == PRIME_BUDGET:
                break
            if self.discriminant % p == 0:
                continue
            pat = finitefield.degree_pattern(finitefield.reduce_mod(m, p), p)
            patterns[p] = pat
            allowed &= _subset_sums(pat)
            if allowed == {0, d}:
                return {"method": "mod-p", "primes": sorted(patterns), "patterns": patterns}
        if d > MAX_SUBSET_DEGREE:
            raise IrreducibilityUncertified(
                f"degree sets from {len(patterns)} primes leave factor degrees {sorted(allowed)}"
            )
        sizes = sorted(k for k in allowed if 1 <= k <= d // 2)
        factor = _root_subset_search(m, sizes)
        if factor is not None:
            raise Reducible(f"{list(m)} has the factor {factor}", factor=factor)
        return {"method": "root-subsets", "excluded_degrees": sizes, "patterns": patterns}

    # identity is the minimal polynomial
    def __eq__(self, other):
        return isinstance(other, NumberField) and self.minpoly == other.minpoly

    def __hash__(self):
        return hash(self.minpoly)

    def __repr__(self):
        return f"NumberField({list(self.minpoly)})"

    @property
    def is_totally_real(self) -> bool:
        return self.signature == self.degree

    @property
    def is_totally_imaginary(self) -> bool:
        return self.signature == 0

    # element constructors
    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise FieldMismatch("element belongs to another field")
            return value
        if isinstance(value, (list, tuple)):
            return self.from_poly(value)
        return self.from_poly([value])

    @property
    def gen(self) -> "FieldElement":
        return self.from_poly([0, 1])

    @property
    def one(self) -> "FieldElement":
        return self.from_poly([1])

    @property
    def zero(self) -> "FieldElement":
        return self.from_poly([])

    def from_poly(self, coeffs: Sequence) -> "FieldElement":
        """Element given by an arbitrary polynomial in the generator."""
        coeffs = [Fraction(c) for c in coeffs]
        return FieldElement(self, self._reduce(coeffs))

    def _reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.degree
        if len(coeffs) > 2 * d - 1:
            coeffs = upoly.rem(coeffs, self.minpoly)
        out = list(coeffs[:d]) + [Fraction(0)] * (d - min(len(coeffs), d))
        for k in range(d, len(coeffs)):
            c = coeffs[k]
            if c:
                for i, x in enumerate(self._table[k - d]):
                    out[i] += c * x
        return tuple(out)

    def mult_matrix(self, a: "FieldElement") -> linalg.Matrix:
        return _mult_matrix(self.minpoly, a.coords)

    def to_json(self) -> list[str]:
        return [str(c) for c in self.minpoly]

    @staticmethod
    def from_json(data: Sequence) -> "NumberField":
        return make_field([int(c) for c in data])


@lru_cache(maxsize=None)
def _make_field(minpoly: tuple[int, ...]) -> NumberField:
    return NumberField(minpoly)


def make_field(m: Sequence[int]) -> NumberField:
    """Certified number field for a monic integer polynomial (constant term first).

    Raises NotSquarefree, Reducible or IrreducibilityUncertified.
    """
    return _make_field(tuple(int(c) for c in upoly.trim(m)))


@dataclass(frozen=True)
class FieldElement:
    field: NumberField
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.field.degree:
            raise ValueError("coordinate vector has the wrong length")

    def _other(self, b) -> "FieldElement":
        if isinstance(b, FieldElement):
            if b.field != self.field:
                raise FieldMismatch(f"{b.field} vs {self.field}")
            return b
        if isinstance(b, (int, Fraction)):
            return self.field.from_poly([b])
        return NotImplemented

    def __add__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, tuple(x + y for x, y in zip(self.coords, b.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-x for x in self.coords))

    def __sub__(self, b):
        b = self._other(b)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, tuple(x - y for x, y in zip(self.coords, b.coords)))

    def __rsub__(self, b):
        return (-self) + b

    def __mul__(self, b):
        if isinstance(b, (int, Fraction)):
            return FieldElement(self.field, tuple(x * b for x in self.coords))
        b = self._other(b)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field._reduce(upoly.mul(self.coords, b.coords)))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result, base = self.field.one, self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        g, s, _ = upoly.xgcd(upoly.trim(self.coords), self.field.minpoly)
        # m irreducible, so g = 1
        assert g == [1]
        return self.field.from_poly(s)

    def __truediv__(self, b):
        if isinstance(b, (int, Fraction)):
            if b == 0:
                raise DivisionByZero("division by zero")
            return self * (1 / Fraction(b))
        b = self._other(b)
        if b is NotImplemented:
            return b
        return self * b.inverse()

    def __rtruediv__(self, b):
        return self.inverse() * b

    def __eq__(self, b):
        if isinstance(b, (int, Fraction)):
            return self.coords == self.field.from_poly([b]).coords
        if isinstance(b, FieldElement):
            return self.field == b.field and self.coords == b.coords
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coords[0])
        return hash(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_rational(self) -> bool:
        return not any(self.coords[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*a^{i}")
        return " + ".join(terms) or "0"

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coords]


def elem_arith(a: FieldElement, b: FieldElement, op: str) -> FieldElement:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if not isinstance(b, FieldElement) or a.field != b.field:
        raise FieldMismatch("operands live in different fields")
    return ops[op](b)


def trace(a: FieldElement) -> Fraction:
    t = a.field._traces
    return sum((c * t[i] for i, c in enumerate(a.coords)), Fraction(0))


def norm(a: FieldElement) -> Fraction:
    return linalg.det(a.field.mult_matrix(a))


def trace_form_gram(K: NumberField) -> linalg.Matrix:
    t = K._traces
    return [[t[i + j] for j in range(K.degree)] for i in range(K.degree)]


@dataclass(frozen=True)
class TraceFormDiagonalization:
    """B^T G B = diag(diagonal) for the trace form Gram matrix G.

    Column i of ``basis_change`` holds the power-basis coordinates of y_i.
    """

    field: NumberField
    basis_change: tuple[tuple[Fraction, ...], ...]
    diagonal: tuple[Fraction, ...]

    def basis(self) -> list[FieldElement]:
        cols = linalg.transpose([list(r) for r in self.basis_change])
        return [FieldElement(self.field, tuple(c)) for c in cols]

    def coordinates(self, a: FieldElement) -> list[Fraction]:
        """Coordinates of a in the basis y_1..y_d."""
        return linalg.matvec(_basis_inverse(self), a.coords)


@lru_cache(maxsize=None)
def _basis_inverse(diag: TraceFormDiagonalization) -> linalg.Matrix:
    return linalg.inverse([list(r) for r in diag.basis_change])


@lru_cache(maxsize=None)
def diagonalize_trace_form(K: NumberField) -> TraceFormDiagonalization:
    b, diag = linalg.congruence_diagonalize(trace_form_gram(K))
    assert diag[0] == K.degree and all(b[i][0] == (i == 0) for i in range(K.degree))
    return TraceFormDiagonalization(K, tuple(tuple(r) for r in b), tuple(diag))


def real_root_data(m: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals (lo, hi) of the real roots of a squarefree polynomial."""
    m = upoly.trim(m)
    if not upoly.is_squarefree(m):
        raise NotSquarefree(f"{m} is not squarefree")
    return upoly.isolate_real_roots(m)


def _sign_on_interval(poly: list[Fraction], lo: Fraction, hi: Fraction) -> int | None:
    """Sign of poly on [lo, hi] if certified by a Taylor bound at the midpoint."""
    c = (lo + hi) / 2
    w = (hi - lo) / 2
    val = upoly.evaluate(poly, c)
    bound = Fraction(0)
    der = poly
    fact = 1
    k = 0
    while True:
        der = upoly.deriv(der)
        if not der:
            break
        k += 1
        fact *= k
        bound += abs(upoly.evaluate(der, c)) / fact * w**k
    if abs(val) > bound:
        return upoly.sign(val)
    return None


def embedding_signs(a: FieldElement) -> list[int]:
    """Sign (-1, 0, 1) of a under each real embedding, ordered by root position."""
    K = a.field
    if K.signature == 0:
        raise NoRealEmbeddings(f"{K} has no real embeddings")
    if a.is_zero():
        return [0] * K.signature
    poly = upoly.trim(a.coords)
    out = []
    for lo, hi in upoly.isolate_real_roots(K.minpoly):
        while hi - lo > Fraction(1, 2**SIGN_START_BITS):
            lo, hi = upoly.refine_root(K.minpoly, lo, hi)
        while True:
            s = _sign_on_interval(poly, lo, hi)
            if s is not None:
                out.append(s)
                break
            if hi - lo < Fraction(1, 2**SIGN_MAX_BITS):
                raise PrecisionExhausted("sign not certified at 2^-200")
            lo, hi = upoly.refine_root(K.minpoly, lo, hi)
    return out


def real_embeddings(a: FieldElement, bits: int = 60) -> list[float]:
    """Approximate images of a under the real embeddings (display only)."""
    out = []
    poly = upoly.trim(a.coords)
    for lo, hi in upoly.isolate_real_roots(a.field.minpoly):
        while hi - lo > Fraction(1, 2**bits):
            lo, hi = upoly.refine_root(a.field.minpoly, lo, hi)
        out.append(float(upoly.evaluate(poly, (lo + hi) / 2)))
    return out


def complex_embedding_balls(a: FieldElement, roots: Sequence[Ball] | None = None) -> list[Ball]:
    """Certified disks containing a under each complex embedding."""
    roots = roots if roots is not None else certified_roots(a.field.minpoly)
    out = []
    for r in roots:
        acc = Ball.exact(0, r.prec)
        for c in reversed(a.coords):
            acc = acc * r + c
        out.append(acc)
    return out
