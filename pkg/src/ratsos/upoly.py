"""Dense univariate polynomials over Q and real root isolation.

A polynomial is a list of coefficients, constant term first, with no
trailing zeros; ``[]`` is the zero polynomial.  Coefficients are ints or
Fractions; every function returns Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Poly = list  # list[Fraction], constant term first


def trim(a: Sequence) -> Poly:
    a = [Fraction(c) for c in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a: Sequence) -> int:
    """Degree of a trimmed polynomial; -1 for zero."""
    return len(a) - 1


def add(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


def scale(a: Sequence, c) -> Poly:
    return trim([c * x for x in a])


def mul(a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def divmod_(a: Sequence, b: Sequence) -> tuple[Poly, Poly]:
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = trim(a)
    if len(r) < len(b):
        return [], r
    q = [Fraction(0)] * (len(r) - len(b) + 1)
    lc = b[-1]
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] / lc
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] -= c * y
        r = trim(r)
    return trim(q), r


def rem(a: Sequence, b: Sequence) -> Poly:
    return divmod_(a, b)[1]


def monic(a: Sequence) -> Poly:
    a = trim(a)
    return [c / a[-1] for c in a] if a else []


def gcd(a: Sequence, b: Sequence) -> Poly:
    """Monic gcd (zero if both are zero)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, rem(a, b)
    return monic(a)


def xgcd(a: Sequence, b: Sequence) -> tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with s*a + t*b = g, g monic."""
    r0, r1 = trim(a), trim(b)
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        q, r = divmod_(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1))
        t0, t1 = t1, sub(t0, mul(q, t1))
    if not r0:
        return [], [], []
    lc = r0[-1]
    return scale(r0, 1 / lc), scale(s0, 1 / lc), scale(t0, 1 / lc)


def deriv(a: Sequence) -> Poly:
    return trim([i * a[i] for i in range(1, len(a))])


def evaluate(a: Sequence, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def is_squarefree(a: Sequence) -> bool:
    return degree(gcd(a, deriv(a))) == 0


def sign(x) -> int:
    return (x > 0) - (x < 0)


# --- Sturm sequences -------------------------------------------------------

def sturm_sequence(a: Sequence) -> list[Poly]:
    seq = [trim(a), deriv(a)]
    while seq[-1]:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append(scale(r, -1))
    return seq


def _changes(signs: list[int]) -> int:
    signs = [s for s in signs if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


def sign_changes_at(seq: list[Poly], x) -> int:
    return _changes([sign(evaluate(p, x)) for p in seq])


def sign_changes_at_infinity(seq: list[Poly], positive: bool) -> int:
    out = []
    for p in seq:
        s = sign(p[-1])
        if not positive and degree(p) % 2:
            s = -s
        out.append(s)
    return _changes(out)


def count_real_roots(a: Sequence) -> int:
    """Number of distinct real roots."""
    a = trim(a)
    if degree(a) < 1:
        return 0
    seq = sturm_sequence(a)
    return sign_changes_at_infinity(seq, False) - sign_changes_at_infinity(seq, True)


def count_roots_in(seq: list[Poly], lo, hi) -> int:
    """Distinct roots in the half-open interval (lo, hi]."""
    return sign_changes_at(seq, lo) - sign_changes_at(seq, hi)


def root_bound(a: Sequence) -> Fraction:
    """Cauchy bound: every complex root has absolute value < bound."""
    a = trim(a)
    lc = abs(a[-1])
    return 1 + max((abs(c) / lc for c in a[:-1]), default=Fraction(0))


def isolate_real_roots(a: Sequence) -> list[tuple[Fraction, Fraction]]:
    """Disjoint open intervals (lo, hi), one per real root, sorted ascending.

    Endpoints are never roots.  Requires a squarefree polynomial.
    """
    a = trim(a)
    if degree(a) < 1:
        return []
    seq = sturm_sequence(a)
    bound = root_bound(a)
    out = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = count_roots_in(seq, lo, hi)
        if k == 0:
            continue
        if k == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        step = (hi - lo) / 8
        while evaluate(a, mid) == 0:
            mid += step
            step /= 2
        stack.append((mid, hi))
        stack.append((lo, mid))
    return sorted(out)


def refine_root(a: Sequence, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """Halve an isolating interval whose endpoints have opposite signs under a."""
    slo = sign(evaluate(a, lo))
    mid = (lo + hi) / 2
    sm = sign(evaluate(a, mid))
    if sm == 0:
        # exact rational root; shrink around it
        w = (hi - lo) / 4
        return mid - w, mid + w
    return (lo, mid) if sm != slo else (mid, hi)
