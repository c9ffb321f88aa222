"""Four-square decompositions of positive rationals and Euler's composition."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

from .errors import NonPositive

EXHAUSTIVE_LIMIT = 10**6
RANDOM_TRIALS = 20000


@dataclass(frozen=True)
class FourSquare:
    value: Fraction
    parts: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if sum(p * p for p in self.parts) != self.value:
            raise ValueError(f"{self.parts} do not square-sum to {self.value}")


def _probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _two_squares_prime(p: int) -> tuple[int, int] | None:
    """Hermite-Serret for a prime p = 1 mod 4."""
    for c in range(2, p):
        if pow(c, (p - 1) // 2, p) == p - 1:
            x = pow(c, (p - 1) // 4, p)
            break
    else:
        return None
    a, b = p, x
    limit = isqrt(p)
    while b > limit:
        a, b = b, a % b
    c = isqrt(p - b * b)
    if b * b + c * c == p:
        return b, c
    return None


def _two_squares(r: int) -> tuple[int, int] | None:
    if r < 0:
        return None
    s = isqrt(r)
    if s * s == r:
        return s, 0
    if r == 2:
        return 1, 1
    if r % 4 == 1 and _probable_prime(r):
        return _two_squares_prime(r)
    if r % 2 == 0 and (r // 2) % 4 == 1 and _probable_prime(r // 2):
        ab = _two_squares_prime(r // 2)
        if ab:
            a, b = ab
            return a + b, abs(a - b)
    return None


def _exhaustive(n: int) -> tuple[int, int, int, int]:
    # descending search with w >= x >= y >= z
    w = isqrt(n)
    while w >= 0:
        r1 = n - w * w
        x = min(w, isqrt(r1))
        while x >= 0 and 3 * x * x >= r1 - 0:
            r2 = r1 - x * x
            y = min(x, isqrt(r2))
            while y >= 0 and 2 * y * y >= r2:
                r3 = r2 - y * y
                z = isqrt(r3)
                if z * z == r3 and z <= y:
                    return w, x, y, z
                y -= 1
            x -= 1
        w -= 1
    raise AssertionError(f"no four-square decomposition for {n}")


def integer_four_squares(n: int, rng: random.Random | None = None) -> tuple[int, int, int, int]:
    if n < 0:
        raise NonPositive(f"{n} is negative")
    if n <= EXHAUSTIVE_LIMIT:
        return _exhaustive(n)
    rng = rng or random.Random(n)
    s = isqrt(n)
    for _ in range(RANDOM_TRIALS):
        w = rng.randint(0, s)
        x = rng.randint(0, isqrt(n - w * w))
        two = _two_squares(n - w * w - x * x)
        if two:
            parts = sorted((w, x, *two), reverse=True)
            return tuple(parts)
    return _exhaustive(n)


def four_square_decompose(c) -> FourSquare:
    """Exact w^2 + x^2 + y^2 + z^2 = c for a positive rational c = p/q,
    obtained from p*q = a^2 + b^2 + c^2 + d^2 scaled by 1/q."""
    c = Fraction(c)
    if c <= 0:
        raise NonPositive(f"{c} is not positive")
    p, q = c.numerator, c.denominator
    parts = integer_four_squares(p * q)
    return FourSquare(c, tuple(Fraction(v, q) for v in parts))


def _quaternion(a: Sequence, b: Sequence) -> tuple:
    a1, b1, c1, d1 = a
    a2, b2, c2, d2 = b
    return (
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    )


def euler_compose(a: FourSquare, b: FourSquare) -> FourSquare:
    """Four-square of a.value * b.value by the quaternion norm identity."""
    return FourSquare(a.value * b.value, _quaternion(a.parts, b.parts))


def euler_compose_forms(c: FourSquare, forms: Sequence) -> tuple:
    """Four forms whose squares sum to c.value * (q1^2 + q2^2 + q3^2 + q4^2).

    Works for any commutative coefficients (polynomials included); the
    rational parts of c multiply the forms as scalars.
    """
    if len(forms) != 4:
        raise ValueError("need exactly four forms")
    w, x, y, z = c.parts
    q1, q2, q3, q4 = forms
    return (
        q1 * w - q2 * x - q3 * y - q4 * z,
        q2 * w + q1 * x + q4 * y - q3 * z,
        q3 * w - q4 * x + q1 * y + q2 * z,
        q4 * w + q3 * x - q2 * y + q1 * z,
    )
