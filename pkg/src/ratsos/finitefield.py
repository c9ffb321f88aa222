"""Univariate polynomials over a prime field and distinct-degree splitting.

Polynomials are lists of ints in ``range(p)``, constant term first, with no
trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Sequence


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def primes() -> Iterator[int]:
    n = 2
    while True:
        if is_prime(n):
            yield n
        n += 1


def primes_up_to(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if is_prime(q)]


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def reduce_mod(a: Sequence, p: int) -> list[int]:
    """Reduce integer (or p-integral rational) coefficients modulo p."""
    out = []
    for c in a:
        c = Fraction(c)
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return _trim(out)


def sub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def divmod_(a: Sequence[int], b: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    if not b:
        raise ZeroDivisionError("division by zero polynomial")
    r = list(a)
    if len(r) < len(b):
        return [], r
    inv = pow(b[-1], -1, p)
    q = [0] * (len(r) - len(b) + 1)
    while len(r) >= len(b):
        k = len(r) - len(b)
        c = r[-1] * inv % p
        q[k] = c
        for i, y in enumerate(b):
            r[i + k] = (r[i + k] - c * y) % p
        _trim(r)
    return _trim(q), r


def monic(a: Sequence[int], p: int) -> list[int]:
    if not a:
        return []
    inv = pow(a[-1], -1, p)
    return [c * inv % p for c in a]


def gcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = list(a), list(b)
    while b:
        a, b = b, divmod_(a, b, p)[1]
    return monic(a, p)


def deriv(a: Sequence[int], p: int) -> list[int]:
    return _trim([i * a[i] % p for i in range(1, len(a))])


def powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = divmod_(base, mod, p)[1]
    while e:
        if e & 1:
            result = divmod_(mul(result, base, p), mod, p)[1]
        base = divmod_(mul(base, base, p), mod, p)[1]
        e >>= 1
    return result


def is_squarefree(a: Sequence[int], p: int) -> bool:
    return len(gcd(a, deriv(a, p), p)) == 1


def distinct_degree_split(a: Sequence[int], p: int) -> list[tuple[int, list[int]]]:
    """Split a squarefree monic polynomial into (i, product of its degree-i factors).

    Uses gcd(a, x^(p^i) - x) for i = 1, 2, ...
    """
    f = monic(a, p)
    out = []
    x = [0, 1]
    h = x
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, x, p), p)
        if len(g) > 1:
            out.append((i, g))
            f = divmod_(f, g, p)[0]
            h = divmod_(h, f, p)[1]
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def degree_pattern(a: Sequence[int], p: int) -> tuple[int, ...]:
    """Sorted irreducible-factor degrees of a squarefree polynomial mod p."""
    degs: list[int] = []
    for i, g in distinct_degree_split(a, p):
        degs.extend([i] * ((len(g) - 1) // i))
    return tuple(sorted(degs))
