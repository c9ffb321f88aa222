"""Certified inclusion disks for the complex roots of an integer polynomial.

Root approximations come from mpmath; certification is exact.  With
approximations z_1..z_d of the roots of a monic p, the Weierstrass
corrections W_i = p(z_i) / prod_{j != i} (z_i - z_j) make p the
characteristic polynomial of diag(z) - W * 1^T, so by Gershgorin every
disk |z - z_i| <= d |W_i| that is disjoint from the others holds exactly
one root.  All arithmetic on disks is done with rational centers and
rational radii, so inclusions are rigorous.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Sequence

import mpmath

from .errors import PrecisionExhausted

PRECISIONS = (64, 128, 256, 512, 1024)


def _sqrt_ub(x: Fraction) -> Fraction:
    """Rational upper bound for sqrt(x), x >= 0."""
    n, d = x.numerator, x.denominator
    s = isqrt(n * d)
    if s * s != n * d:
        s += 1
    return Fraction(s, d)


def _round(x: Fraction, prec: int) -> Fraction:
    return Fraction(round(x * (1 << prec)), 1 << prec)


def _from_mpf(x) -> Fraction:
    sgn, man, exp, _ = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** int(exp))
    return -v if sgn else v


@dataclass(frozen=True)
class Ball:
    """Closed complex disk with center re + i*im and radius rad."""

    re: Fraction
    im: Fraction
    rad: Fraction
    prec: int = 256

    @classmethod
    def exact(cls, x, prec: int = 256) -> "Ball":
        return cls(Fraction(x), Fraction(0), Fraction(0), prec)

    def _abs_ub(self) -> Fraction:
        return abs(self.re) + abs(self.im)

    def _rounded(self, re: Fraction, im: Fraction, rad: Fraction, prec: int) -> "Ball":
        rre, rim = _round(re, prec), _round(im, prec)
        err = abs(rre - re) + abs(rim - im)
        return Ball(rre, rim, rad + err, prec)

    def _coerce(self, other) -> "Ball":
        return other if isinstance(other, Ball) else Ball.exact(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        return Ball(self.re + o.re, self.im + o.im, self.rad + o.rad, min(self.prec, o.prec))

    __radd__ = __add__

    def __neg__(self):
        return Ball(-self.re, -self.im, self.rad, self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        re = self.re * o.re - self.im * o.im
        im = self.re * o.im + self.im * o.re
        rad = self.rad * o._abs_ub() + o.rad * self._abs_ub() + self.rad * o.rad
        return self._rounded(re, im, rad, min(self.prec, o.prec))

    __rmul__ = __mul__

    def contains_zero(self) -> bool:
        return self.re * self.re + self.im * self.im <= self.rad * self.rad

    def contains(self, re, im=0) -> bool:
        dr, di = self.re - re, self.im - im
        return dr * dr + di * di <= self.rad * self.rad

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _approximate(coeffs: Sequence[int], prec: int) -> list[tuple[Fraction, Fraction]]:
    with mpmath.workprec(prec + 32):
        roots = mpmath.polyroots(
            [mpmath.mpf(c) for c in reversed(coeffs)], maxsteps=400, extraprec=2 * prec
        )
    out = []
    for r in roots:
        r = mpmath.mpc(r)
        out.append((_round(_from_mpf(r.real), prec), _round(_from_mpf(r.imag), prec)))
    return out


def _certify(coeffs: Sequence[int], approx: list[tuple[Fraction, Fraction]], prec: int):
    d = len(coeffs) - 1
    radii = []
    for i, (zr, zi) in enumerate(approx):
        # p(z_i) by Horner in exact complex rationals
        pr, pi = Fraction(0), Fraction(0)
        for c in reversed(coeffs):
            pr, pi = pr * zr - pi * zi + c, pr * zi + pi * zr
        qr, qi = Fraction(1), Fraction(0)
        for j, (wr, wi) in enumerate(approx):
            if j != i:
                dr, di = zr - wr, zi - wi
                qr, qi = qr * dr - qi * di, qr * di + qi * dr
        den = qr * qr + qi * qi
        if den == 0:
            return None
        w2 = (pr * pr + pi * pi) / den
        radii.append(d * _sqrt_ub(w2))
    for i in range(d):
        for j in range(i + 1, d):
            dr = approx[i][0] - approx[j][0]
            di = approx[i][1] - approx[j][1]
            s = radii[i] + radii[j]
            if s * s >= dr * dr + di * di:
                return None
    return [Ball(zr, zi, r, prec) for (zr, zi), r in zip(approx, radii)]


def root_balls(coeffs: Sequence[int], prec: int) -> list[Ball]:
    """Pairwise disjoint disks, each containing exactly one root of the monic
    squarefree integer polynomial ``coeffs`` (constant term first)."""
    coeffs = [int(c) for c in coeffs]
    if coeffs[-1] != 1:
        raise ValueError("polynomial must be monic")
    if len(coeffs) == 2:
        return [Ball.exact(-coeffs[0], prec)]
    try:
        approx = _approximate(coeffs, prec)
    except mpmath.libmp.NoConvergence:
        approx = None
    balls = _certify(coeffs, approx, prec) if approx else None
    if balls is None:
        raise PrecisionExhausted(f"could not separate roots at {prec} bits")
    return balls


def certified_roots(coeffs: Sequence[int], min_prec: int = 64) -> list[Ball]:
    """root_balls at the first precision (from PRECISIONS) that succeeds."""
    last = None
    for prec in PRECISIONS:
        if prec < min_prec:
            continue
        try:
            return root_balls(coeffs, prec)
        except PrecisionExhausted as exc:
            last = exc
    raise last or PrecisionExhausted("precision exhausted")
