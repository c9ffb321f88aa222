"""Exact linear algebra over Q on lists of lists of Fractions."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list  # list[list[Fraction]]


def to_matrix(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(x) for x in row] for row in rows]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(a: Matrix) -> Matrix:
    return [list(col) for col in zip(*a)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list[Fraction]:
    return [sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a]


def quadratic_value(a: Matrix, v: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(v, matvec(a, v))), Fraction(0))


def is_symmetric(a: Matrix) -> bool:
    n = len(a)
    return all(len(row) == n for row in a) and all(
        a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n)
    )


def row_echelon(a: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and pivot columns."""
    m = [list(map(Fraction, row)) for row in a]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(a: Matrix) -> int:
    if not a or not a[0]:
        return 0
    return len(row_echelon(a)[1])


def det(a: Matrix) -> Fraction:
    m = [list(map(Fraction, row)) for row in a]
    n = len(m)
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            result = -result
        result *= m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return result


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    aug = [list(map(Fraction, row)) + identity(n)[i] for i, row in enumerate(a)]
    red, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def congruence_diagonalize(a: Matrix) -> tuple[Matrix, list[Fraction]]:
    """Return (B, diag) with B^T A B = diag(diag), B invertible.

    Symmetric Gaussian elimination with the natural pivot order.  A zero
    pivot whose row is nonzero is repaired by adding (or subtracting) a later
    basis vector; a zero row is left as a zero diagonal entry.  Column 0 of B
    stays e_0 whenever A[0][0] != 0.
    """
    if not is_symmetric(a):
        raise ValueError("matrix is not symmetric")
    n = len(a)
    m = [list(map(Fraction, row)) for row in a]
    b = identity(n)

    def add_col(dst: int, src: int, f: Fraction) -> None:
        # basis change v_dst += f v_src, applied as a congruence
        for row in m:
            row[dst] += f * row[src]
        m[dst] = [x + f * y for x, y in zip(m[dst], m[src])]
        for row in b:
            row[dst] += f * row[src]

    for k in range(n):
        if m[k][k] == 0:
            j = next((j for j in range(k + 1, n) if m[k][j] != 0), None)
            if j is None:
                continue
            add_col(k, j, Fraction(1) if 2 * m[k][j] + m[j][j] != 0 else Fraction(-1))
        piv = m[k][k]
        for j in range(k + 1, n):
            if m[k][j] != 0:
                add_col(j, k, -m[k][j] / piv)
    return b, [m[i][i] for i in range(n)]
