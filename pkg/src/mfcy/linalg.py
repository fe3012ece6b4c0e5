"""Exact linear algebra over Q and over polynomial rings."""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

from .polyring import Poly, exact_quotient


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        out.append([int(Fraction(x) * den) for x in row])
    return out


def bareiss_echelon(mat: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of an integer matrix (in place).

    Returns the matrix and its pivot columns.
    """
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = next((k for k in range(r, rows) if mat[k][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        p = mat[r][c]
        for k in range(r + 1, rows):
            a = mat[k][c]
            for j in range(c, cols):
                q, rem = divmod(p * mat[k][j] - a * mat[r][j], prev)
                assert not rem, "Bareiss division was not exact"
                mat[k][j] = q
        prev = p
        pivots.append(c)
        r += 1
    return mat, pivots


def rank(mat: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a rational matrix by fraction-free elimination."""
    if not mat or not mat[0]:
        return 0
    _, piv = bareiss_echelon(_integer_rows(mat))
    return len(piv)


def det(mat: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(mat)
    if n == 0:
        return Fraction(1)
    rows = [[Fraction(x) for x in row] for row in mat]
    scale = Fraction(1)
    ints = []
    for row in rows:
        den = 1
        for x in row:
            den = lcm(den, x.denominator)
        scale /= den
        ints.append([int(x * den) for x in row])
    d = _bareiss_det(ints)
    return scale * d


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    m = [list(row) for row in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def poly_det(mat: Sequence[Sequence[Poly]]) -> Poly:
    """Determinant of a square polynomial matrix by Bareiss elimination."""
    n = len(mat)
    if n == 0:
        raise ValueError("empty matrix")
    nv = mat[0][0].nvars
    if n == 1:
        return mat[0][0]
    # leading entries must be nonzero polynomials for the pivots; zero pivots are swapped
    m = [list(row) for row in mat]
    sign = 1
    prev = Poly.constant(nv, 1)
    for k in range(n - 1):
        if not m[k][k]:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return Poly.zero(nv)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = exact_quotient(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d if sign == 1 else -d


def rref(mat: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    m = [[Fraction(x) for x in row] for row in mat]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((k for k in range(r, rows) if m[k][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for k in range(rows):
            if k != r and m[k][c]:
                a = m[k][c]
                m[k] = [x - a * y for x, y in zip(m[k], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def solve(mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """One solution of ``mat @ x = rhs`` (free variables set to 0), or ``None``."""
    rows = len(mat)
    if rows == 0:
        return []
    cols = len(mat[0])
    aug = [list(mat[r]) + [rhs[r]] for r in range(rows)]
    m, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        x[c] = m[r][cols]
    return x


def nullspace(mat: Sequence[Sequence[Fraction]], cols: int | None = None) -> list[list[Fraction]]:
    if not mat:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols or 0)]
    cols = len(mat[0])
    m, pivots = rref(mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def matmul(a: Sequence[Sequence], b: Sequence[Sequence], zero) -> list[list]:
    """Product of matrices over any ring; ``zero`` fills entries with no terms."""
    n = len(a)
    inner = len(b)
    m = len(b[0]) if inner else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            acc = None
            for k in range(inner):
                x = ai[k]
                if not x:
                    continue
                y = b[k][j]
                if not y:
                    continue
                acc = x * y if acc is None else acc + x * y
            row.append(zero if acc is None else acc)
        out.append(row)
    return out
