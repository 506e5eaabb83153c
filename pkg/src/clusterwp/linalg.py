"""Exact linear algebra over the integers and rationals.

Matrices are plain nested sequences (or numpy arrays) of Python ints or
Fractions; everything is converted to Python numbers before elimination so
no fixed-width overflow can occur.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Sequence

import numpy as np

__all__ = [
    "bareiss_rank",
    "bareiss_det",
    "rank",
    "rref",
    "nullspace",
    "independent_rows",
    "same_row_space",
    "inverse",
    "to_fraction_array",
]


def _rows(M) -> list[list]:
    if isinstance(M, np.ndarray):
        return [list(r) for r in M.tolist()]
    return [list(r) for r in M]


def _as_int_rows(M) -> list[list[int]] | None:
    rows = _rows(M)
    if all(isinstance(x, (int, np.integer)) or (isinstance(x, Fraction) and x.denominator == 1)
           for r in rows for x in r):
        return [[int(x) for x in r] for r in rows]
    return None


def _clear_denominators(M) -> list[list[int]]:
    rows = _rows(M)
    out = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        scale = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * scale) for x in fr])
    return out


def bareiss_rank(M) -> int:
    """Rank by fraction-free Gaussian elimination (Bareiss)."""
    A = _as_int_rows(M)
    if A is None:
        # row scaling does not change the rank
        A = _clear_denominators(M)
    if not A or not A[0]:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, m):
            a_ic = A[i][c]
            row_i, row_r = A[i], A[r]
            for j in range(c + 1, n):
                row_i[j] = (p * row_i[j] - a_ic * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        r += 1
        if r == m:
            break
    return r


def bareiss_det(M) -> int | Fraction:
    """Determinant of a square matrix; exact integer when entries are integers."""
    A = _as_int_rows(M)
    if A is None:
        return _fraction_det(M)
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def _fraction_det(M) -> Fraction:
    R, pivots, swaps = _eliminate([[Fraction(x) for x in r] for r in _rows(M)], reduced=False)
    n = len(R)
    if len(pivots) < n:
        return Fraction(0)
    d = Fraction(-1 if swaps % 2 else 1)
    for i in range(n):
        d *= R[i][i]
    return d


def rank(M) -> int:
    return bareiss_rank(M)


def _eliminate(A: list[list[Fraction]], reduced: bool = True):
    m = len(A)
    n = len(A[0]) if m else 0
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
            swaps += 1
        if reduced:
            p = A[r][c]
            A[r] = [x / p for x in A[r]]
        for i in range(m):
            if i == r or (not reduced and i < r):
                continue
            f = A[i][c] / A[r][c]
            if f:
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return A, pivots, swaps


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals and the pivot columns."""
    A = [[Fraction(x) for x in r] for r in _rows(M)]
    R, pivots, _ = _eliminate(A, reduced=True)
    return R, pivots


def nullspace(M, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel {v : M v = 0}, one reduced vector per free column."""
    rows = _rows(M)
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(rows[0])
    R, pivots = rref(rows)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def independent_rows(M) -> list[int]:
    """Greedy choice, by increasing index, of rows spanning the row space."""
    chosen: list[int] = []
    current = 0
    rows = _rows(M)
    for i, r in enumerate(rows):
        trial = [rows[k] for k in chosen] + [r]
        rk = bareiss_rank(trial)
        if rk > current:
            chosen.append(i)
            current = rk
    return chosen


def same_row_space(A, B) -> bool:
    """True when two families of vectors span the same rational subspace."""
    A, B = _rows(A), _rows(B)
    if not A and not B:
        return True
    if not A:
        return bareiss_rank(B) == 0
    if not B:
        return bareiss_rank(A) == 0
    ra, rb = bareiss_rank(A), bareiss_rank(B)
    return ra == rb == bareiss_rank(A + B)


def inverse(M) -> list[list[Fraction]]:
    """Exact inverse of a square rational matrix."""
    rows = _rows(M)
    n = len(rows)
    aug = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return [r[n:] for r in R]


def to_fraction_array(M: Sequence[Sequence]) -> np.ndarray:
    """Object array of Fractions, the container used for rational matrices."""
    rows = _rows(M)
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = Fraction(x)
    return out
