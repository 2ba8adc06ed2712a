"""Small exact linear algebra over ``Fraction`` matrices (lists of rows)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list[Fraction]]


def rref(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> tuple[Matrix, list[int]]:
    """Reduced row echelon form and the pivot column of each nonzero row."""
    A = [[Fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A[:r], pivots


def rank(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> Matrix:
    """Basis of ``{x : A x = 0}``, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def left_nullspace(rows: Sequence[Sequence[Fraction]], nrows: int, ncols: int) -> Matrix:
    """Basis of ``{w : w A = 0}`` for an ``nrows x ncols`` matrix."""
    At = [[rows[i][j] for i in range(nrows)] for j in range(ncols)]
    return nullspace(At, nrows)


def solve_square(A: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> list[Fraction]:
    """Unique solution of a regular square system."""
    n = len(A)
    R, pivots = rref([list(A[i]) + [b[i]] for i in range(n)], n + 1)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [R[i][n] for i in range(n)]


def inverse(A: Sequence[Sequence[Fraction]]) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    R, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in R]


def matmul(A: Sequence[Sequence[Fraction]], B: Sequence[Sequence[Fraction]]) -> Matrix:
    if not A:
        return []
    cols = len(B[0]) if B else 0
    return [
        [sum((a * B[k][j] for k, a in enumerate(row) if a), Fraction(0)) for j in range(cols)]
        for row in A
    ]
