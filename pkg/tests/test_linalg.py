from __future__ import annotations

from fractions import Fraction

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from efforge import linalg

F = Fraction

matrices = st.integers(1, 5).flatmap(
    lambda m: st.integers(1, 5).flatmap(
        lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=m, max_size=m)))


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_rank_nullity(rows):
    A = [[F(v) for v in r] for r in rows]
    n = len(A[0])
    N = linalg.nullspace(A, n)
    assert linalg.rank(A, n) == np.linalg.matrix_rank(np.array(rows, dtype=float))
    assert linalg.rank(A, n) + len(N) == n
    for v in N:
        assert all(sum(a * x for a, x in zip(r, v)) == 0 for r in A)
    if N:
        assert linalg.rank(N, n) == len(N)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_left_nullspace(rows):
    A = [[F(v) for v in r] for r in rows]
    m, n = len(A), len(A[0])
    W = linalg.left_nullspace(A, m, n)
    assert len(W) == m - linalg.rank(A, n)
    for w in W:
        assert all(sum(w[i] * A[i][j] for i in range(m)) == 0 for j in range(n))


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                                                       min_size=n, max_size=n)))
def test_inverse_and_solve(rows):
    A = [[F(v) for v in r] for r in rows]
    n = len(A)
    if linalg.rank(A, n) < n:
        return
    inv = linalg.inverse(A)
    eye = linalg.matmul(A, inv)
    assert eye == [[F(int(i == j)) for j in range(n)] for i in range(n)]
    b = [F(i + 1, 3) for i in range(n)]
    x = linalg.solve_square(A, b)
    assert [sum(a * v for a, v in zip(r, x)) for r in A] == b
