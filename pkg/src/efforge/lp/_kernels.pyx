# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled tableau kernels for the exact simplex.

The tableau holds integers ``T`` with a common positive denominator ``D``;
the represented rational entries are ``T / D``.  All divisions below are
exact, so C truncation and floor division agree.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()

BACKEND = "cython"


def pivot(int64_t[:, ::1] T, Py_ssize_t r, Py_ssize_t c, int64_t D):
    """Integer-preserving pivot on ``T[r, c]`` in place.

    The pivot row is left unchanged and the new common denominator is
    ``T[r, c]``.  Returns the largest absolute value written.  The caller
    guarantees that all entries stay below 2**31 in magnitude, so no
    intermediate product can overflow.
    """
    cdef Py_ssize_t m = T.shape[0], n = T.shape[1]
    cdef Py_ssize_t i, j, k, nnz = 0
    cdef int64_t p = T[r, c], f, v, big = 0
    cdef Py_ssize_t[::1] cols = np.empty(n, dtype=np.intp)
    cdef int64_t[::1] prow = T[r]

    for j in range(n):
        if prow[j] != 0:
            cols[nnz] = j
            nnz += 1

    if p == D:
        # Rows without an entry in the pivot column are untouched, and the
        # others only change where the pivot row is nonzero.
        for i in range(m):
            if i == r:
                continue
            f = T[i, c]
            if f == 0:
                continue
            for k in range(nnz):
                j = cols[k]
                v = T[i, j] - (f * prow[j]) / D
                T[i, j] = v
                if v < 0:
                    v = -v
                if v > big:
                    big = v
    else:
        for i in range(m):
            if i == r:
                continue
            f = T[i, c]
            if f == 0:
                for j in range(n):
                    if T[i, j] != 0:
                        v = (p * T[i, j]) / D
                        T[i, j] = v
                        if v < 0:
                            v = -v
                        if v > big:
                            big = v
            else:
                for j in range(n):
                    v = (p * T[i, j] - f * prow[j]) / D
                    T[i, j] = v
                    if v < 0:
                        v = -v
                    if v > big:
                        big = v
    return big


def entering_bland(int64_t[::1] obj, cnp.uint8_t[::1] eligible):
    """Smallest eligible column with a positive reduced cost, or -1."""
    cdef Py_ssize_t j, n = eligible.shape[0]
    for j in range(n):
        if eligible[j] and obj[j] > 0:
            return j
    return -1


def leaving_bland(int64_t[:, ::1] T, Py_ssize_t c, Py_ssize_t m, Py_ssize_t[::1] basis):
    """Row of the minimum ratio test on column ``c``; ties go to the
    smallest basic variable index.  Returns -1 when the column has no
    positive entry (the LP is unbounded along it)."""
    cdef Py_ssize_t i, best = -1, rhs = T.shape[1] - 1
    cdef int64_t a, b, ba = 0, bb = 0, lhs, rhs_v
    for i in range(m):
        a = T[i, c]
        if a <= 0:
            continue
        b = T[i, rhs]
        if best < 0:
            best, ba, bb = i, a, b
            continue
        # compare b / a against bb / ba
        lhs = b * ba
        rhs_v = bb * a
        if lhs < rhs_v or (lhs == rhs_v and basis[i] < basis[best]):
            best, ba, bb = i, a, b
    return best
