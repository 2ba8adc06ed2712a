"""Pure-Python (numpy) tableau kernels; same contract as ``_kernels.pyx``."""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def pivot(T: np.ndarray, r: int, c: int, D: int) -> int:
    p = int(T[r, c])
    prow = T[r].copy()
    others = np.ones(T.shape[0], dtype=bool)
    others[r] = False
    if p == D:
        rows = np.flatnonzero((T[:, c] != 0) & others)
        if rows.size == 0:
            return 0
        cols = np.flatnonzero(prow)
        block = T[np.ix_(rows, cols)] - np.outer(T[rows, c], prow[cols]) // D
        T[np.ix_(rows, cols)] = block
        return int(np.abs(block).max()) if block.size else 0
    rows = np.flatnonzero(others)
    block = (p * T[rows] - np.outer(T[rows, c], prow)) // D
    T[rows] = block
    return int(np.abs(block).max()) if block.size else 0


def entering_bland(obj: np.ndarray, eligible: np.ndarray) -> int:
    hits = np.flatnonzero((obj > 0) & eligible.astype(bool))
    return int(hits[0]) if hits.size else -1


def leaving_bland(T: np.ndarray, c: int, m: int, basis: np.ndarray) -> int:
    col = T[:m, c]
    cand = np.flatnonzero(col > 0)
    if cand.size == 0:
        return -1
    rhs = T.shape[1] - 1
    best = int(cand[0])
    ba, bb = int(T[best, c]), int(T[best, rhs])
    for i in cand[1:]:
        i = int(i)
        a, b = int(T[i, c]), int(T[i, rhs])
        lhs, rhs_v = b * ba, bb * a
        if lhs < rhs_v or (lhs == rhs_v and basis[i] < basis[best]):
            best, ba, bb = i, a, b
    return best
