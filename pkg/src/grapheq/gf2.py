"""Dense GF(2) linear algebra on numpy uint8 matrices.

Rows are constraint vectors over bits; all arithmetic is XOR based and exact.
"""

from __future__ import annotations

import numpy as np


def as_matrix(rows, width: int) -> np.ndarray:
    """Pack an iterable of 0/1 row vectors into a (m, width) uint8 matrix."""
    data = list(rows)
    if not data:
        return np.zeros((0, width), dtype=np.uint8)
    mat = np.array(data, dtype=np.uint8)
    if mat.ndim == 1:
        mat = mat.reshape(1, -1)
    if mat.shape[1] != width:
        raise ValueError(f"expected width {width}, got {mat.shape[1]}")
    return mat & 1


def rref(mat: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form. Returns (reduced copy, pivot column list)."""
    a = (np.asarray(mat, dtype=np.uint8) & 1).copy()
    nrows, ncols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + int(hits[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        for o in np.nonzero(a[:, c])[0]:
            if o != r:
                a[o] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(mat: np.ndarray) -> int:
    return len(rref(mat)[1])


def nullspace(mat: np.ndarray) -> np.ndarray:
    """Basis of {x : mat @ x = 0}, one vector per row (may be empty)."""
    a, pivots = rref(mat)
    ncols = a.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = np.zeros((len(free), ncols), dtype=np.uint8)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, p in enumerate(pivots):
            basis[i, p] = a[row, f]
    return basis


def solve(mat: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    """One solution of mat @ x = rhs, or None if the system is inconsistent.

    Free variables are set to zero.
    """
    mat = np.asarray(mat, dtype=np.uint8) & 1
    rhs = np.asarray(rhs, dtype=np.uint8).reshape(-1) & 1
    nrows, ncols = mat.shape
    aug = np.concatenate([mat, rhs.reshape(-1, 1)], axis=1)
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = np.zeros(ncols, dtype=np.uint8)
    for row, p in enumerate(pivots):
        x[p] = red[row, ncols]
    return x


def reduce_augmented(rows: np.ndarray, rhs: np.ndarray) -> tuple[np.ndarray, np.ndarray] | None:
    """Row reduce the system [rows | rhs], dropping dependent rows.

    Returns (reduced rows, reduced rhs) with independent rows only, or None if
    some combination of rows yields 0 = 1.
    """
    rows = np.asarray(rows, dtype=np.uint8) & 1
    rhs = np.asarray(rhs, dtype=np.uint8).reshape(-1) & 1
    ncols = rows.shape[1]
    aug = np.concatenate([rows, rhs.reshape(-1, 1)], axis=1)
    red, pivots = rref(aug)
    if ncols in pivots:
        return None
    keep = len(pivots)
    return red[:keep, :ncols].copy(), red[:keep, ncols].copy()
