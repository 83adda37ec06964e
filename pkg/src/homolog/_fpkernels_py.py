"""Numpy fallback for the compiled prime-field kernels."""
from __future__ import annotations

import numpy as np

_LIMIT = 2**63 - 1


def rref_mod(A, p: int):
    """Return ``(R, pivots)`` with R the reduced row echelon form of A mod p."""
    R = np.array(A, dtype=np.int64) % p
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(R[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            R[[r, k]] = R[[k, r]]
        inv = pow(int(R[r, c]), p - 2, p)
        if inv != 1:
            R[r] = (R[r] * inv) % p
        col = R[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            R[hit] = (R[hit] - np.outer(col[hit], R[r])) % p
        pivots.append(c)
        r += 1
    return R, pivots


def matmul_mod(A, B, p: int):
    """Return ``A @ B mod p`` without int64 overflow."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    inner = A.shape[1]
    step = max(1, _LIMIT // max(1, (p - 1) ** 2))
    if inner <= step:
        return (A @ B) % p
    C = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, inner, step):
        C = (C + (A[:, s:s + step] @ B[s:s + step]) % p) % p
    return C
