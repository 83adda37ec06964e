# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled row reduction and matrix products over prime fields.

Entries are int64 residues in [0, p) with p < 2**31, so every product of two
residues fits in 62 bits.
"""
import numpy as np
cimport numpy as cnp

ctypedef long long i64


cdef inline i64 _inv_mod(i64 a, i64 p):
    cdef i64 t = 0, new_t = 1, r = p, new_r = a, q, tmp
    while new_r != 0:
        q = r // new_r
        tmp = t - q * new_t
        t = new_t
        new_t = tmp
        tmp = r - q * new_r
        r = new_r
        new_r = tmp
    if t < 0:
        t += p
    return t


def rref_mod(A, i64 p):
    """Return ``(R, pivots)`` with R the reduced row echelon form of A mod p."""
    cdef cnp.ndarray[i64, ndim=2] R = np.ascontiguousarray(A, dtype=np.int64) % p
    cdef Py_ssize_t rows = R.shape[0], cols = R.shape[1]
    cdef Py_ssize_t r = 0, c, k, i, j
    cdef i64 inv, f, v
    cdef i64[:, ::1] M = R
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        k = r
        while k < rows and M[k, c] == 0:
            k += 1
        if k == rows:
            continue
        if k != r:
            for j in range(c, cols):
                v = M[r, j]
                M[r, j] = M[k, j]
                M[k, j] = v
        inv = _inv_mod(M[r, c], p)
        if inv != 1:
            for j in range(c, cols):
                M[r, j] = (M[r, j] * inv) % p
        for i in range(rows):
            if i == r:
                continue
            f = M[i, c]
            if f == 0:
                continue
            f = p - f
            for j in range(c, cols):
                if M[r, j] != 0:
                    M[i, j] = (M[i, j] + f * M[r, j]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def matmul_mod(A, B, i64 p):
    """Return ``A @ B mod p`` without overflow for any p < 2**31."""
    cdef i64[:, ::1] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef i64[:, ::1] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t n = a.shape[0], m = a.shape[1], q = b.shape[1]
    cdef cnp.ndarray[i64, ndim=2] C = np.zeros((n, q), dtype=np.int64)
    cdef i64[:, ::1] c = C
    cdef Py_ssize_t i, j, k, pending
    cdef i64 x
    # products are summed unreduced while the total stays below 2**63
    cdef i64 room = (9223372036854775807 - p) // ((p - 1) * (p - 1)) if p > 2 else 9223372036854775807
    for i in range(n):
        pending = 0
        for k in range(m):
            x = a[i, k]
            if x == 0:
                continue
            if pending == room:
                for j in range(q):
                    c[i, j] = c[i, j] % p
                pending = 0
            for j in range(q):
                c[i, j] += x * b[k, j]
            pending += 1
        for j in range(q):
            c[i, j] = c[i, j] % p
    return C
