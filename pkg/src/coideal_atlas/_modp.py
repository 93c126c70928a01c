"""Compiled kernels for rank computations over Z/p with p < 2**31."""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _powmod(a, e, p):
    r = 1
    a %= p
    while e > 0:
        if e & 1:
            r = (r * a) % p
        a = (a * a) % p
        e >>= 1
    return r


@njit(cache=True)
def rank_mod(A, p):
    """Rank of A (int64, entries in [0,p)) over Z/p; A is destroyed."""
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if A[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                t = A[r, j]
                A[r, j] = A[piv, j]
                A[piv, j] = t
        inv = _powmod(A[r, c], p - 2, p)
        for i in range(r + 1, rows):
            f = (A[i, c] * inv) % p
            if f != 0:
                for j in range(c, cols):
                    A[i, j] = (A[i, j] - f * A[r, j]) % p
        r += 1
    return r


@njit(cache=True)
def eval_tensor(C, x, p):
    """C[i, j, d] coefficients (mod p) of polynomial entries; value at x."""
    rows, cols, deg = C.shape
    out = np.zeros((rows, cols), dtype=np.int64)
    pw = np.ones(deg, dtype=np.int64)
    for d in range(1, deg):
        pw[d] = (pw[d - 1] * x) % p
    for i in range(rows):
        for j in range(cols):
            s = 0
            for d in range(deg):
                c = C[i, j, d]
                if c != 0:
                    s = (s + c * pw[d]) % p
            out[i, j] = s
    return out


@njit(cache=True)
def grid_max_rank(C, p, npoints, start, stop_above):
    """Evaluate at x = start, ..., start+npoints-1 and return the largest
    rank seen, stopping early once it exceeds ``stop_above``."""
    best = 0
    for k in range(npoints):
        A = eval_tensor(C, start + k, p)
        r = rank_mod(A, p)
        if r > best:
            best = r
            if best > stop_above:
                return best
    return best
