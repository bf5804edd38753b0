"""Pure-Python/numpy implementations of the hot kernels.

Every function here has a twin in ``_ckernels.pyx`` with identical semantics
and identical (deterministic) output.  The int64 entry points raise
``OverflowError`` instead of silently wrapping; callers then switch to the
object-dtype path, which works with unbounded Python integers.
"""

from __future__ import annotations

import numpy as np

_SAFE = float(2**62)


def rref_mod_p(A, p):
    """Reduced row echelon form of ``A`` over GF(p).

    ``p`` must be a prime below 2**31.  Returns ``(R, pivots)`` with ``R`` an
    int64 array with entries in ``[0, p)`` and ``pivots`` the list of pivot
    columns.  Pivot rule: leftmost column, first nonzero row.
    """
    R = np.array(A, dtype=np.int64) % p
    m, n = R.shape
    pivots = []
    row = 0
    for col in range(n):
        if row >= m:
            break
        nz = np.flatnonzero(R[row:, col])
        if nz.size == 0:
            continue
        i = row + int(nz[0])
        if i != row:
            R[[row, i]] = R[[i, row]]
        inv = pow(int(R[row, col]), p - 2, p)
        R[row] = (R[row] * inv) % p
        f = R[:, col].copy()
        f[row] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            R[hit] = (R[hit] - np.outer(f[hit], R[row]) % p) % p
        pivots.append(col)
        row += 1
    return R, pivots


def matmul_mod_p(A, B, p):
    """``A @ B mod p`` for int64 operands with entries in ``[0, p)``, p < 2**31."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    lo = B & 0xFFFF
    hi = B >> 16
    # split keeps every partial sum below 2**63 for inner dimensions < 2**15
    if A.shape[1] >= 2**15:
        raise ValueError("inner dimension too large for matmul_mod_p")
    part_hi = (A @ hi) % p
    return ((A @ lo) % p + (part_hi << 16) % p) % p


def bareiss_pivot(T, r, s, prev):
    """Fraction-free pivot on int64 tableau ``T`` at ``(r, s)``.

    Returns a new array ``out`` with ``out[i] = (T[r,s]*T[i] - T[i,s]*T[r]) // prev``
    for ``i != r`` and ``out[r] = T[r]``.  Raises OverflowError if any
    intermediate might leave int64.
    """
    piv = int(T[r, s])
    col = T[:, s]
    row = T[r]
    big = float(np.abs(T).max()) if T.size else 0.0
    bound = abs(piv) * big + float(np.abs(col).max()) * float(np.abs(row).max())
    if bound >= _SAFE:
        raise OverflowError("bareiss_pivot: int64 range exceeded")
    out = (piv * T - np.outer(col, row)) // prev
    out[r] = row
    return out


def bareiss_pivot_object(T, r, s, prev):
    """Object-dtype (unbounded integer) variant of :func:`bareiss_pivot`."""
    piv = T[r, s]
    row = T[r].copy()
    out = (piv * T - np.outer(T[:, s], row)) // prev
    out[r] = row
    return out


def _floordiv(a, b):
    return a // b


def smith_lists(A):
    """Smith normal form by unimodular row/column operations on list rows.

    ``A`` is a list of lists of Python ints (modified in place into D).
    Returns ``(D, U, Uinv, V, Vinv)`` with ``U @ A0 @ V == D``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Uinv = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]
    Vinv = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_swap(a, b):
        A[a], A[b] = A[b], A[a]
        U[a], U[b] = U[b], U[a]
        for rw in Uinv:
            rw[a], rw[b] = rw[b], rw[a]

    def col_swap(a, b):
        for rw in A:
            rw[a], rw[b] = rw[b], rw[a]
        for rw in V:
            rw[a], rw[b] = rw[b], rw[a]
        Vinv[a], Vinv[b] = Vinv[b], Vinv[a]

    def row_axpy(dst, src, q):
        # row_dst -= q * row_src
        rd, rs = A[dst], A[src]
        for j in range(n):
            if rs[j]:
                rd[j] -= q * rs[j]
        ud, us = U[dst], U[src]
        for j in range(m):
            if us[j]:
                ud[j] -= q * us[j]
        for rw in Uinv:
            if rw[dst]:
                rw[src] += q * rw[dst]

    def col_axpy(dst, src, q):
        # col_dst -= q * col_src
        for rw in A:
            if rw[src]:
                rw[dst] -= q * rw[src]
        for rw in V:
            if rw[src]:
                rw[dst] -= q * rw[src]
        vs, vd = Vinv[src], Vinv[dst]
        for j in range(n):
            if vd[j]:
                vs[j] += q * vd[j]

    t = 0
    while t < min(m, n):
        best = 0
        bi = bj = -1
        for i in range(t, m):
            rw = A[i]
            for j in range(t, n):
                a = rw[j]
                if a and (best == 0 or abs(a) < best):
                    best, bi, bj = abs(a), i, j
                    if best == 1:
                        break
            if best == 1:
                break
        if best == 0:
            break
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        while True:
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    row_axpy(i, t, _floordiv(A[i][t], p))
            for j in range(t + 1, n):
                if A[t][j]:
                    col_axpy(j, t, _floordiv(A[t][j], p))
            best = 0
            bi = bj = -1
            for i in range(t + 1, m):
                a = A[i][t]
                if a and (best == 0 or abs(a) < best):
                    best, bi, bj = abs(a), i, t
            for j in range(t + 1, n):
                a = A[t][j]
                if a and (best == 0 or abs(a) < best):
                    best, bi, bj = abs(a), t, j
            if best:
                if bi != t:
                    row_swap(t, bi)
                else:
                    col_swap(t, bj)
                continue
            bad = -1
            if abs(p) != 1:
                for i in range(t + 1, m):
                    rw = A[i]
                    for j in range(t + 1, n):
                        if rw[j] % p:
                            bad = i
                            break
                    if bad >= 0:
                        break
            if bad < 0:
                break
            # row_t += row_bad
            row_axpy(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
            for rw in Uinv:
                rw[t] = -rw[t]
        t += 1
    return A, U, Uinv, V, Vinv


def smith_int64(A):
    """Pure-Python backend has no separate fixed-width path; alias."""
    rows = [[int(a) for a in r] for r in np.asarray(A).tolist()]
    return smith_lists(rows)
