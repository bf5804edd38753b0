# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Fixed-width (int64) arithmetic with explicit overflow detection: any
operation that would wrap raises OverflowError and leaves inputs untouched,
so the caller can retry on the unbounded-integer path.
"""

import numpy as np
cimport numpy as cnp
from cpython.mem cimport PyMem_Malloc, PyMem_Free

cnp.import_array()

ctypedef long long i64

cdef extern from *:
    """
    static inline int ihf_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int ihf_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    static inline int ihf_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    /* out = a @ b mod p, entries of a and b in [0, p); 128-bit row accumulator */
    static void ihf_matmul_mod(const long long *a, const long long *b, long long *out,
                               Py_ssize_t m, Py_ssize_t k, Py_ssize_t n, long long p,
                               unsigned __int128 *acc) {
        for (Py_ssize_t i = 0; i < m; i++) {
            for (Py_ssize_t j = 0; j < n; j++) acc[j] = 0;
            for (Py_ssize_t t = 0; t < k; t++) {
                unsigned long long ait = (unsigned long long)a[i * k + t];
                if (!ait) continue;
                const long long *brow = b + t * n;
                for (Py_ssize_t j = 0; j < n; j++) acc[j] += (unsigned __int128)ait * (unsigned long long)brow[j];
            }
            for (Py_ssize_t j = 0; j < n; j++) out[i * n + j] = (long long)(acc[j] % (unsigned long long)p);
        }
    }
    """
    bint ihf_mul(i64 a, i64 b, i64 *r) nogil
    bint ihf_sub(i64 a, i64 b, i64 *r) nogil
    bint ihf_add(i64 a, i64 b, i64 *r) nogil
    ctypedef struct u128 "unsigned __int128":
        pass
    void ihf_matmul_mod(const i64 *a, const i64 *b, i64 *out, Py_ssize_t m, Py_ssize_t k,
                        Py_ssize_t n, i64 p, u128 *acc) nogil


cdef inline i64 _mod(i64 a, i64 p) nogil:
    cdef i64 r = a % p
    if r < 0:
        r += p
    return r


cdef inline i64 _floordiv(i64 a, i64 b) nogil:
    cdef i64 q = a / b
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef i64 _powmod(i64 base, i64 e, i64 p) nogil:
    cdef i64 result = 1
    base = _mod(base, p)
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def rref_mod_p(A, long long p):
    cdef cnp.ndarray[i64, ndim=2] Rarr = np.array(A, dtype=np.int64) % p
    cdef i64[:, ::1] R = np.ascontiguousarray(Rarr)
    cdef Py_ssize_t m = R.shape[0], n = R.shape[1]
    cdef Py_ssize_t row = 0, col, i, j, piv_i
    cdef i64 inv, f, tmp
    pivots = []
    with nogil:
        for col in range(n):
            if row >= m:
                break
            piv_i = -1
            for i in range(row, m):
                if R[i, col] != 0:
                    piv_i = i
                    break
            if piv_i < 0:
                continue
            if piv_i != row:
                for j in range(n):
                    tmp = R[row, j]
                    R[row, j] = R[piv_i, j]
                    R[piv_i, j] = tmp
            inv = _powmod(R[row, col], p - 2, p)
            for j in range(n):
                R[row, j] = (R[row, j] * inv) % p
            for i in range(m):
                if i == row:
                    continue
                f = R[i, col]
                if f == 0:
                    continue
                for j in range(n):
                    if R[row, j] != 0:
                        R[i, j] = _mod(R[i, j] - (f * R[row, j]) % p, p)
            with gil:
                pivots.append(col)
            row += 1
    return np.asarray(R), pivots


def matmul_mod_p(A, B, long long p):
    cdef i64[:, ::1] a = np.ascontiguousarray(A, dtype=np.int64)
    cdef i64[:, ::1] b = np.ascontiguousarray(B, dtype=np.int64)
    cdef Py_ssize_t m = a.shape[0], k = a.shape[1], n = b.shape[1]
    if b.shape[0] != k:
        raise ValueError("shape mismatch")
    if k >= 2**15:
        raise ValueError("inner dimension too large for matmul_mod_p")
    out_arr = np.zeros((m, n), dtype=np.int64)
    if m == 0 or n == 0 or k == 0:
        return out_arr
    cdef i64[:, ::1] out = out_arr
    cdef u128 *acc = <u128 *> PyMem_Malloc(n * sizeof(u128))
    if acc == NULL:
        raise MemoryError()
    try:
        with nogil:
            ihf_matmul_mod(&a[0, 0], &b[0, 0], &out[0, 0], m, k, n, p, acc)
    finally:
        PyMem_Free(acc)
    return out_arr


def bareiss_pivot(T, Py_ssize_t r, Py_ssize_t s, long long prev):
    cdef i64[:, ::1] t = np.ascontiguousarray(T, dtype=np.int64)
    cdef Py_ssize_t m = t.shape[0], n = t.shape[1], i, j
    out_arr = np.empty((m, n), dtype=np.int64)
    cdef i64[:, ::1] out = out_arr
    cdef i64 piv = t[r, s], cis, x, y, z
    cdef bint bad = False
    with nogil:
        for i in range(m):
            if i == r:
                for j in range(n):
                    out[i, j] = t[i, j]
                continue
            cis = t[i, s]
            for j in range(n):
                if ihf_mul(piv, t[i, j], &x):
                    bad = True
                    break
                if ihf_mul(cis, t[r, j], &y):
                    bad = True
                    break
                if ihf_sub(x, y, &z):
                    bad = True
                    break
                out[i, j] = z / prev
            if bad:
                break
    if bad:
        raise OverflowError("bareiss_pivot: int64 range exceeded")
    return out_arr


cdef class _Smith:
    cdef i64[:, ::1] A
    cdef i64[:, ::1] U
    cdef i64[:, ::1] Ui
    cdef i64[:, ::1] V
    cdef i64[:, ::1] Vi
    cdef Py_ssize_t m, n

    def __init__(self, A):
        self.A = np.array(A, dtype=np.int64, order="C")
        self.m = self.A.shape[0]
        self.n = self.A.shape[1]
        self.U = np.eye(self.m, dtype=np.int64)
        self.Ui = np.eye(self.m, dtype=np.int64)
        self.V = np.eye(self.n, dtype=np.int64)
        self.Vi = np.eye(self.n, dtype=np.int64)

    cdef void row_swap(self, Py_ssize_t a, Py_ssize_t b):
        cdef Py_ssize_t j
        cdef i64 tmp
        for j in range(self.n):
            tmp = self.A[a, j]; self.A[a, j] = self.A[b, j]; self.A[b, j] = tmp
        for j in range(self.m):
            tmp = self.U[a, j]; self.U[a, j] = self.U[b, j]; self.U[b, j] = tmp
        for j in range(self.m):
            tmp = self.Ui[j, a]; self.Ui[j, a] = self.Ui[j, b]; self.Ui[j, b] = tmp

    cdef void col_swap(self, Py_ssize_t a, Py_ssize_t b):
        cdef Py_ssize_t j
        cdef i64 tmp
        for j in range(self.m):
            tmp = self.A[j, a]; self.A[j, a] = self.A[j, b]; self.A[j, b] = tmp
        for j in range(self.n):
            tmp = self.V[j, a]; self.V[j, a] = self.V[j, b]; self.V[j, b] = tmp
        for j in range(self.n):
            tmp = self.Vi[a, j]; self.Vi[a, j] = self.Vi[b, j]; self.Vi[b, j] = tmp

    cdef int axpy(self, i64 *dst, i64 *src, i64 q) except -1:
        cdef i64 prod, res
        if src[0] == 0:
            return 0
        if ihf_mul(q, src[0], &prod) or ihf_sub(dst[0], prod, &res):
            raise OverflowError("smith: int64 range exceeded")
        dst[0] = res
        return 0

    cdef int row_axpy(self, Py_ssize_t dst, Py_ssize_t src, i64 q) except -1:
        # row_dst -= q * row_src
        cdef Py_ssize_t j
        for j in range(self.n):
            self.axpy(&self.A[dst, j], &self.A[src, j], q)
        for j in range(self.m):
            self.axpy(&self.U[dst, j], &self.U[src, j], q)
        for j in range(self.m):
            self.axpy(&self.Ui[j, src], &self.Ui[j, dst], -q)
        return 0

    cdef int col_axpy(self, Py_ssize_t dst, Py_ssize_t src, i64 q) except -1:
        # col_dst -= q * col_src
        cdef Py_ssize_t j
        for j in range(self.m):
            self.axpy(&self.A[j, dst], &self.A[j, src], q)
        for j in range(self.n):
            self.axpy(&self.V[j, dst], &self.V[j, src], q)
        for j in range(self.n):
            self.axpy(&self.Vi[src, j], &self.Vi[dst, j], -q)
        return 0

    cdef int run(self) except -1:
        cdef Py_ssize_t m = self.m, n = self.n
        cdef Py_ssize_t t = 0, i, j, bi, bj, bad
        cdef i64 best, a, p
        while t < min(m, n):
            best = 0
            bi = -1
            bj = -1
            for i in range(t, m):
                for j in range(t, n):
                    a = self.A[i, j]
                    if a < 0:
                        a = -a
                    if a != 0 and (best == 0 or a < best):
                        best = a; bi = i; bj = j
                        if best == 1:
                            break
                if best == 1:
                    break
            if best == 0:
                break
            if bi != t:
                self.row_swap(t, bi)
            if bj != t:
                self.col_swap(t, bj)
            while True:
                p = self.A[t, t]
                for i in range(t + 1, m):
                    if self.A[i, t] != 0:
                        self.row_axpy(i, t, _floordiv(self.A[i, t], p))
                for j in range(t + 1, n):
                    if self.A[t, j] != 0:
                        self.col_axpy(j, t, _floordiv(self.A[t, j], p))
                best = 0
                bi = -1
                bj = -1
                for i in range(t + 1, m):
                    a = self.A[i, t]
                    if a < 0:
                        a = -a
                    if a != 0 and (best == 0 or a < best):
                        best = a; bi = i; bj = t
                for j in range(t + 1, n):
                    a = self.A[t, j]
                    if a < 0:
                        a = -a
                    if a != 0 and (best == 0 or a < best):
                        best = a; bi = t; bj = j
                if best != 0:
                    if bi != t:
                        self.row_swap(t, bi)
                    else:
                        self.col_swap(t, bj)
                    continue
                bad = -1
                if p != 1 and p != -1:
                    for i in range(t + 1, m):
                        for j in range(t + 1, n):
                            if self.A[i, j] % p != 0:
                                bad = i
                                break
                        if bad >= 0:
                            break
                if bad < 0:
                    break
                self.row_axpy(t, bad, -1)
            if self.A[t, t] < 0:
                for j in range(n):
                    self.A[t, j] = -self.A[t, j]
                for j in range(m):
                    self.U[t, j] = -self.U[t, j]
                for j in range(m):
                    self.Ui[j, t] = -self.Ui[j, t]
            t += 1
        return 0


def smith_int64(A):
    """Returns ``(D, U, Uinv, V, Vinv)`` as lists of lists of Python ints."""
    cdef _Smith s = _Smith(A)
    s.run()
    return (np.asarray(s.A).tolist(), np.asarray(s.U).tolist(),
            np.asarray(s.Ui).tolist(), np.asarray(s.V).tolist(),
            np.asarray(s.Vi).tolist())
