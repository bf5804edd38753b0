"""Exact integer and rational linear algebra.

* Smith normal form with unimodular transforms (and their inverses).
* Integer linear solving via the Smith form.
* Rational solving, nullspaces and ranks by p-adic (Dixon) lifting with a
  final verification over the rationals: every answer returned here has
  been checked by exact multiplication.
* LP feasibility over the rationals by a fraction-free simplex method with
  Bland's rule, returning either a feasible point or a Farkas certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from . import _kernels


class ShapeMismatch(ValueError):
    pass


class VerificationError(RuntimeError):
    """An exact re-check of a computed result failed (a bug, never expected)."""


# ---------------------------------------------------------------- helpers


_ZERO = Fraction(0)


def as_fraction(v) -> Fraction:
    t = type(v)
    if t is Fraction:
        return v
    if t is int:
        return Fraction(v) if v else _ZERO
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v)) if v else _ZERO
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, float):
        raise TypeError("floats are not accepted in exact computations")
    return Fraction(v)


def int_matrix(A) -> np.ndarray:
    """Object array of Python ints (no wraparound)."""
    arr = np.array(A, dtype=object)
    if arr.ndim == 1 and arr.size == 0:
        arr = arr.reshape(0, 0)
    return np.vectorize(int, otypes=[object])(arr) if arr.size else arr.astype(object)


def frac_matrix(A) -> np.ndarray:
    arr = np.array(A, dtype=object)
    if arr.size == 0:
        return arr.astype(object)
    return np.vectorize(as_fraction, otypes=[object])(arr)


def lcm_all(values) -> int:
    return reduce(math.lcm, values, 1)


def _as_int64(arr):
    """int64 copy of an integer array, or None if some entry does not fit."""
    if isinstance(arr, np.ndarray) and arr.dtype == np.int64:
        return arr
    try:
        return np.asarray(arr).astype(np.int64)
    except (OverflowError, TypeError, ValueError):
        return None


def _max_abs(arr) -> int:
    a = _as_int64(arr)
    if a is not None:
        return int(np.abs(a).max()) if a.size else 0
    return max(abs(int(v)) for v in np.asarray(arr).flat)


def _fits_int64(arr, slack=1) -> bool:
    if arr.size == 0:
        return True
    return _max_abs(arr) * slack < 2**62


def _matmul_int(A, X):
    """Exact integer product, int64 when provably safe."""
    if A.size and X.size:
        a, x = _as_int64(A), _as_int64(X)
        if a is not None and x is not None:
            ma = int(np.abs(a).max())
            mx = int(np.abs(x).max())
            if ma * mx * max(A.shape[1], 1) < 2**62:
                return (a @ x).astype(object)
    return np.dot(np.asarray(A).astype(object), np.asarray(X).astype(object))


int_matmul = _matmul_int


def sparse_matvec(A, x) -> list:
    """``A @ x`` touching only the nonzero entries of ``A`` (exact)."""
    A = np.asarray(A, dtype=object)
    out = [0] * A.shape[0]
    if not A.size:
        return out
    rows, cols = np.nonzero(A)
    for i, j, a in zip(rows.tolist(), cols.tolist(), A[rows, cols].tolist()):
        v = x[j]
        if v:
            out[i] += a * v
    return out


def sparse_vecmat(y, A) -> list:
    """``y @ A`` touching only the nonzero entries of ``A`` (exact)."""
    A = np.asarray(A, dtype=object)
    out = [0] * (A.shape[1] if A.ndim == 2 else 0)
    if not A.size:
        return out
    rows, cols = np.nonzero(A)
    for i, j, a in zip(rows.tolist(), cols.tolist(), A[rows, cols].tolist()):
        v = y[i]
        if v:
            out[j] += v * a
    return out


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _primes_below(bound: int, count: int) -> list[int]:
    out = []
    n = bound - 1
    while len(out) < count:
        if _is_probable_prime(n):
            out.append(n)
        n -= 2 if n % 2 else 1
    return out


PRIMES = _primes_below(2**31, 24)


# ---------------------------------------------------------------- Smith form


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray
    U_inv: np.ndarray
    V_inv: np.ndarray

    @property
    def invariant_factors(self) -> list[int]:
        k = min(self.D.shape) if self.D.ndim == 2 else 0
        return [int(self.D[i, i]) for i in range(k) if self.D[i, i] != 0]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    def verify(self, A) -> bool:
        A = int_matrix(A).reshape(self.U.shape[0], self.V.shape[0])
        m, n = A.shape
        if not np.array_equal(np.dot(np.dot(self.U, A), self.V), self.D):
            return False
        if not np.array_equal(np.dot(self.U, self.U_inv), np.eye(m, dtype=int).astype(object)):
            return False
        if not np.array_equal(np.dot(self.V, self.V_inv), np.eye(n, dtype=int).astype(object)):
            return False
        for i in range(m):
            for j in range(n):
                if i != j and self.D[i, j] != 0:
                    return False
        d = self.invariant_factors
        if any(x <= 0 for x in d):
            return False
        return all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))


def smith(A) -> SmithDecomposition:
    """Smith normal form of an integer matrix.

    Pivoting takes the entry of least absolute value (row-major first
    occurrence), so the output is deterministic for a fixed input.
    """
    arr = np.array(A, dtype=object)
    if arr.ndim != 2:
        raise ShapeMismatch("smith expects a 2-D matrix")
    m, n = arr.shape
    if m == 0 or n == 0:
        eye_m = np.eye(m, dtype=int).astype(object)
        eye_n = np.eye(n, dtype=int).astype(object)
        return SmithDecomposition(eye_m, arr.astype(object).reshape(m, n), eye_n, eye_m.copy(), eye_n.copy())
    parts = None
    a64 = _as_int64(A)
    if a64 is not None and (not a64.size or int(np.abs(a64).max()) < 2**42):
        try:
            parts = _kernels.smith_int64(np.ascontiguousarray(a64))
        except OverflowError:
            parts = None
    if parts is None:
        parts = _kernels.smith_lists([[int(v) for v in r] for r in arr.tolist()])
    D, U, Ui, V, Vi = (np.array(p, dtype=object).reshape(s) for p, s in
                       zip(parts, [(m, n), (m, m), (m, m), (n, n), (n, n)]))
    return SmithDecomposition(U, D, V, Ui, Vi)


def integer_solve(A, b):
    """Integer solution of ``A x = b`` or ``None`` when none exists over Z."""
    A = int_matrix(A)
    b = [int(v) for v in b]
    if A.ndim != 2 or A.shape[0] != len(b):
        raise ShapeMismatch(f"A has shape {A.shape}, b has length {len(b)}")
    m, n = A.shape
    sd = smith(A)
    c = np.dot(sd.U, np.array(b, dtype=object)) if m else np.zeros(0, dtype=object)
    y = [0] * n
    for i in range(m):
        d = int(sd.D[i, i]) if i < n else 0
        ci = int(c[i])
        if d == 0:
            if ci != 0:
                return None
        else:
            if ci % d:
                return None
            y[i] = ci // d
    x = np.dot(sd.V, np.array(y, dtype=object)) if n else np.zeros(0, dtype=object)
    x = [int(v) for v in x]
    if m and list(np.dot(A, np.array(x, dtype=object))) != b:
        raise VerificationError("integer_solve residual nonzero")
    return x


# ---------------------------------------------------------------- rational solving


def _integerize_rows(A, b=None):
    """Scale each row of rational ``[A | b]`` to integers."""
    A = frac_matrix(A)
    m = A.shape[0]
    n = A.shape[1] if A.ndim == 2 else 0
    if b is not None:
        b = frac_matrix(b).reshape(m, -1)
    Ai = np.empty((m, n), dtype=object)
    bi = np.empty(b.shape, dtype=object) if b is not None else None
    for i in range(m):
        dens = [v.denominator for v in A[i]]
        if b is not None:
            dens += [v.denominator for v in b[i]]
        L = lcm_all(dens)
        Ai[i] = [v.numerator * (L // v.denominator) for v in A[i]]
        if b is not None:
            bi[i] = [v.numerator * (L // v.denominator) for v in b[i]]
    return Ai, bi


def _ratrecon(a: int, N: int):
    """Rational reconstruction of ``a mod N`` with |num|, den <= sqrt(N/2)."""
    bound = math.isqrt(N // 2)
    r0, r1 = N, a % N
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if s1 < 0:
        r1, s1 = -r1, -s1
    if math.gcd(r1, s1) != 1:
        return None
    return r1, s1


def _reconstruct_columns(X, N):
    """Reconstruct a p-adic matrix as (numerators, common denominator per column)."""
    n, k = X.shape
    nums = np.empty((n, k), dtype=object)
    dens = []
    for j in range(k):
        D = 1
        col = []
        for i in range(n):
            a = (int(X[i, j]) * D) % N
            rr = _ratrecon(a, N)
            if rr is None:
                return None
            num, den = rr
            if den != 1:
                col = [c * den for c in col]
                D *= den
            col.append(num)
        nums[:, j] = col
        dens.append(D)
    return nums, dens


def _hadamard_bits(M, B) -> int:
    """Bit bound on numerators/denominators of ``M^{-1} B`` (Cramer)."""
    logs = []
    for j in range(M.shape[1]):
        s = sum(int(v) * int(v) for v in M[:, j])
        logs.append(0.5 * math.log2(s) if s else 0.0)
    hb = sum(logs)
    bmax = max((abs(int(v)) for v in B.flat), default=1) or 1
    colmin = min(logs, default=0.0)
    return int(hb - colmin + math.log2(bmax) + 0.5 * math.log2(max(M.shape[0], 1))) + 4


def _inverse_mod_p(M, p):
    n = M.shape[0]
    aug = np.hstack([np.array([[int(v) % p for v in row] for row in M], dtype=np.int64).reshape(n, n),
                     np.eye(n, dtype=np.int64)])
    R, piv = _kernels.rref_mod_p(aug, p)
    if len(piv) < n or piv[n - 1] != n - 1:
        return None
    return np.ascontiguousarray(R[:, n:])


def _dixon(M, B, p):
    """Solve ``M X = B`` for square integer ``M`` invertible mod ``p``.

    Returns ``(nums, dens)`` (per column) or ``None`` if ``M`` is singular mod p.
    """
    n = M.shape[0]
    k = B.shape[1]
    if n == 0:
        return np.zeros((0, k), dtype=object), [1] * k
    Minv = _inverse_mod_p(M, p)
    if Minv is None:
        return None
    bits = 2 * _hadamard_bits(M, B) + 2
    iters = bits // 30 + 2
    M64 = M.astype(np.int64) if _fits_int64(M, slack=2**32 * max(n, 1)) else None
    R = B.copy()
    X = np.zeros((n, k), dtype=object)
    pk = 1
    check = 2
    for it in range(1, iters + 1):
        Rp = np.array([[int(v) % p for v in row] for row in R], dtype=np.int64).reshape(n, k)
        Xi = _kernels.matmul_mod_p(Minv, Rp, p)
        X = X + Xi.astype(object) * pk
        pk *= p
        if M64 is not None:
            prod = (M64 @ Xi).astype(object)
        else:
            prod = np.dot(M, Xi.astype(object))
        R = (R - prod) // p
        if it == check or it == iters:
            check *= 2
            rec = _reconstruct_columns(X, pk)
            if rec is None:
                continue
            nums, dens = rec
            if np.array_equal(np.dot(M, nums), B * np.array(dens, dtype=object)):
                return nums, dens
    raise VerificationError("p-adic lifting did not converge within the Cramer bound")


def _select_subsystem(Ai, p):
    """Pivot columns and rows of an integer matrix modulo p."""
    m, n = Ai.shape
    Ap = np.array([[int(v) % p for v in row] for row in Ai], dtype=np.int64).reshape(m, n)
    _, cols = _kernels.rref_mod_p(Ap, p)
    if not cols:
        return [], []
    _, rows = _kernels.rref_mod_p(np.ascontiguousarray(Ap[:, cols].T), p)
    return rows, cols


def _to_fractions(nums, dens):
    out = np.empty(nums.shape, dtype=object)
    for j, d in enumerate(dens):
        for i in range(nums.shape[0]):
            out[i, j] = Fraction(int(nums[i, j]), d)
    return out


def _solve_int_system(Ai, Bi, p):
    """Particular solution of ``Ai X = Bi`` via pivot subsystem mod p; unverified."""
    m, n = Ai.shape
    rows, cols = _select_subsystem(Ai, p)
    k = Bi.shape[1]
    X = np.empty((n, k), dtype=object)
    X[:] = Fraction(0)
    if cols:
        M = Ai[np.ix_(rows, cols)]
        res = _dixon(M, Bi[rows], p)
        if res is None:
            return None, cols
        X[cols] = _to_fractions(*res)
    return X, cols


def _residual_zero(A, X, B) -> bool:
    # A, B rational (object Fractions); X rational
    return np.array_equal(np.dot(A, X), B)


def _int_verify(Ai, X, Bi) -> bool:
    n, k = X.shape
    for j in range(k):
        L = lcm_all(v.denominator for v in X[:, j])
        col = np.array([v.numerator * (L // v.denominator) for v in X[:, j]], dtype=object)
        if not np.array_equal(_matmul_int(Ai, col.reshape(-1, 1)).reshape(-1), Bi[:, j] * L):
            return False
    return True


def rational_solve(A, b, *, certificate=False):
    """Exact rational solution of ``A x = b``.

    Returns a tuple of Fractions, or ``None`` if the system is inconsistent.
    With ``certificate=True`` returns ``("solution", x)`` or
    ``("inconsistent", y)`` where ``y A = 0`` and ``y b = 1``.
    """
    A = frac_matrix(A)
    if A.ndim != 2:
        raise ShapeMismatch("A must be 2-D")
    m, n = A.shape
    bvec = frac_matrix(b).reshape(-1)
    if bvec.shape[0] != m:
        raise ShapeMismatch(f"A has {m} rows, b has {bvec.shape[0]} entries")
    if m == 0:
        x = tuple(Fraction(0) for _ in range(n))
        return ("solution", x) if certificate else x
    Ai, Bi = _integerize_rows(A, bvec.reshape(m, 1))
    At = np.vstack([A.T, bvec.reshape(1, m)]) if n else bvec.reshape(1, m)
    rhs_t = np.array([Fraction(0)] * n + [Fraction(1)], dtype=object)
    Ati, Bti = _integerize_rows(At, rhs_t.reshape(-1, 1))
    for p in PRIMES:
        X, _ = _solve_int_system(Ai, Bi, p)
        if X is not None and _int_verify(Ai, X, Bi):
            x = tuple(X[:, 0])
            return ("solution", x) if certificate else x
        Y, _ = _solve_int_system(Ati, Bti, p)
        if Y is not None and _int_verify(Ati, Y, Bti):
            return ("inconsistent", tuple(Y[:, 0])) if certificate else None
    res = _solve_fraction_gauss(A, bvec)
    if res is None:
        return ("inconsistent", None) if certificate else None
    return ("solution", res) if certificate else res


def rational_nullspace(A) -> list[tuple[Fraction, ...]]:
    """Basis of the rational kernel of ``A`` (one vector per free column)."""
    A = frac_matrix(A)
    m, n = A.shape
    if n == 0:
        return []
    if m == 0:
        return [tuple(Fraction(int(i == j)) for i in range(n)) for j in range(n)]
    Ai, _ = _integerize_rows(A)
    for p in PRIMES:
        rows, cols = _select_subsystem(Ai, p)
        free = [j for j in range(n) if j not in set(cols)]
        if not free:
            # full column rank certified by an invertible minor mod p
            return []
        basis = np.empty((n, len(free)), dtype=object)
        basis[:] = Fraction(0)
        for t, f in enumerate(free):
            basis[f, t] = Fraction(1)
        if cols:
            M = Ai[np.ix_(rows, cols)]
            rhs = -Ai[np.ix_(rows, free)]
            res = _dixon(M, rhs, p)
            if res is None:
                continue
            basis[cols] = _to_fractions(*res)
        if _int_verify(Ai, basis, np.zeros((m, len(free)), dtype=object)):
            return [tuple(basis[:, t]) for t in range(len(free))]
    return _nullspace_fraction_gauss(A)


def rank_mod_p(A, p: int = PRIMES[0]) -> int:
    """Rank of the row-integerized rational matrix over GF(p).

    Never exceeds the rank over Q, so it certifies a lower bound.
    """
    A = frac_matrix(A)
    if A.ndim != 2 or 0 in A.shape:
        return 0
    Ai, _ = _integerize_rows(A)
    m, n = Ai.shape
    Ap = np.array([[int(v) % p for v in row] for row in Ai], dtype=np.int64).reshape(m, n)
    return len(_kernels.rref_mod_p(Ap, p)[1])


def rational_rank(A) -> int:
    """Exact rank over Q.

    The pivot minor found mod p is nonzero over Z (lower bound); a verified
    kernel of complementary dimension on the smaller side gives the upper
    bound.
    """
    A = frac_matrix(A)
    if A.ndim != 2 or 0 in A.shape:
        return 0
    m, n = A.shape
    if m < n:
        return m - len(rational_nullspace(A.T))
    return n - len(rational_nullspace(A))


def _rref_fraction(M):
    M = [list(r) for r in M]
    m = len(M)
    n = len(M[0]) if m else 0
    piv = []
    r = 0
    for c in range(n):
        k = next((i for i in range(r, m) if M[i][c] != 0), None)
        if k is None:
            continue
        M[r], M[k] = M[k], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        piv.append(c)
        r += 1
        if r == m:
            break
    return M, piv


def _solve_fraction_gauss(A, b):
    m, n = A.shape
    aug = [[as_fraction(v) for v in A[i]] + [as_fraction(b[i])] for i in range(m)]
    R, piv = _rref_fraction(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(piv):
        x[c] = R[i][n]
    return tuple(x)


def _nullspace_fraction_gauss(A):
    m, n = A.shape
    R, piv = _rref_fraction([[as_fraction(v) for v in row] for row in A])
    free = [j for j in range(n) if j not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -R[i][f]
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------- LP feasibility


@dataclass(frozen=True)
class Feasible:
    x: tuple


@dataclass(frozen=True)
class Infeasible:
    """Farkas certificate: multipliers for the equality rows (free sign) and
    the inequality rows (nonnegative) combining the system into ``0 >= 1``."""

    y_eq: tuple
    y_ge: tuple


LPOutcome = Feasible | Infeasible


def _shape_rows(M, n, name):
    if M is None:
        return np.zeros((0, n), dtype=object)
    M = frac_matrix(M)
    if M.size == 0:
        return M.reshape(0, n)
    if M.ndim != 2 or M.shape[1] != n:
        raise ShapeMismatch(f"{name} must have {n} columns, got shape {M.shape}")
    return M


def _num_vars(A_eq, C_ge, n_vars):
    if n_vars is not None:
        return n_vars
    for M in (A_eq, C_ge):
        if M is not None and np.array(M, dtype=object).size:
            return np.array(M, dtype=object).shape[1]
    raise ShapeMismatch("cannot infer the number of variables")


def check_certificate(outcome, A_eq=None, b_eq=None, C_ge=None, d_ge=None, *,
                      nonneg=False, n_vars=None) -> bool:
    """Re-verify an LP outcome by exact arithmetic."""
    n = _num_vars(A_eq, C_ge, n_vars)
    A = _shape_rows(A_eq, n, "A_eq")
    C = _shape_rows(C_ge, n, "C_ge")
    b = frac_matrix(b_eq if b_eq is not None else []).reshape(-1)
    d = frac_matrix(d_ge if d_ge is not None else []).reshape(-1)
    if isinstance(outcome, Feasible):
        x = np.array(outcome.x, dtype=object)
        if len(x) != n:
            return False
        if nonneg and any(v < 0 for v in x):
            return False
        if A.shape[0] and sparse_matvec(A, x) != list(b):
            return False
        return not C.shape[0] or all(v >= w for v, w in zip(sparse_matvec(C, x), d))
    y_eq = np.array(outcome.y_eq, dtype=object)
    y_ge = np.array(outcome.y_ge, dtype=object)
    if len(y_eq) != A.shape[0] or len(y_ge) != C.shape[0]:
        return False
    if any(v < 0 for v in y_ge):
        return False
    combo = [0] * n
    if A.shape[0]:
        combo = [u + v for u, v in zip(combo, sparse_vecmat(y_eq, A))]
    if C.shape[0]:
        combo = [u + v for u, v in zip(combo, sparse_vecmat(y_ge, C))]
    rhs = sum((y * v for y, v in zip(y_eq, b)), Fraction(0)) + sum(
        (y * v for y, v in zip(y_ge, d)), Fraction(0))
    if nonneg:
        # sum_i y_i (row_i x - rhs_i) >= 0 with combo <= 0 and x >= 0 forces -rhs >= 0
        return all(v <= 0 for v in combo) and rhs > 0
    return all(v == 0 for v in combo) and rhs > 0


def _ratio_less(a_num, a_den, b_num, b_den):
    return a_num * b_den < b_num * a_den


def _phase_one(A, b):
    """Phase-I simplex on ``A z = b, z >= 0`` with integer data and ``b >= 0``.

    Fraction-free tableau with Bland's rule.  Returns ``("feasible", z)`` or
    ``("infeasible", y)`` with ``y A <= 0`` and ``y b > 0``.
    """
    m, N = A.shape
    cols = N + m + 1
    T = np.zeros((m + 1, cols), dtype=object)
    T[:m, :N] = A
    for i in range(m):
        T[i, N + i] = 1
    T[:m, -1] = b
    T[m, :N] = -A.sum(axis=0) if m else 0
    T[m, -1] = -sum(int(v) for v in b)
    basis = [N + i for i in range(m)]
    prev = 1
    use64 = _fits_int64(T, slack=2**16)
    if use64:
        T = T.astype(np.int64)
    while True:
        obj = T[m, : N + m]
        enter = -1
        for j in range(N + m):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave = -1
        best_num = best_den = 0
        for i in range(m):
            a = int(T[i, enter])
            if a <= 0:
                continue
            num = int(T[i, -1])
            if leave < 0 or _ratio_less(num, a, best_num, best_den) or (
                    num * best_den == best_num * a and basis[i] < basis[leave]):
                leave, best_num, best_den = i, num, a
        if leave < 0:
            raise VerificationError("phase-one objective unbounded below")
        piv = int(T[leave, enter])
        if use64:
            try:
                T = _kernels.bareiss_pivot(T, leave, enter, prev)
            except OverflowError:
                use64 = False
                T = T.astype(object)
        if not use64:
            T = _kernels.bareiss_pivot_object(T, leave, enter, prev)
        prev = piv
        basis[leave] = enter
    D = int(prev)
    z_val = Fraction(-int(T[m, -1]), D)
    if z_val > 0:
        y = [1 - Fraction(int(T[m, N + i]), D) for i in range(m)]
        return "infeasible", y
    z = [Fraction(0)] * N
    for i, j in enumerate(basis):
        if j < N:
            z[j] = Fraction(int(T[i, -1]), D)
    return "feasible", z


def _basis_from_float(Ai, bi):
    """Exact vertex or Farkas vector guided by a floating-point LP solve.

    HiGHS only proposes a support; the returned vector is recomputed over Q
    and checked exactly, so a wrong guess costs time, never correctness.
    Returns ``None`` when the guess cannot be certified.
    """
    try:
        from scipy.optimize import linprog
    except ImportError:  # pragma: no cover - scipy is optional
        return None
    m, N = Ai.shape
    Af = np.asarray(Ai).astype(float).reshape(m, N)
    bf = np.asarray(bi).astype(float)
    if not np.all(np.isfinite(Af)) or not np.all(np.isfinite(bf)):
        return None
    res = linprog(np.zeros(N), A_eq=Af, b_eq=bf, bounds=(0, None), method="highs-ds")
    if res.status == 0:
        z = res.x
        tol = 1e-9 * max(1.0, float(np.abs(z).max()))
        cols = [j for j in range(N) if z[j] > tol]
        sol = rational_solve(Ai[:, cols], list(bi)) if cols else (
            () if not any(bi) else None)
        if sol is None or any(v < 0 for v in sol):
            return None
        full = [Fraction(0)] * N
        for j, v in zip(cols, sol):
            full[j] = v
        if sparse_matvec(Ai, full) != list(bi):
            return None
        return "feasible", full
    if res.status != 2:
        return None
    # Farkas: y^T A <= 0, y^T b = 1, y free
    far = linprog(np.zeros(m), A_ub=Af.T, b_ub=np.zeros(N), A_eq=bf.reshape(1, m), b_eq=[1.0],
                  bounds=(None, None), method="highs-ds")
    if far.status != 0:
        return None
    slack = Af.T @ far.x
    tol = 1e-9 * max(1.0, float(np.abs(Af).max()) * float(np.abs(far.x).max()))
    tight = [j for j in range(N) if abs(slack[j]) <= tol]
    rows = [Ai[:, j].tolist() for j in tight]
    rows.append(list(bi))
    y = rational_solve(rows, [Fraction(0)] * len(tight) + [Fraction(1)])
    if y is None:
        return None
    yA = sparse_vecmat(y, Ai)
    if any(v > 0 for v in yA) or sum(a * int(b) for a, b in zip(y, bi)) <= 0:
        return None
    return "infeasible", list(y)


def lp_feasible(A_eq=None, b_eq=None, C_ge=None, d_ge=None, *, nonneg=False,
                n_vars=None, method: str = "auto") -> LPOutcome:
    """Decide ``{x : A_eq x = b_eq, C_ge x >= d_ge}`` over the rationals.

    Variables are free unless ``nonneg`` is set.  Only closed systems are
    accepted; strict inequalities must be encoded by homogeneity (``>= 1``).

    ``method="exact"`` runs only the fraction-free simplex; ``"auto"`` first
    tries a support proposed by a floating-point solve and certifies it
    exactly, falling back to the simplex when that fails.
    """
    if method not in ("auto", "exact"):
        raise ValueError(f"unknown method {method!r}")
    n = _num_vars(A_eq, C_ge, n_vars)
    A = _shape_rows(A_eq, n, "A_eq")
    C = _shape_rows(C_ge, n, "C_ge")
    b = frac_matrix(b_eq if b_eq is not None else []).reshape(-1)
    d = frac_matrix(d_ge if d_ge is not None else []).reshape(-1)
    if b.shape[0] != A.shape[0] or d.shape[0] != C.shape[0]:
        raise ShapeMismatch("right-hand sides do not match constraint rows")
    m1, m2 = A.shape[0], C.shape[0]
    xcols = n if nonneg else 2 * n
    N = xcols + m2
    M = m1 + m2
    scale = []
    Ai = np.zeros((M, N), dtype=object)
    bi = np.zeros(M, dtype=object)
    for i in range(M):
        src, r = (A[i], b[i]) if i < m1 else (C[i - m1], d[i - m1])
        nz = [(j, v) for j, v in enumerate(src.tolist()) if v]
        L = lcm_all([v.denominator for _, v in nz] + [r.denominator])
        s = -1 if r < 0 else 1
        for j, v in nz:
            a = s * v.numerator * (L // v.denominator)
            Ai[i, j] = a
            if not nonneg:
                Ai[i, n + j] = -a
        if i >= m1:
            Ai[i, xcols + i - m1] = -s * L
        bi[i] = s * r.numerator * (L // r.denominator)
        scale.append(s * L)
    guided = _basis_from_float(Ai, bi) if method == "auto" and M else None
    status, vec = guided if guided is not None else _phase_one(Ai, bi)
    if status == "feasible":
        if nonneg:
            x = tuple(vec[:n])
        else:
            x = tuple(vec[j] - vec[n + j] for j in range(n))
        out = Feasible(x)
    else:
        y = [vec[i] * scale[i] for i in range(M)]
        rhs = list(b) + list(d)
        total = sum((y[i] * rhs[i] for i in range(M)), Fraction(0))
        y = [v / total for v in y]
        out = Infeasible(tuple(y[:m1]), tuple(y[m1:]))
    if not check_certificate(out, A, b, C, d, nonneg=nonneg, n_vars=n):
        raise VerificationError("LP certificate failed exact re-check")
    return out
