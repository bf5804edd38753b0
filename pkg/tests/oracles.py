"""Independent reference implementations used only by the tests.

None of these import from the package: they are deliberately naive, written
against plain Python lists, and pivot differently from the library code.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def det(M) -> Fraction:
    """Determinant by Fraction Gaussian elimination."""
    A = [[Fraction(v) for v in row] for row in M]
    n = len(A)
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            out = -out
        out *= A[col][col]
        for r in range(col + 1, n):
            f = A[r][col] / A[col][col]
            if f:
                for j in range(col, n):
                    A[r][j] -= f * A[col][j]
    return out


def rank(M) -> int:
    A = [[Fraction(v) for v in row] for row in M]
    if not A:
        return 0
    m, n = len(A), len(A[0])
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(m):
            if i != r and A[i][col]:
                f = A[i][col] / A[r][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        r += 1
        if r == m:
            break
    return r


def determinantal_divisors(M) -> list[int]:
    """d_k = gcd of all k x k minors, for k = 1 .. min(m, n)."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                g = math.gcd(g, int(det([[M[i][j] for j in cols] for i in rows])))
        out.append(g)
    return out


def invariant_factors_by_minors(M) -> list[int]:
    """Nonzero invariant factors from ratios of determinantal divisors."""
    out, prev = [], 1
    for d in determinantal_divisors(M):
        if d == 0:
            break
        out.append(d // prev)
        prev = d
    return out


def snf_diagonal(M) -> list[int]:
    """Nonzero invariant factors by a column-major elimination on lists.

    Pivots on the largest-index entry of least absolute value in the
    remaining block, then fixes divisibility of the diagonal at the end.
    """
    A = [[int(v) for v in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        best = None
        for j in range(t, n):
            for i in range(t, m):
                v = A[i][j]
                if v and (best is None or abs(v) <= abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                q = A[i][t] // p
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                if A[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = A[t][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[t]
                if A[t][j]:
                    done = False
            if done:
                break
            # move the smallest leftover in row/column t to the pivot
            cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
            cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
            _, i, j = min(cand)
            if j == t:
                A[t], A[i] = A[i], A[t]
            else:
                for row in A:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(A[t][t]))
        t += 1
    # fix divisibility: diag(a, b) ~ diag(gcd, lcm)
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                a, b = diag[i], diag[j]
                if b % a:
                    diag[i], diag[j] = math.gcd(a, b), a * b // math.gcd(a, b)
                    changed = True
    return sorted(diag)


def homology_oracle(boundaries, k: int, counts) -> tuple[int, list[int]]:
    """(Betti number, torsion) of H_k from boundary matrices as nested lists.

    ``boundaries[k]`` maps k-chains to (k-1)-chains; missing entries are zero maps.
    """
    dk = boundaries.get(k)
    dk1 = boundaries.get(k + 1)
    rk = len(snf_diagonal(dk)) if dk else 0
    inv1 = snf_diagonal(dk1) if dk1 else []
    betti = counts[k] - rk - len(inv1)
    return betti, [d for d in inv1 if d > 1]


def _solve_any(rows, rhs, n):
    """Some solution of a rational linear system, or None (free vars set to 0)."""
    A = [[Fraction(v) for v in r] + [Fraction(b)] for r, b in zip(rows, rhs)]
    m = len(A)
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if A[i][col]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][col]
        A[r] = [v / p for v in A[r]]
        for i in range(m):
            if i != r and A[i][col]:
                f = A[i][col]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(col)
        r += 1
    if any(A[i][n] for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        x[col] = A[i][n]
    return x


def lp_feasible_oracle(A_eq, b_eq, C_ge, d_ge, n, nonneg=False):
    """Feasibility of {A x = b, C x >= d} by enumerating minimal faces.

    A nonempty polyhedron has a minimal face given by making some subset of
    the inequalities tight, and every solution of that tight system lies in
    the polyhedron; so trying every subset is complete.
    """
    A_eq = [list(r) for r in (A_eq or [])]
    b_eq = list(b_eq or [])
    C = [list(r) for r in (C_ge or [])]
    d = list(d_ge or [])
    if nonneg:
        for j in range(n):
            C.append([int(i == j) for i in range(n)])
            d.append(0)
    for size in range(len(C) + 1):
        for tight in itertools.combinations(range(len(C)), size):
            rows = A_eq + [C[i] for i in tight]
            rhs = b_eq + [d[i] for i in tight]
            x = _solve_any(rows, rhs, n) if rows else [Fraction(0)] * n
            if x is None:
                continue
            if all(sum(Fraction(a) * v for a, v in zip(C[i], x)) >= d[i] for i in range(len(C))):
                return True
    return False
