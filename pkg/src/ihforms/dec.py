"""Discrete Hodge theory with diagonal Hodge stars.

A metric is a positive rational weight per simplex.  The weighted inner
product on k-cochains is ``<a, b>_k = sum_s w_s a_s b_s`` and the
codifferential is the adjoint of the coboundary under it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .complex import Cochain, ComplexError, SimplicialComplex
from . import _kernels
from .exact_linalg import PRIMES, VerificationError, rational_rank, rational_solve
from .homology import CohomologyClass, DegreeOutOfRange, _homology_data, class_of


class NonPositiveWeight(ComplexError):
    pass


@dataclass(frozen=True)
class DiagonalStar:
    complex: SimplicialComplex = field(repr=False)
    weights: tuple  # weights[k][i] > 0 for the i-th k-simplex

    def __post_init__(self):
        c = self.complex
        if len(self.weights) != c.dimension + 1:
            raise ComplexError("need one weight vector per degree")
        ws = []
        for k, wk in enumerate(self.weights):
            wk = tuple(Fraction(v) for v in wk)
            if len(wk) != c.count(k):
                raise ComplexError(f"degree {k} needs {c.count(k)} weights")
            if any(v <= 0 for v in wk):
                raise NonPositiveWeight(f"degree {k} has a non-positive weight")
            ws.append(wk)
        object.__setattr__(self, "weights", tuple(ws))

    @classmethod
    def unit(cls, c: SimplicialComplex) -> "DiagonalStar":
        return cls(c, tuple((Fraction(1),) * c.count(k) for k in range(c.dimension + 1)))

    @classmethod
    def random(cls, c: SimplicialComplex, rng: random.Random, max_num: int = 9, max_den: int = 5):
        return cls(c, tuple(
            tuple(Fraction(rng.randint(1, max_num), rng.randint(1, max_den)) for _ in range(c.count(k)))
            for k in range(c.dimension + 1)))

    @classmethod
    def with_degree(cls, c: SimplicialComplex, k: int, wk) -> "DiagonalStar":
        """Given weights in degree k, unit weights elsewhere."""
        ws = [(Fraction(1),) * c.count(j) for j in range(c.dimension + 1)]
        ws[k] = tuple(wk)
        return cls(c, tuple(ws))

    def inner(self, a: Cochain, b: Cochain) -> Fraction:
        if a.degree != b.degree:
            raise ComplexError("inner product of cochains of different degree")
        wk = self.weights[a.degree]
        return sum((w * x * y for w, x, y in zip(wk, a.values, b.values) if x and y), Fraction(0))


def codifferential(w: DiagonalStar, omega: Cochain) -> Cochain:
    """delta_w omega = W_{k-1}^{-1} d^T W_k omega."""
    c, k = omega.complex, omega.degree
    if k < 1 or k > c.dimension:
        raise DegreeOutOfRange(f"codifferential needs 1 <= k <= {c.dimension}, got {k}")
    wk, wl = w.weights[k], w.weights[k - 1]
    acc = [Fraction(0)] * c.count(k - 1)
    for i, fl in enumerate(c._faces[k]):
        v = omega.values[i]
        if v:
            wv = wk[i] * v
            for f, sgn in fl:
                acc[f] += sgn * wv
    return Cochain(c, k - 1, tuple(a / wl[j] for j, a in enumerate(acc)))


def is_coclosed(w: DiagonalStar, omega: Cochain) -> bool:
    if omega.degree == 0:
        return True
    return codifferential(w, omega).is_zero()


def is_harmonic(w: DiagonalStar, omega: Cochain) -> bool:
    return omega.is_closed() and is_coclosed(w, omega)


# ---------------------------------------------------------------- sparse normal equations


def _gram_down(c: SimplicialComplex, k: int, wk) -> np.ndarray:
    """d^T W_k d for d the coboundary into degree k (a (k-1)-square matrix)."""
    G = np.empty((c.count(k - 1), c.count(k - 1)), dtype=object)
    G[:] = Fraction(0)
    for i, fl in enumerate(c._faces[k]):
        for f, s in fl:
            for g, t in fl:
                G[f, g] += s * t * wk[i]
    return G


def _gram_up(c: SimplicialComplex, k: int, wk) -> np.ndarray:
    """d W_k^{-1} d^T for d the coboundary out of degree k."""
    n1 = c.count(k + 1)
    L = np.empty((n1, n1), dtype=object)
    L[:] = Fraction(0)
    for tau, cof in enumerate(c._cofaces[k]):
        inv = 1 / wk[tau]
        for a, s in cof:
            for b, t in cof:
                L[a, b] += s * t * inv
    return L


def _exact_projection(w: DiagonalStar, omega: Cochain) -> Cochain:
    """W-orthogonal projection onto the image of d (zero in degree 0)."""
    c, k = omega.complex, omega.degree
    if k == 0:
        return Cochain.zero(c, 0)
    wk = w.weights[k]
    G = _gram_down(c, k, wk)
    rhs = codifferential(w, omega).values
    # d^T W omega = W_{k-1} delta_w omega
    rhs = [r * wl for r, wl in zip(rhs, w.weights[k - 1])]
    alpha = rational_solve(G, rhs)
    if alpha is None:
        raise VerificationError("normal equations for the exact part are inconsistent")
    return Cochain(c, k - 1, alpha).d()


def _coexact_projection(w: DiagonalStar, omega: Cochain) -> Cochain:
    """W-orthogonal projection onto the image of delta_w (zero in top degree)."""
    c, k = omega.complex, omega.degree
    if k == c.dimension:
        return Cochain.zero(c, k)
    wk = w.weights[k]
    L = _gram_up(c, k, wk)
    beta = rational_solve(L, omega.d().values)
    if beta is None:
        raise VerificationError("normal equations for the coexact part are inconsistent")
    acc = [Fraction(0)] * c.count(k)
    for i, fl in enumerate(c._faces[k + 1]):
        if beta[i]:
            for f, sgn in fl:
                acc[f] += sgn * beta[i]
    return Cochain(c, k, tuple(a / wk[j] for j, a in enumerate(acc)))


@dataclass(frozen=True)
class HodgeSplit:
    exact_part: Cochain
    coexact_part: Cochain
    harmonic_part: Cochain

    def verify(self, w: DiagonalStar, omega: Cochain) -> bool:
        e, co, h = self.exact_part, self.coexact_part, self.harmonic_part
        if (e + co + h).values != omega.values:
            return False
        if w.inner(e, co) or w.inner(e, h) or w.inner(co, h):
            return False
        return is_harmonic(w, h)


def hodge_split(w: DiagonalStar, omega: Cochain) -> HodgeSplit:
    e = _exact_projection(w, omega)
    co = _coexact_projection(w, omega)
    h = omega - e - co
    out = HodgeSplit(e, co, h)
    if not out.verify(w, omega):
        raise VerificationError("Hodge decomposition failed its exact re-check")
    return out


def harmonic_representative(w: DiagonalStar, x: CohomologyClass | Cochain) -> Cochain:
    """The unique w-harmonic cochain in the class of a closed cochain."""
    z = x.representative if isinstance(x, CohomologyClass) else x
    if not z.is_closed():
        raise ComplexError("harmonic representative needs a closed cochain")
    h = z - _exact_projection(w, z)
    if not is_harmonic(w, h):
        raise VerificationError("harmonic representative is not harmonic")
    return h


def _rank_lower_bound_mod_p(c: SimplicialComplex, k: int, wk, p: int) -> int:
    """GF(p) rank of [d_k ; d_{k-1}^T W_k] with weights reduced in Z_(p)."""
    blocks = []
    if k < c.dimension:
        blocks.append(c.coboundary(k) % p)
    if k >= 1:
        nums = np.array([w.numerator % p for w in wk], dtype=np.int64)
        dens = np.array([pow(w.denominator, -1, p) for w in wk], dtype=np.int64)
        wmod = nums * dens % p
        blocks.append((c.boundary(k) % p) * wmod[None, :] % p)
    M = np.ascontiguousarray(np.vstack(blocks), dtype=np.int64)
    return len(_kernels.rref_mod_p(M, p)[1])


def laplacian_kernel_dim(w: DiagonalStar, k: int) -> int:
    """Exact dimension of ker(Delta_{w,k}) = ker d_k  cap  ker delta_k.

    The stacked matrix [d_k ; d_{k-1}^T W_k] has rank at most
    rank d_k + rank d_{k-1}, so its kernel has dimension at least b_k.  A
    rank mod p (never larger than the rank over Q) reaching that bound
    certifies equality; otherwise the rank is computed over Q.
    """
    c = w.complex
    if not 0 <= k <= c.dimension:
        raise DegreeOutOfRange(f"degree {k} outside 0..{c.dimension}")
    n_k = c.count(k)
    if c.dimension == 0:
        return n_k
    upper = _homology_data(c, k - 1).rank1 if k >= 1 else 0  # rank d_{k-1}
    upper += _homology_data(c, k).rank1 if k < c.dimension else 0  # rank d_k
    wk = w.weights[k]
    for p in PRIMES[:3]:
        if any(v.denominator % p == 0 for v in wk):
            continue
        if _rank_lower_bound_mod_p(c, k, wk, p) == upper:
            return n_k - upper
    rows = []
    if k < c.dimension:
        rows.extend([Fraction(int(v)) for v in r] for r in c.coboundary(k))
    if k >= 1:
        for r in c.boundary(k):
            rows.append([int(v) * wk[j] if v else Fraction(0) for j, v in enumerate(r)])
    return n_k - rational_rank(np.array(rows, dtype=object))


__all__ = [
    "DiagonalStar", "NonPositiveWeight", "codifferential", "is_coclosed", "is_harmonic",
    "HodgeSplit", "hodge_split", "harmonic_representative", "laplacian_kernel_dim",
]
