"""Integral and rational (co)homology of simplicial complexes.

Groups are read off two Smith decompositions: one of the incoming map, and
one of the outgoing map restricted to the coordinates left free by the
first.  The same routine serves chains and cochains, so class coordinates,
torsion residues and torsion witnesses all come from one place.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .complex import Cochain, ComplexError, SimplicialComplex
from .exact_linalg import VerificationError, int_matmul, lcm_all, rational_solve, smith

ZZ = "Z"
RR = "R"


class DegreeOutOfRange(ComplexError):
    pass


class NotClosed(ComplexError):
    pass


class NotACycle(ComplexError):
    pass


class DegreeOverflow(ComplexError):
    pass


# ---------------------------------------------------------------- core decomposition


@dataclass(frozen=True, eq=False)
class _Decomposition:
    """ker(outgoing) / im(incoming) for integer maps with outgoing @ incoming == 0."""

    U: np.ndarray
    U_inv: np.ndarray
    V: np.ndarray
    factors: tuple  # nonzero invariant factors of the incoming map
    V2_inv: np.ndarray
    rank2: int
    free_basis: np.ndarray  # columns: integral representatives of the free part

    @property
    def rank1(self) -> int:
        return len(self.factors)

    @property
    def betti(self) -> int:
        return self.free_basis.shape[1]

    @property
    def torsion(self) -> tuple:
        return tuple(d for d in self.factors if d > 1)

    def torsion_generators(self) -> list:
        return [tuple(int(v) for v in self.U_inv[:, i]) for i, d in enumerate(self.factors) if d > 1]

    def split(self, x):
        """(y, w) with y = U x and w the free-part coordinates of y[r:]."""
        xs = [Fraction(v) for v in x]
        L = lcm_all(v.denominator for v in xs)
        xi = np.array([v.numerator * (L // v.denominator) for v in xs], dtype=object)
        y = int_matmul(self.U, xi.reshape(-1, 1)).reshape(-1)
        r = self.rank1
        if self.V2_inv.size:
            w = int_matmul(self.V2_inv, y[r:].reshape(-1, 1)).reshape(-1)
        else:
            w = np.zeros(0, dtype=object)
        if L != 1:
            y = np.array([Fraction(v, L) for v in y], dtype=object)
            w = np.array([Fraction(v, L) for v in w], dtype=object)
        return y, w


def _decompose(incoming: np.ndarray, outgoing: np.ndarray) -> _Decomposition:
    m = incoming.shape[0]
    sd = smith(incoming)
    factors = tuple(sd.invariant_factors)
    r = len(factors)
    B = int_matmul(np.asarray(outgoing, dtype=object), sd.U_inv)
    if r and B.shape[0] and any(v != 0 for v in B[:, :r].flat):
        raise VerificationError("outgoing map does not annihilate the image")
    B2 = B[:, r:]
    if B2.shape[0] == 0:
        eye = np.eye(m - r, dtype=int).astype(object)
        V2, V2_inv, r2 = eye, eye.copy(), 0
    else:
        sd2 = smith(B2)
        V2, V2_inv, r2 = sd2.V, sd2.V_inv, sd2.rank
    free = int_matmul(sd.U_inv[:, r:], V2[:, r2:]) if m - r else np.zeros((m, 0), dtype=object)
    return _Decomposition(sd.U, sd.U_inv, sd.V, factors, V2_inv, r2, free)


@lru_cache(maxsize=64)
def _cohomology_data(c: SimplicialComplex, k: int) -> _Decomposition:
    return _decompose(c.coboundary(k - 1) if k >= 1 else np.zeros((c.count(0), 0), dtype=np.int64),
                      c.coboundary(k) if k < c.dimension else np.zeros((0, c.count(k)), dtype=np.int64))


@lru_cache(maxsize=64)
def _homology_data(c: SimplicialComplex, k: int) -> _Decomposition:
    return _decompose(c.boundary(k + 1) if k < c.dimension else np.zeros((c.count(k), 0), dtype=np.int64),
                      c.boundary(k) if k >= 1 else np.zeros((0, c.count(0)), dtype=np.int64))


def _check_degree(c: SimplicialComplex, k: int):
    if not 0 <= k <= c.dimension:
        raise DegreeOutOfRange(f"degree {k} outside 0..{c.dimension}")


# ---------------------------------------------------------------- groups


@dataclass(frozen=True)
class HomologyGroup:
    degree: int
    betti: int
    torsion: tuple
    basis: tuple = field(repr=False)  # integral cycles spanning the free part
    coefficients: str = ZZ

    def __str__(self):
        parts = []
        if self.betti == 1:
            parts.append("Z" if self.coefficients == ZZ else "R")
        elif self.betti > 1:
            parts.append(("Z" if self.coefficients == ZZ else "R") + f"^{self.betti}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " + ".join(parts) if parts else "0"


def homology_group(c: SimplicialComplex, k: int, coefficients: str = ZZ) -> HomologyGroup:
    _check_degree(c, k)
    data = _homology_data(c, k)
    basis = tuple(tuple(int(v) for v in data.free_basis[:, j]) for j in range(data.betti))
    torsion = data.torsion if coefficients == ZZ else ()
    return HomologyGroup(k, data.betti, torsion, basis, coefficients)


def cohomology_group(c: SimplicialComplex, k: int, coefficients: str = ZZ) -> HomologyGroup:
    """H^k with its free-part basis given as integral cocycles."""
    _check_degree(c, k)
    data = _cohomology_data(c, k)
    basis = tuple(tuple(int(v) for v in data.free_basis[:, j]) for j in range(data.betti))
    torsion = data.torsion if coefficients == ZZ else ()
    return HomologyGroup(k, data.betti, torsion, basis, coefficients)


def betti_numbers(c: SimplicialComplex) -> tuple:
    return tuple(_homology_data(c, k).betti for k in range(c.dimension + 1))


def cohomology_basis(c: SimplicialComplex, k: int) -> list[Cochain]:
    _check_degree(c, k)
    return [Cochain(c, k, tuple(col)) for col in cohomology_group(c, k).basis]


def torsion_generators(c: SimplicialComplex, k: int) -> list[tuple[int, Cochain]]:
    """(order, integral cocycle) for each torsion summand of H^k(c; Z)."""
    _check_degree(c, k)
    data = _cohomology_data(c, k)
    orders = data.torsion
    return [(d, Cochain(c, k, g)) for d, g in zip(orders, data.torsion_generators())]


# ---------------------------------------------------------------- classes


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    representative: Cochain = field(repr=False)
    free_coords: tuple
    torsion_coords: tuple | None  # residues mod the torsion orders; None for non-integral input
    torsion_orders: tuple = ()

    @property
    def complex(self) -> SimplicialComplex:
        return self.representative.complex

    @property
    def is_real_zero(self) -> bool:
        return not any(self.free_coords)

    @property
    def is_zero(self) -> bool:
        return self.is_real_zero and not any(self.torsion_coords or ())


def class_of(c: SimplicialComplex, z: Cochain) -> CohomologyClass:
    if z.complex != c:
        raise ComplexError("cochain lives on a different complex")
    if not z.is_closed():
        raise NotClosed(f"{z.degree}-cochain is not closed")
    data = _cohomology_data(c, z.degree)
    y, w = data.split(z.values)
    if any(v != 0 for v in w[: data.rank2]):
        raise VerificationError("closed cochain has a non-cocycle component")
    free = tuple(Fraction(v) for v in w[data.rank2:])
    torsion = None
    if z.is_integral():
        torsion = tuple(int(y[i]) % d for i, d in enumerate(data.factors) if d > 1)
    return CohomologyClass(z.degree, z, free, torsion, data.torsion)


def class_from_coords(c: SimplicialComplex, k: int, free, torsion=()) -> CohomologyClass:
    """Class with the given coordinates, represented by the basis combination."""
    data = _cohomology_data(c, k)
    vals = [Fraction(0)] * c.count(k)
    free = [Fraction(v) for v in free]
    if len(free) != data.betti:
        raise ComplexError(f"H^{k} has rank {data.betti}, got {len(free)} coordinates")
    for j, a in enumerate(free):
        if a:
            for i, v in enumerate(data.free_basis[:, j]):
                vals[i] += a * v
    gens = data.torsion_generators()
    for t, g in zip(torsion, gens):
        for i, v in enumerate(g):
            vals[i] += int(t) * v
    return class_of(c, Cochain(c, k, tuple(vals)))


@dataclass(frozen=True)
class TorsionVerdict:
    torsion: bool
    order: int | None = None
    witness: Cochain | None = field(default=None, repr=False)  # order * x = d(witness)


def is_torsion(x: CohomologyClass) -> TorsionVerdict:
    """Minimal m with m * x exact over Z, plus the integral primitive."""
    if any(x.free_coords):
        return TorsionVerdict(False)
    z = x.representative
    if not z.is_integral():
        raise ComplexError("torsion test needs an integral representative")
    c, k = z.complex, z.degree
    data = _cohomology_data(c, k)
    y, _ = data.split(z.values)
    m = 1
    for i, d in enumerate(data.factors):
        yi = int(y[i])
        m = math.lcm(m, d // math.gcd(d, yi))
    if k == 0:
        if any(z.values):
            raise VerificationError("nonzero closed 0-cochain with zero free part")
        return TorsionVerdict(True, 1, None)
    wv = np.zeros(c.count(k - 1), dtype=object)
    wv[:] = 0
    for i, d in enumerate(data.factors):
        wv[i] = m * int(y[i]) // d
    prim = np.dot(data.V, wv) if wv.size else wv
    witness = Cochain(c, k - 1, tuple(int(v) for v in prim))
    if witness.d().values != tuple(m * v for v in z.values):
        raise VerificationError("torsion witness does not satisfy m*x = dc")
    return TorsionVerdict(True, m, witness)


# ---------------------------------------------------------------- products and pairings


def cup(alpha: Cochain, beta: Cochain) -> Cochain:
    """Alexander-Whitney product using the complex's vertex order."""
    c = alpha.complex
    if beta.complex != c:
        raise ComplexError("cochains live on different complexes")
    k, l = alpha.degree, beta.degree
    if k + l > c.dimension:
        raise DegreeOverflow(f"cup of degrees {k} and {l} exceeds dimension {c.dimension}")
    ia, ib = c._index[k], c._index[l]
    av, bv = alpha.values, beta.values
    vals = []
    for s in c.simplices[k + l]:
        a = av[ia[s[: k + 1]]]
        vals.append(a * bv[ib[s[k:]]] if a else Fraction(0))
    return Cochain(c, k + l, tuple(vals))


def is_cycle(c: SimplicialComplex, k: int, chain) -> bool:
    if k == 0:
        return True
    faces = c._faces[k]
    acc = [Fraction(0)] * c.count(k - 1)
    for i, coeff in enumerate(chain):
        if coeff:
            for f, sgn in faces[i]:
                acc[f] += sgn * coeff
    return not any(acc)


def pair(x: CohomologyClass | Cochain, z) -> Fraction:
    """<x, z> for a k-cycle z given as a coefficient list."""
    rep = x.representative if isinstance(x, CohomologyClass) else x
    c, k = rep.complex, rep.degree
    z = list(z)
    if len(z) != c.count(k):
        raise ComplexError(f"chain needs {c.count(k)} coefficients")
    if not is_cycle(c, k, z):
        raise NotACycle(f"{k}-chain has nonzero boundary")
    return sum((a * Fraction(b) for a, b in zip(rep.values, z) if b), Fraction(0))


@lru_cache(maxsize=32)
def dual_cycles(c: SimplicialComplex, k: int) -> tuple:
    """Rational k-cycles z_j with <beta_i, z_j> = delta_ij for the H^k basis."""
    _check_degree(c, k)
    coh = _cohomology_data(c, k)
    hom = _homology_data(c, k)
    if coh.betti != hom.betti:
        raise VerificationError("Betti numbers of homology and cohomology differ")
    b = coh.betti
    if b == 0:
        return ()
    P = np.dot(coh.free_basis.T, hom.free_basis)  # P[i, j] = <beta_i, h_j>
    out = []
    for j in range(b):
        e = [Fraction(int(i == j)) for i in range(b)]
        q = rational_solve(P, e)
        if q is None:
            raise VerificationError("cohomology/homology pairing is singular")
        z = np.dot(hom.free_basis, np.array(q, dtype=object))
        out.append(tuple(Fraction(v) for v in z))
    return tuple(out)


def fundamental_class(c: SimplicialComplex) -> tuple:
    return c.fundamental_chain()


def integrate(top: Cochain) -> Fraction:
    """Evaluation of a top-degree cochain on the fundamental cycle."""
    c = top.complex
    if top.degree != c.dimension:
        raise DegreeOutOfRange("integration needs a top-degree cochain")
    return sum((v * e for v, e in zip(top.values, c.fundamental_chain()) if v), Fraction(0))


def cup_pairing_matrix(c: SimplicialComplex, k: int) -> np.ndarray:
    """Q[i, j] = <beta_i cup gamma_j, [M]> for bases of H^k and H^{n-k}."""
    n = c.dimension
    left = cohomology_basis(c, k)
    right = cohomology_basis(c, n - k)
    Q = np.empty((len(left), len(right)), dtype=object)
    for i, a in enumerate(left):
        for j, g in enumerate(right):
            Q[i, j] = integrate(cup(a, g))
    return Q


__all__ = [
    "ZZ", "RR", "DegreeOutOfRange", "NotClosed", "NotACycle", "DegreeOverflow",
    "HomologyGroup", "homology_group", "cohomology_group", "betti_numbers",
    "cohomology_basis", "torsion_generators", "CohomologyClass", "class_of",
    "class_from_coords", "TorsionVerdict", "is_torsion", "cup", "is_cycle", "pair",
    "dual_cycles", "fundamental_class", "integrate", "cup_pairing_matrix",
]
