"""Deciding intrinsic harmonicity of closed cochains.

Two certificate searches, both exact LPs:

* ``ih_by_weights`` looks for positive diagonal weights making the cochain
  coclosed.  Weights only matter on the support, and the constraint cone is
  invariant under scaling, so ``w > 0`` is posed as ``w >= 1``.
* ``transversal_certificate`` looks for a dual-closed 1-cochain ``eta`` on the
  dual cell structure with ``eta_e * omega_e >= 1`` on every support edge.

Infeasibility is reported with the Farkas vector returned by the LP.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .complex import Cochain, ComplexError, NotOrientedClosed, SimplicialComplex, dual_structure
from .dec import DiagonalStar, is_harmonic
from .exact_linalg import (
    Feasible,
    Infeasible,
    VerificationError,
    check_certificate,
    lcm_all,
    lp_feasible,
)
from .homology import NotClosed, homology_group


class VanishingInput(ComplexError):
    pass


class EmptySupport(ComplexError):
    pass


class CoverageGap(ComplexError):
    pass


class BadDegrees(ComplexError):
    pass


# ---------------------------------------------------------------- predicates


def nowhere_vanishing_top(omega: Cochain) -> bool:
    """Every top simplex has a codimension-one face where omega is nonzero."""
    c = omega.complex
    n = c.dimension
    if omega.degree != n - 1:
        return False
    return all(any(omega.values[f] for f, _ in c.faces(n, t)) for t in range(c.count(n)))


def nowhere_vanishing_vertex(omega: Cochain) -> bool:
    """No vertex star on which the 1-cochain omega is identically zero."""
    c = omega.complex
    if omega.degree != 1:
        return False
    return all(any(omega.values[e] for e, _ in c.cofaces(0, v)) for v in range(c.count(0)))


def default_predicate(omega: Cochain) -> bool:
    n = omega.complex.dimension
    if omega.degree == n - 1:
        return nowhere_vanishing_top(omega)
    if omega.degree == 1:
        return nowhere_vanishing_vertex(omega)
    raise BadDegrees(f"intrinsic harmonicity is decided for degrees 1 and {n - 1} only")


def _require_closed(omega: Cochain):
    if not omega.is_closed():
        raise NotClosed(f"{omega.degree}-cochain is not closed")


# ---------------------------------------------------------------- weights


@dataclass(frozen=True)
class WeightSystem:
    """The LP ``A u = b, u >= 0`` with ``w = 1 + u`` on the support."""

    support: tuple
    A: np.ndarray = field(repr=False)
    b: tuple = field(repr=False)


@dataclass(frozen=True)
class IntrinsicallyHarmonic:
    weights: DiagonalStar = field(repr=False)
    degree: int

    feasible = True

    def degree_weights(self) -> tuple:
        return self.weights.weights[self.degree]


@dataclass(frozen=True)
class NotIH:
    farkas: Infeasible = field(repr=False)
    system: WeightSystem = field(repr=False)

    feasible = False

    def verify(self) -> bool:
        return check_certificate(self.farkas, self.system.A, self.system.b, nonneg=True,
                                 n_vars=len(self.system.support))


IHVerdict = IntrinsicallyHarmonic | NotIH


def weight_system(omega: Cochain) -> WeightSystem:
    c, k = omega.complex, omega.degree
    support = omega.support()
    rows = {}
    for j, s in enumerate(support):
        v = omega.values[s]
        for f, sgn in c.faces(k, s):
            rows.setdefault(f, {})[j] = sgn * v
    keys = sorted(rows)
    A = np.empty((len(keys), len(support)), dtype=object)
    A[:] = Fraction(0)
    b = []
    for i, f in enumerate(keys):
        for j, v in rows[f].items():
            A[i, j] = v
        b.append(-sum(rows[f].values(), Fraction(0)))
    return WeightSystem(support, A, tuple(b))


def ih_by_weights(c: SimplicialComplex, omega: Cochain,
                  predicate: Callable[[Cochain], bool] | None = None) -> IHVerdict:
    if omega.complex != c:
        raise ComplexError("cochain lives on a different complex")
    _require_closed(omega)
    if omega.degree < 1:
        raise BadDegrees("weights are searched for cochains of degree >= 1")
    pred = predicate or default_predicate
    if omega.is_zero() or not pred(omega):
        raise VanishingInput("cochain vanishes somewhere (nonvanishing predicate failed)")
    system = weight_system(omega)
    out = lp_feasible(system.A, system.b, nonneg=True, n_vars=len(system.support))
    if isinstance(out, Infeasible):
        return NotIH(out, system)
    k = omega.degree
    wk = [Fraction(1)] * c.count(k)
    for j, s in enumerate(system.support):
        wk[s] = 1 + out.x[j]
    star = DiagonalStar.with_degree(c, k, wk)
    if not is_harmonic(star, omega):
        raise VerificationError("weight certificate does not make the cochain coclosed")
    return IntrinsicallyHarmonic(star, k)


# ---------------------------------------------------------------- transversal forms


def _dual_closed(c: SimplicialComplex, eta) -> bool:
    """Sums of eta around all dual 2-cells vanish."""
    n = c.dimension
    if n < 2:
        return True
    acc = [Fraction(0)] * c.count(n - 2)
    for s, fl in enumerate(c._faces[n - 1]):
        if eta[s]:
            for f, sgn in fl:
                acc[f] += sgn * eta[s]
    return not any(acc)


@dataclass(frozen=True)
class TransversalCertificate:
    """Dual-closed eta with margins eta_e * omega_e on the support of omega."""

    eta: tuple
    margins: dict = field(compare=False)

    feasible = True

    def verify(self, omega: Cochain, *, full: bool = True) -> bool:
        c = omega.complex
        if not _dual_closed(c, self.eta):
            return False
        for s in omega.support():
            m = self.eta[s] * omega.values[s]
            if m != self.margins.get(s):
                return False
            if m < (1 if full else 0):
                return False
        return True


@dataclass(frozen=True)
class Circulation:
    """Nonnegative direction-respecting divergence-free flow on the dual graph.

    ``values`` are signed per (n-1)-simplex with the same signs as the flux,
    so the dual-edge magnitudes are ``|values|``.  ``potential`` is an
    (n-2)-cochain with d(potential) = values, certifying the zero class.
    """

    values: tuple
    potential: tuple = field(repr=False)

    def verify(self, omega: Cochain) -> bool:
        c = omega.complex
        if not any(self.values):
            return False
        for s, v in enumerate(self.values):
            if v and (not omega.values[s] or v * omega.values[s] < 0):
                return False
        dphi = Cochain(c, c.dimension - 2, self.potential).d().values
        return dphi == tuple(Fraction(v) for v in self.values)


@dataclass(frozen=True)
class NotFound:
    farkas: Infeasible = field(repr=False)
    circulation: Circulation

    feasible = False


def _transversal_lp(c: SimplicialComplex, omega: Cochain):
    """eta = sum_j a_j h_j + delta0 g subject to omega_s * eta_s >= 1 on the support."""
    n = c.dimension
    support = omega.support()
    cycles = homology_group(c, n - 1).basis
    eps = c.orientation
    nb, nt = len(cycles), c.count(n)
    C = np.empty((len(support), nb + nt), dtype=object)
    C[:] = Fraction(0)
    for i, s in enumerate(support):
        x = omega.values[s]
        for j, h in enumerate(cycles):
            if h[s]:
                C[i, j] = x * h[s]
        # (delta0 g)_s = -sum_T [T:s] eps_T g_T
        for t, sgn in c.cofaces(n - 1, s):
            C[i, nb + t] = -x * sgn * eps[t]
    return support, cycles, C


def _eta_from_params(c, cycles, params):
    n = c.dimension
    nb = len(cycles)
    eta = [Fraction(0)] * c.count(n - 1)
    for j, h in enumerate(cycles):
        a = params[j]
        if a:
            for s, v in enumerate(h):
                if v:
                    eta[s] += a * v
    eps = c.orientation
    g = params[nb:]
    for s in range(c.count(n - 1)):
        for t, sgn in c.cofaces(n - 1, s):
            if g[t]:
                eta[s] -= sgn * eps[t] * g[t]
    return tuple(eta)


def circulation_from_farkas(c: SimplicialComplex, omega: Cochain, support, y) -> Circulation:
    """c_s = y_s * omega_s is closed with zero class; recover its potential."""
    from .exact_linalg import rational_solve

    n = c.dimension
    vals = [Fraction(0)] * c.count(n - 1)
    for i, s in enumerate(support):
        vals[s] = y[i] * omega.values[s]
    d = c.coboundary(n - 2)
    phi = rational_solve(d, vals)
    if phi is None:
        raise VerificationError("Farkas circulation is not exact")
    circ = Circulation(tuple(vals), tuple(phi))
    if not circ.verify(omega):
        raise VerificationError("Farkas circulation failed its exact re-check")
    return circ


def transversal_certificate(c: SimplicialComplex, omega: Cochain):
    if omega.complex != c:
        raise ComplexError("cochain lives on a different complex")
    if omega.degree != c.dimension - 1:
        raise BadDegrees("transversal certificates are for (n-1)-cochains")
    if c.orientation is None or not c.is_closed:
        raise NotOrientedClosed("transversal certificates need a closed oriented complex")
    _require_closed(omega)
    if omega.is_zero():
        raise EmptySupport("cochain has empty support")
    support, cycles, C = _transversal_lp(c, omega)
    out = lp_feasible(C_ge=C, d_ge=[1] * len(support), n_vars=C.shape[1])
    if isinstance(out, Infeasible):
        return NotFound(out, circulation_from_farkas(c, omega, support, out.y_ge))
    eta = _eta_from_params(c, cycles, out.x)
    cert = TransversalCertificate(eta, {s: eta[s] * omega.values[s] for s in support})
    if not cert.verify(omega):
        raise VerificationError("transversal certificate failed its exact re-check")
    return cert


def calabi_sum(certs, omega: Cochain) -> TransversalCertificate:
    """Sum partial certificates; every support edge must be covered by one of them."""
    certs = list(certs)
    if not certs:
        raise CoverageGap("no certificates given")
    for cert in certs:
        if not cert.verify(omega, full=False):
            raise ComplexError("partial certificate is not dual-closed with nonnegative margins")
    support = omega.support()
    gaps = [s for s in support if all(cert.eta[s] * omega.values[s] < 1 for cert in certs)]
    if gaps:
        raise CoverageGap(f"{len(gaps)} support edge(s) uncovered, first {gaps[0]}")
    eta = tuple(sum(vals, Fraction(0)) for vals in zip(*(cert.eta for cert in certs)))
    out = TransversalCertificate(eta, {s: eta[s] * omega.values[s] for s in support})
    if not out.verify(omega):
        raise VerificationError("Calabi sum failed its exact re-check")
    return out


# ---------------------------------------------------------------- conformal factor


@dataclass(frozen=True)
class ConformalData:
    """f = s ** exponent with exponent = 2/(k - n); ``f`` is None unless the exponent is integral."""

    s: Fraction
    k: int
    n: int
    exponent: Fraction
    f: Fraction | None

    def power(self, q) -> Fraction:
        """f ** q, exact whenever q * exponent is an integer."""
        e = self.exponent * Fraction(q)
        if e.denominator != 1:
            raise ValueError(f"f**{q} is not a rational power of s")
        return self.s ** int(e)

    def verify(self) -> bool:
        return self.power(Fraction(self.k - self.n, 2)) == self.s


def conformal_factor(s, k: int, n: int) -> ConformalData:
    s = Fraction(s)
    if s <= 0:
        raise BadDegrees("s must be positive")
    if not 1 <= k < n:
        raise BadDegrees(f"need 1 <= k < n, got k={k}, n={n}")
    e = Fraction(2, k - n)
    f = s ** int(e) if e.denominator == 1 else None
    return ConformalData(s, k, n, e, f)


# ---------------------------------------------------------------- both directions


@dataclass(frozen=True)
class BridgeReport:
    ih: object
    transversal: object
    agree: bool
    eta_from_weights: TransversalCertificate | None = None
    weights_from_eta: DiagonalStar | None = None
    circulation_is_weight_farkas: bool | None = None
    notes: tuple = ()


def eta_from_weights(verdict: IntrinsicallyHarmonic, omega: Cochain) -> TransversalCertificate:
    """eta := W omega read on the dual, rescaled so the least margin is 1."""
    wk = verdict.degree_weights()
    raw = [wk[s] * v for s, v in enumerate(omega.values)]
    least = min(raw[s] * omega.values[s] for s in omega.support())
    eta = tuple(v / least for v in raw)
    return TransversalCertificate(eta, {s: eta[s] * omega.values[s] for s in omega.support()})


def weights_from_eta(cert: TransversalCertificate, omega: Cochain) -> DiagonalStar | None:
    """w := eta / omega on the support, if eta vanishes off the support."""
    c, k = omega.complex, omega.degree
    supp = set(omega.support())
    if any(v for s, v in enumerate(cert.eta) if s not in supp):
        return None
    ratios = {s: cert.eta[s] / omega.values[s] for s in supp}
    least = min(ratios.values())
    wk = [Fraction(1)] * c.count(k)
    for s, r in ratios.items():
        wk[s] = r / least
    return DiagonalStar.with_degree(c, k, wk)


def duality_bridge(c: SimplicialComplex, omega: Cochain,
                   predicate: Callable[[Cochain], bool] | None = None) -> BridgeReport:
    ih = ih_by_weights(c, omega, predicate)
    tr = transversal_certificate(c, omega)
    notes = []
    eta_w = w_eta = None
    circ_ok = None
    if isinstance(ih, IntrinsicallyHarmonic):
        eta_w = eta_from_weights(ih, omega)
        if not eta_w.verify(omega):
            raise VerificationError("transversal form built from weights failed re-check")
    if isinstance(tr, TransversalCertificate):
        w_eta = weights_from_eta(tr, omega)
        if w_eta is None:
            notes.append("LP transversal form leaves the support; weights come from the weight LP")
        elif not is_harmonic(w_eta, omega):
            raise VerificationError("weights built from the transversal form failed re-check")
    if isinstance(tr, NotFound):
        # the zero-class circulation is also a Farkas vector for the weight system
        circ_ok = _circulation_blocks_weights(tr.circulation, omega)
        if not circ_ok:
            notes.append("circulation does not transfer to the weight system")
    agree = ih.feasible == tr.feasible
    if not agree:
        notes.append("weight LP and transversal LP disagree")
    return BridgeReport(ih, tr, agree, eta_w, w_eta, circ_ok, tuple(notes))


def _circulation_blocks_weights(circ: Circulation, omega: Cochain) -> bool:
    """A sign-compatible exact cochain d(phi) on the support rules out coclosed W omega.

    If W omega were coclosed, <d phi, W omega> = <phi, d^T W omega> = 0, yet
    every term w_s (d phi)_s omega_s is nonnegative and one is positive.
    """
    total = Fraction(0)
    for s, v in enumerate(circ.values):
        if v:
            p = v * omega.values[s]
            if p < 0:
                return False
            total += p
    return total > 0


__all__ = [
    "VanishingInput", "EmptySupport", "CoverageGap", "BadDegrees",
    "nowhere_vanishing_top", "nowhere_vanishing_vertex", "default_predicate",
    "WeightSystem", "IntrinsicallyHarmonic", "NotIH", "IHVerdict", "weight_system",
    "ih_by_weights", "TransversalCertificate", "Circulation", "NotFound",
    "circulation_from_farkas", "transversal_certificate", "calabi_sum", "ConformalData",
    "conformal_factor", "BridgeReport", "eta_from_weights", "weights_from_eta",
    "duality_bridge",
]
