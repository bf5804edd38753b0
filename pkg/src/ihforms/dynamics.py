"""Volume-preserving flows as divergence-free flux on the dual graph.

A closed (n-1)-cochain omega is read as a flux: dual edge ``e`` (one per
(n-1)-simplex) carries ``omega_e`` units from its tail to its head.  Orbits
are directed loops of the flux, invariant measures are nonnegative
circulations, and cross-sections are dual-closed integral 1-cochains that
are positive against the flux.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .complex import Cochain, ComplexError, DualStructure, NotOrientedClosed, SimplicialComplex, dual_structure
from .exact_linalg import Infeasible, VerificationError, lcm_all
from .harmonic import (
    Circulation,
    EmptySupport,
    NotFound,
    TransversalCertificate,
    _dual_closed,
    transversal_certificate,
)
from .homology import NotClosed, class_of, cohomology_basis, cup_pairing_matrix


@dataclass(frozen=True)
class FluxField:
    dual: DualStructure = field(repr=False)
    flux: tuple

    @property
    def complex(self) -> SimplicialComplex:
        return self.dual.complex

    def divergence(self) -> list:
        return self.dual.divergence(self.flux)

    def is_divergence_free(self) -> bool:
        return not any(self.divergence())

    def to_cochain(self) -> Cochain:
        c = self.complex
        return Cochain(c, c.dimension - 1, self.flux)

    def support(self) -> tuple:
        return tuple(e for e, v in enumerate(self.flux) if v)


def flux_from_form(c: SimplicialComplex, omega: Cochain) -> FluxField:
    if c.orientation is None or not c.is_closed:
        raise NotOrientedClosed("flux needs a closed oriented complex")
    if omega.degree != c.dimension - 1:
        raise ComplexError("flux is read from an (n-1)-cochain")
    if not omega.is_closed():
        raise NotClosed("cochain is not closed")
    x = FluxField(dual_structure(c), omega.values)
    if not x.is_divergence_free():
        raise VerificationError("closed cochain produced a flux with divergence")
    return x


# ---------------------------------------------------------------- loops and classes


def loop_to_primal_cycle(dual: DualStructure, steps) -> list:
    """Primal 1-cycle homotopic to a closed dual-edge loop.

    ``steps`` is a cyclic list of (edge, direction) with direction +1 when the
    edge is traversed tail to head.  Inside each top simplex the dual path is
    pushed onto the edge joining a vertex of the entry face to a vertex of the
    exit face (the first vertex of each face).
    """
    c = dual.complex
    n = c.dimension
    chain = [0] * c.count(1)
    pts = [c.simplices[n - 1][e][0] for e, _ in steps]
    for i in range(len(steps)):
        a, b = pts[i - 1], pts[i]
        if a == b:
            continue
        key = (a, b) if a < b else (b, a)
        chain[c.index(1, key)] += 1 if a < b else -1
    return chain


def loop_cochain(c: SimplicialComplex, steps) -> Cochain:
    """The (n-1)-cochain carried by a dual loop (Poincare dual of the loop)."""
    vals = [0] * c.count(c.dimension - 1)
    for e, d in steps:
        vals[e] += d
    return Cochain(c, c.dimension - 1, tuple(vals))


def _basis(c: SimplicialComplex, basis):
    return list(basis) if basis is not None else cohomology_basis(c, 1)


def loop_class(dual: DualStructure, steps, basis=None) -> tuple:
    """H_1(R) coordinates of a dual loop: pairings with 1-cocycles."""
    c = dual.complex
    z = loop_to_primal_cycle(dual, steps)
    return tuple(sum((b.values[i] * v for i, v in enumerate(z) if v), Fraction(0))
                 for b in _basis(c, basis))


@dataclass(frozen=True)
class OrbitCycle:
    edges: tuple  # ((dual edge, +-1), ...) in traversal order
    weight: Fraction
    cls: tuple

    @property
    def period(self) -> int:
        return len(self.edges)

    @property
    def asymptotic(self) -> tuple:
        """A_x = [C_x] / lambda(x)."""
        return tuple(v / self.period for v in self.cls)


def cycle_decomposition(x: FluxField, basis=None) -> list[OrbitCycle]:
    """Deterministic decomposition of a divergence-free flux into directed loops."""
    if not x.is_divergence_free():
        raise ComplexError("flux has nonzero divergence")
    dual = x.dual
    rem = [abs(Fraction(v)) for v in x.flux]
    sign = [1 if v > 0 else -1 for v in x.flux]
    # outgoing edges per dual vertex in index order
    out_edges = {}
    for e, (t, h) in enumerate(dual.edges):
        if x.flux[e]:
            src = t if sign[e] > 0 else h
            out_edges.setdefault(src, []).append(e)

    def head(e):
        t, h = dual.edges[e]
        return h if sign[e] > 0 else t

    def tail(e):
        t, h = dual.edges[e]
        return t if sign[e] > 0 else h

    cycles = []
    while True:
        start = next((e for e, r in enumerate(rem) if r), None)
        if start is None:
            break
        path = [start]
        seen = {tail(start): 0}
        v = head(start)
        while v not in seen:
            seen[v] = len(path)
            nxt = next((e for e in out_edges.get(v, ()) if rem[e]), None)
            if nxt is None:
                raise VerificationError("flow decomposition got stuck (divergence?)")
            path.append(nxt)
            v = head(nxt)
        loop = path[seen[v]:]
        w = min(rem[e] for e in loop)
        for e in loop:
            rem[e] -= w
        steps = tuple((e, sign[e]) for e in loop)
        cycles.append(OrbitCycle(steps, w, loop_class(dual, steps, basis)))
    total = [Fraction(0)] * len(x.flux)
    for cyc in cycles:
        for e, d in cyc.edges:
            total[e] += d * cyc.weight
    if tuple(total) != tuple(Fraction(v) for v in x.flux):
        raise VerificationError("cycle decomposition does not re-sum to the flux")
    return cycles


def poincare_dual_coords(c: SimplicialComplex, omega: Cochain, basis=None) -> tuple:
    """H_1 coordinates of the class Poincare dual to the closed (n-1)-cochain omega.

    The coordinate against a 1-cocycle beta is the integral of beta cup omega
    over the fundamental cycle.
    """
    from .homology import cup, integrate

    s = 1
    if basis is None:
        x = class_of(c, omega)
        Q = cup_pairing_matrix(c, 1)
        return tuple(s * sum((Q[i, j] * f for j, f in enumerate(x.free_coords)), Fraction(0))
                     for i in range(Q.shape[0]))
    return tuple(s * integrate(cup(b, omega)) for b in basis)


@dataclass(frozen=True)
class AsymptoticCycle:
    coords: tuple
    from_cycles: tuple
    from_class: tuple

    @property
    def consistent(self) -> bool:
        return self.from_cycles == self.from_class


def total_asymptotic_cycle(x: FluxField, basis=None) -> AsymptoticCycle:
    c = x.complex
    cycles = cycle_decomposition(x, basis)
    b = len(_basis(c, basis))
    acc = [Fraction(0)] * b
    for cyc in cycles:
        for i, v in enumerate(cyc.cls):
            acc[i] += cyc.weight * v
    via_class = poincare_dual_coords(c, x.to_cochain(), basis)
    out = AsymptoticCycle(tuple(acc), tuple(acc), via_class)
    if not out.consistent:
        raise VerificationError("asymptotic cycle differs from the Poincare dual class")
    return out


# ---------------------------------------------------------------- cross-sections


@dataclass(frozen=True)
class CrossSection:
    theta: tuple
    margins: dict = field(compare=False)
    scale: int = 1

    def verify(self, x: FluxField) -> bool:
        c = x.complex
        if any(Fraction(v).denominator != 1 for v in self.theta):
            return False
        if not _dual_closed(c, self.theta):
            return False
        return all(self.theta[e] * x.flux[e] >= 1 and self.margins.get(e) == self.theta[e] * x.flux[e]
                   for e in x.support())


@dataclass(frozen=True)
class NoSection:
    witness: Circulation
    witness_class: tuple
    farkas: Infeasible = field(repr=False)

    def verify(self, x: FluxField) -> bool:
        c = x.complex
        w = self.witness
        if not w.verify(x.to_cochain()):
            return False
        div = x.dual.divergence(w.values)
        if any(div):
            return False
        return not any(self.witness_class)


def tischler_scale(theta) -> tuple[tuple, int]:
    """Multiply by the least common denominator: (integral values, N)."""
    vals = [Fraction(v) for v in theta]
    N = lcm_all(v.denominator for v in vals)
    return tuple(int(v * N) for v in vals), N


def cross_section(x: FluxField) -> CrossSection | NoSection:
    c = x.complex
    if not x.support():
        raise EmptySupport("flux has empty support")
    omega = x.to_cochain()
    cert = transversal_certificate(c, omega)
    if isinstance(cert, NotFound):
        circ = cert.circulation
        cls = poincare_dual_coords(c, Cochain(c, c.dimension - 1, circ.values))
        out = NoSection(circ, cls, cert.farkas)
    else:
        theta, N = tischler_scale(cert.eta)
        out = CrossSection(theta, {e: theta[e] * x.flux[e] for e in x.support()}, N)
    if not out.verify(x):
        raise VerificationError("cross-section verdict failed its exact re-check")
    return out


__all__ = [
    "FluxField", "flux_from_form", "loop_to_primal_cycle", "loop_cochain", "loop_class",
    "OrbitCycle", "cycle_decomposition", "poincare_dual_coords", "AsymptoticCycle",
    "total_asymptotic_cycle", "CrossSection", "NoSection", "tischler_scale", "cross_section",
]
