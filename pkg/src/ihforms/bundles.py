"""Circle bundles given by an integral Euler cocycle on the base.

The four flatness conditions are evaluated from base data; the built-in
3-torus over the 2-torus additionally carries a triangulated total space,
on which conditions (1) and (2) are checked directly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .complex import (
    Cochain,
    ComplexError,
    Fibration,
    SimplicialComplex,
    generate,
    orientation_double_cover,
    product_torus,
    pullback_cochain,
    torus_fibration,
)
from .exact_linalg import VerificationError, rational_rank
from .homology import (
    CohomologyClass,
    betti_numbers,
    class_of,
    cohomology_basis,
    cohomology_group,
    cup,
    is_torsion,
    torsion_generators,
)


class NotClosedCocycle(ComplexError):
    pass


class NonOrientableBase(ComplexError):
    pass


class OrientableBase(ComplexError):
    pass


@dataclass(frozen=True)
class CircleBundle:
    base: SimplicialComplex = field(repr=False)
    euler: Cochain = field(repr=False)
    fibration: Fibration | None = field(default=None, repr=False, compare=False)
    name: str = ""

    def __post_init__(self):
        if not self.base.is_closed:
            raise ComplexError("base must be closed")
        if self.euler.complex != self.base or self.euler.degree != 2:
            raise NotClosedCocycle("Euler cocycle must be a 2-cochain on the base")
        if not self.euler.is_integral():
            raise NotClosedCocycle("Euler cocycle must be integral")
        if not self.euler.is_closed():
            raise NotClosedCocycle("Euler cocycle is not closed")


def euler_class(b: CircleBundle) -> CohomologyClass:
    return class_of(b.base, b.euler)


def _require_orientable(b: CircleBundle):
    if not b.base.is_orientable:
        raise NonOrientableBase("base is not orientable; use nonorientable_check")


@dataclass(frozen=True)
class FlatnessWitness:
    order: int
    c: Cochain = field(repr=False)

    def verify(self, e: Cochain) -> bool:
        if self.c is None:
            return self.order == 1 and e.is_zero()
        if not self.c.is_integral():
            return False
        return self.c.d().values == tuple(self.order * v for v in e.values)


@dataclass(frozen=True)
class NotFlat:
    free_coords: tuple


def decide_flat(b: CircleBundle) -> FlatnessWitness | NotFlat:
    _require_orientable(b)
    x = euler_class(b)
    t = is_torsion(x)
    if not t.torsion:
        return NotFlat(x.free_coords)
    wit = FlatnessWitness(t.order, t.witness)
    if not wit.verify(b.euler):
        raise VerificationError("flatness witness fails m*e = dc")
    return wit


def fiber_class_nonzero(b: CircleBundle) -> bool:
    """True iff the real Euler class vanishes (the fiber survives in real homology)."""
    _require_orientable(b)
    return euler_class(b).is_real_zero


# ---------------------------------------------------------------- Gysin


@dataclass(frozen=True)
class GysinTable:
    base_betti: tuple
    cup_ranks: tuple  # cup_ranks[k] = rank of (cup e): H^k -> H^{k+2}
    total_betti: tuple

    def verify(self) -> bool:
        if any(v < 0 for v in self.total_betti):
            return False
        return sum((-1) ** k * v for k, v in enumerate(self.total_betti)) == 0


def cup_with_euler_rank(b: CircleBundle, k: int) -> int:
    c = b.base
    if k < 0 or k + 2 > c.dimension:
        return 0
    basis = cohomology_basis(c, k)
    if not basis or cohomology_group(c, k + 2).betti == 0:
        return 0
    cols = [class_of(c, cup(beta, b.euler)).free_coords for beta in basis]
    return rational_rank([list(r) for r in zip(*cols)])


def gysin_betti(b: CircleBundle) -> GysinTable:
    _require_orientable(b)
    n = b.base.dimension
    bb = betti_numbers(b.base)
    ranks = tuple(cup_with_euler_rank(b, k) for k in range(n + 1))

    def betti(k):
        return bb[k] if 0 <= k <= n else 0

    def rank(k):
        return ranks[k] if 0 <= k <= n else 0

    total = tuple((betti(k) - rank(k - 2)) + (betti(k - 1) - rank(k - 1)) for k in range(n + 2))
    out = GysinTable(bb, ranks, total)
    if not out.verify():
        raise VerificationError("Gysin Betti numbers fail the Euler characteristic check")
    return out


# ---------------------------------------------------------------- the four conditions


@dataclass(frozen=True)
class Condition:
    value: bool | None
    provenance: str
    direct: bool


@dataclass(frozen=True)
class FlatnessReport:
    conditions: dict  # 1..4 -> Condition
    witness: FlatnessWitness | NotFlat
    gysin: GysinTable

    @property
    def flat(self) -> bool:
        return isinstance(self.witness, FlatnessWitness)

    @property
    def agree(self) -> bool:
        vals = {c.value for c in self.conditions.values() if c.direct}
        return len(vals) == 1


def _fiber_cycle_nonzero(fib: Fibration) -> bool:
    z = fib.fiber_cycle
    return any(sum((a * v for a, v in zip(beta.values, z) if v), Fraction(0))
               for beta in cohomology_basis(fib.total, 1))


def _condition_one(fib: Fibration) -> Condition:
    from .dynamics import CrossSection, cross_section, flux_from_form
    from .harmonic import IntrinsicallyHarmonic, ih_by_weights

    vol = Cochain(fib.base, fib.base.dimension, fib.base.orientation)
    omega = pullback_cochain(vol, fib.projection, fib.total)
    ih = ih_by_weights(fib.total, omega)
    sec = cross_section(flux_from_form(fib.total, omega))
    if isinstance(ih, IntrinsicallyHarmonic) != isinstance(sec, CrossSection):
        raise VerificationError("I.H. verdict and cross-section verdict disagree")
    return Condition(isinstance(ih, IntrinsicallyHarmonic),
                     "direct: pullback of the base volume cochain checked by the weight LP "
                     "and the cross-section LP on the total space", True)


def flatness_report(b: CircleBundle) -> FlatnessReport:
    _require_orientable(b)
    wit = decide_flat(b)
    c4 = Condition(isinstance(wit, FlatnessWitness),
                   "direct: torsion test of the Euler class with integral witness", True)
    c3_val = fiber_class_nonzero(b)
    c3 = Condition(c3_val, "direct: real Euler class vanishes", True)
    fib = b.fibration
    if fib is not None:
        vol = Cochain(fib.base, fib.base.dimension, fib.base.orientation)
        pulled = class_of(fib.total, pullback_cochain(vol, fib.projection, fib.total))
        fiber_nz = _fiber_cycle_nonzero(fib)
        if fiber_nz != (not pulled.is_real_zero):
            raise VerificationError("fiber cycle and pulled-back volume disagree")
        c2 = Condition(fiber_nz, "direct: fiber cycle paired with H^1 of the total space", True)
        c1 = _condition_one(fib)
    else:
        c2 = Condition(c3_val, "equivalent to (3) by the fiber lemma (no total space)", False)
        c1 = Condition(None, "equivalent by theorem (no total space)", False)
    report = FlatnessReport({1: c1, 2: c2, 3: c3, 4: c4}, wit, gysin_betti(b))
    if not report.agree:
        raise VerificationError("directly computed flatness conditions disagree")
    return report


# ---------------------------------------------------------------- non-orientable bases


@dataclass(frozen=True)
class NonorientableVerdict:
    foliated: bool
    pullback_coords: tuple
    message: str


def nonorientable_check(b: CircleBundle) -> NonorientableVerdict:
    if b.base.is_orientable:
        raise OrientableBase("base is orientable; use flatness_report")
    cover = orientation_double_cover(b.base)
    pulled = pullback_cochain(b.euler, cover.covering_map, cover.cover)
    x = class_of(cover.cover, pulled)
    if x.is_real_zero:
        return NonorientableVerdict(True, x.free_coords,
                                    "foliated: pulled-back Euler class is zero over R")
    return NonorientableVerdict(False, x.free_coords,
                                "criterion fails: pulled-back Euler class is nonzero over R")


# ---------------------------------------------------------------- named bundles


def euler_cochain(base: SimplicialComplex, spec) -> Cochain:
    """Euler cocycle from a keyword or a mapping of triangle ids to integers.

    Keywords: ``zero``, ``generator`` (first free basis class of H^2),
    ``torsion-gen`` (first torsion generator), ``k*generator``.
    """
    if isinstance(spec, Cochain):
        return spec
    if isinstance(spec, dict):
        return Cochain.from_dict(base, 2, spec)
    key = str(spec).strip().lower()
    if key == "zero":
        return Cochain.zero(base, 2)
    mult = 1
    if "*" in key:
        a, key = key.split("*", 1)
        mult = int(a)
    if key == "generator":
        basis = cohomology_basis(base, 2)
        if not basis:
            raise ComplexError("H^2 has no free part")
        return basis[0] * mult
    if key == "torsion-gen":
        gens = torsion_generators(base, 2)
        if not gens:
            raise ComplexError("H^2 has no torsion")
        return gens[0][1] * mult
    raise ComplexError(f"unknown Euler cocycle {spec!r}")


@lru_cache(maxsize=1)
def torus_instance() -> CircleBundle:
    """The trivial bundle T^3 -> T^2 with its triangulated total space."""
    fib = torus_fibration()
    return CircleBundle(fib.base, Cochain.zero(fib.base, 2), fib, "trivial/torus2 (product)")


def battery() -> list[CircleBundle]:
    t2 = generate("torus2")
    s2 = generate("sphere2")
    l2 = generate("lens(2,1)")
    return [
        CircleBundle(t2, euler_cochain(t2, "zero"), name="trivial/torus2"),
        CircleBundle(s2, euler_cochain(s2, "generator"), name="hopf/sphere2"),
        CircleBundle(t2, euler_cochain(t2, "generator"), name="heisenberg/torus2"),
        CircleBundle(l2, euler_cochain(l2, "torsion-gen"), name="torsion/lens(2,1)"),
        CircleBundle(t2, euler_cochain(t2, "2*generator"), name="2-generator/torus2"),
        CircleBundle(t2, euler_cochain(t2, "3*generator"), name="3-generator/torus2"),
    ]


__all__ = [
    "NotClosedCocycle", "NonOrientableBase", "OrientableBase", "CircleBundle", "euler_class",
    "FlatnessWitness", "NotFlat", "decide_flat", "fiber_class_nonzero", "GysinTable",
    "cup_with_euler_rank", "gysin_betti", "Condition", "FlatnessReport", "flatness_report",
    "NonorientableVerdict", "nonorientable_check", "euler_cochain", "torus_instance", "battery",
]
