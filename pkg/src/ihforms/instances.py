"""Built-in instances: the torus fibration fluxes and a fixed flux corpus.

Everything here is deterministic; random cochains use a seeded generator.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .complex import Cochain, SimplicialComplex, generate, pullback_cochain, torus_fibration
from .dec import DiagonalStar, harmonic_representative
from .homology import class_from_coords


def base_area_cochain(base: SimplicialComplex, signs=None) -> Cochain:
    """Top cochain equal to +1 on every positively oriented top simplex (times ``signs``)."""
    eps = base.orientation
    signs = signs or [1] * len(eps)
    return Cochain(base, base.dimension, tuple(e * s for e, s in zip(eps, signs)))


@lru_cache(maxsize=1)
def fibration():
    return torus_fibration()


def fiber_cochain(scale=1) -> Cochain:
    """Pullback to the 3-torus of the base area cochain: flux along the fibers."""
    fib = fibration()
    return pullback_cochain(base_area_cochain(fib.base), fib.projection, fib.total) * scale


def opposite_cochain() -> Cochain:
    """Fibers over half of the base run one way and the other half the other way."""
    fib = fibration()
    nt = fib.base.count(2)
    signs = [1 if t < nt // 2 else -1 for t in range(nt)]
    return pullback_cochain(base_area_cochain(fib.base, signs), fib.projection, fib.total)


def axis_flux(axis: int) -> Cochain:
    """Flux along coordinate ``axis`` of the 3-torus (fiber flux for axis 2)."""
    fib = fibration()
    proj = {v: v[:axis] + v[axis + 1:] for v in fib.total.vertices}
    return pullback_cochain(base_area_cochain(fib.base), proj, fib.total)


def angular_cocycle(c: SimplicialComplex, axis: int, m: int = 3) -> Cochain:
    """Integral generator of H^1 pulled back from circle factor ``axis``.

    Equal to +1 on edges wrapping from coordinate m-1 to 0 along ``axis``
    (-1 for the reverse orientation) and 0 elsewhere.
    """
    vals = []
    for e in range(c.count(1)):
        u, v = c.label(1, e)
        a, b = int(u[axis]), int(v[axis])
        vals.append(1 if (a, b) == (m - 1, 0) else -1 if (a, b) == (0, m - 1) else 0)
    return Cochain(c, 1, tuple(vals))


def random_exact(c: SimplicialComplex, k: int, seed: int, lo: int = -3, hi: int = 3) -> Cochain:
    """d(phi) for a seeded random integral (k-1)-cochain phi."""
    rng = random.Random(seed)
    phi = Cochain(c, k - 1, tuple(rng.randint(lo, hi) for _ in range(c.count(k - 1))))
    return phi.d()


def harmonic_cochain(c: SimplicialComplex, k: int, coords) -> Cochain:
    """Unit-weight harmonic representative of the class with the given free coordinates."""
    x = class_from_coords(c, k, coords)
    return harmonic_representative(DiagonalStar.unit(c), x)


@dataclass(frozen=True)
class FluxInstance:
    name: str
    complex: SimplicialComplex = field(repr=False)
    cochain: Cochain = field(repr=False)
    expect_section: bool | None = None


@lru_cache(maxsize=1)
def flux_corpus() -> tuple:
    """Twelve closed (n-1)-cochains on corpus complexes."""
    t3 = fibration().total
    t2 = generate("torus2")
    s2 = generate("sphere2")
    l2 = generate("lens(2,1)")
    l3 = generate("lens(3,1)")
    fib = fiber_cochain()
    h10 = harmonic_cochain(t2, 1, (1, 0))
    out = [
        FluxInstance("torus3/fiber", t3, fib, True),
        FluxInstance("torus3/fiber-x5", t3, fiber_cochain(5), True),
        FluxInstance("torus3/fiber+exact", t3, fib + random_exact(t3, 2, 11, -1, 1) * Fraction(1, 7)),
        FluxInstance("torus3/diagonal", t3, fib + axis_flux(0) + axis_flux(1), True),
        FluxInstance("torus3/opposite", t3, opposite_cochain(), False),
        FluxInstance("torus3/exact", t3, random_exact(t3, 2, 12), False),
        FluxInstance("torus2/harmonic(1,0)", t2, h10),
        FluxInstance("torus2/harmonic(1,1)", t2, harmonic_cochain(t2, 1, (1, 1))),
        FluxInstance("torus2/exact", t2, random_exact(t2, 1, 14), False),
        FluxInstance("sphere2/exact", s2, random_exact(s2, 1, 15), False),
        FluxInstance("lens(2,1)/exact", l2, random_exact(l2, 2, 16), False),
        FluxInstance("lens(3,1)/exact", l3, random_exact(l3, 2, 17), False),
    ]
    return tuple(out)
