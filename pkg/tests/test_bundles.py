from fractions import Fraction

import pytest

from conftest import corpus_complex
from ihforms.bundles import (
    CircleBundle,
    FlatnessWitness,
    NonOrientableBase,
    NotClosedCocycle,
    NotFlat,
    OrientableBase,
    battery,
    cup_with_euler_rank,
    decide_flat,
    euler_cochain,
    flatness_report,
    gysin_betti,
    nonorientable_check,
    torus_instance,
)
from ihforms.complex import Cochain, ComplexError, generate, orientation_double_cover, pullback_cochain
from ihforms.exact_linalg import integer_solve
from ihforms.homology import betti_numbers, class_of, cohomology_basis, homology_group, pair

EXPECTED = {  # name: (flat, order, total Betti)
    "trivial/torus2": (True, 1, (1, 3, 3, 1)),
    "hopf/sphere2": (False, None, (1, 0, 0, 1)),
    "heisenberg/torus2": (False, None, (1, 2, 2, 1)),
    "torsion/lens(2,1)": (True, 2, (1, 1, 0, 1, 1)),
    "2-generator/torus2": (False, None, (1, 2, 2, 1)),
    "3-generator/torus2": (False, None, (1, 2, 2, 1)),
}


@pytest.fixture(scope="module")
def bundles():
    return {b.name: b for b in battery()}


@pytest.mark.parametrize("name", list(EXPECTED))
def test_battery(bundles, name):
    b = bundles[name]
    flat, order, betti = EXPECTED[name]
    r = flatness_report(b)
    assert r.agree and r.flat == flat
    if flat:
        assert r.witness.order == order and r.witness.verify(b.euler)
    assert gysin_betti(b).total_betti == betti


def test_lens_total_space_betti_is_a_sanity_pattern(bundles):
    # the lens base is a 3-manifold, so the total space is a 4-manifold with chi = 0
    g = gysin_betti(bundles["torsion/lens(2,1)"])
    assert sum((-1) ** k * v for k, v in enumerate(g.total_betti)) == 0


@pytest.mark.parametrize("name", ["torsion/lens(2,1)"])
def test_witness_order_is_minimal(bundles, name):
    b = bundles[name]
    w = decide_flat(b)
    D = b.base.coboundary(1)
    for m in range(1, w.order):
        assert integer_solve(D, [int(m * v) for v in b.euler.values]) is None
    assert integer_solve(D, [int(w.order * v) for v in b.euler.values]) is not None


def test_gysin_trivial_bundle_against_total_space():
    t = torus_instance()
    assert gysin_betti(t).total_betti == betti_numbers(t.fibration.total)


def test_naturality_of_pullback_on_trivial_bundle():
    # ker(p^*) on H^2 is the image of cup with e; for e = 0 the pullback is injective
    t = torus_instance()
    fib = t.fibration
    gen = cohomology_basis(fib.base, 2)[0]
    pulled = class_of(fib.total, pullback_cochain(gen, fib.projection, fib.total))
    assert not pulled.is_real_zero


def test_cup_rank_against_pairing():
    t2 = corpus_complex("torus2")
    for k, rank in ((1, 1), (2, 1), (3, 1)):
        b = CircleBundle(t2, euler_cochain(t2, f"{k}*generator"))
        assert cup_with_euler_rank(b, 0) == rank
        assert cup_with_euler_rank(b, 1) == 0


def test_torus_instance_conditions():
    r = flatness_report(torus_instance())
    assert all(c.direct and c.value for c in r.conditions.values())


def test_euler_cochain_keywords():
    t2 = corpus_complex("torus2")
    assert euler_cochain(t2, "zero").is_zero()
    assert euler_cochain(t2, "2*generator") == euler_cochain(t2, "generator") * 2
    with pytest.raises(ComplexError):
        euler_cochain(t2, "torsion-gen")
    with pytest.raises(ComplexError):
        euler_cochain(t2, "banana")


def test_bundle_validation():
    t2 = corpus_complex("torus2")
    with pytest.raises(NotClosedCocycle):
        CircleBundle(t2, euler_cochain(t2, "generator") * Fraction(1, 2))
    with pytest.raises(NotClosedCocycle):
        CircleBundle(t2, Cochain.zero(t2, 1))
    with pytest.raises(NonOrientableBase):
        flatness_report(CircleBundle(corpus_complex("klein"), Cochain.zero(corpus_complex("klein"), 2)))
    with pytest.raises(OrientableBase):
        nonorientable_check(CircleBundle(t2, Cochain.zero(t2, 2)))


def _pullback_oracle(base, e):
    """Is the pulled-back class nonzero over R?  Pair with integral cycles of the cover."""
    cover = orientation_double_cover(base)
    pulled = pullback_cochain(e, cover.covering_map, cover.cover)
    H = homology_group(cover.cover, 2)
    return any(pair(pulled, z) for z in H.basis)


@pytest.mark.parametrize("name, spec", [
    ("klein", "zero"), ("klein", "torsion-gen"), ("rp2", "torsion-gen"),
    ("klein-x-circle", "zero"), ("klein-x-circle", "torsion-gen"),
    ("klein-x-circle", "generator"), ("klein-x-circle", "2*generator"),
])
def test_nonorientable_matches_double_cover_oracle(name, spec):
    base = corpus_complex(name) if name != "klein-x-circle" else _klein_circle()
    b = CircleBundle(base, euler_cochain(base, spec))
    v = nonorientable_check(b)
    assert v.foliated == (not _pullback_oracle(base, b.euler))


def test_klein_circle_generator_fails():
    base = _klein_circle()
    v = nonorientable_check(CircleBundle(base, euler_cochain(base, "generator")))
    assert not v.foliated and v.pullback_coords == (2, 0, 0)


_KC = []


def _klein_circle():
    if not _KC:
        _KC.append(generate("klein-x-circle"))
    return _KC[0]


def test_decide_flat_not_flat():
    s2 = corpus_complex("sphere2")
    out = decide_flat(CircleBundle(s2, euler_cochain(s2, "generator")))
    assert isinstance(out, NotFlat) and out.free_coords != (0,)
    assert isinstance(decide_flat(CircleBundle(s2, Cochain.zero(s2, 2))), FlatnessWitness)
