from collections import Counter
from fractions import Fraction

import pytest

from conftest import corpus_complex
from ihforms.complex import Cochain, ComplexError
from ihforms.dynamics import (
    CrossSection,
    NoSection,
    cross_section,
    cycle_decomposition,
    flux_from_form,
    loop_class,
    loop_cochain,
    poincare_dual_coords,
    tischler_scale,
    total_asymptotic_cycle,
)
from ihforms.harmonic import Circulation
from ihforms.homology import NotClosed
from ihforms.instances import (
    angular_cocycle,
    axis_flux,
    fiber_cochain,
    fibration,
    harmonic_cochain,
    opposite_cochain,
    random_exact,
)

F = Fraction


@pytest.fixture(scope="module")
def t3():
    return fibration().total


@pytest.fixture(scope="module")
def angular(t3):
    return [angular_cocycle(t3, a) for a in range(3)]


def test_fiber_orbits(t3, angular):
    cycles = cycle_decomposition(flux_from_form(t3, fiber_cochain()), angular)
    assert Counter((o.cls, o.period, o.weight) for o in cycles) == {((0, 0, 1), 9, 1): 18}
    assert all(o.asymptotic == (0, 0, F(1, 9)) for o in cycles)


def test_decomposition_is_deterministic(t3, angular):
    x = flux_from_form(t3, fiber_cochain() + axis_flux(0))
    a = cycle_decomposition(x, angular)
    b = cycle_decomposition(x, angular)
    assert a == b


@pytest.mark.parametrize("flux, coords", [
    (fiber_cochain, (0, 0, 18)),
    (lambda: axis_flux(0), (18, 0, 0)),
    (lambda: axis_flux(1), (0, -18, 0)),  # dropping the middle axis reverses orientation
    (opposite_cochain, (0, 0, 0)),
    (lambda: fiber_cochain() * 5, (0, 0, 90)),
])
def test_asymptotic_cycle_matches_dual_class(t3, angular, flux, coords):
    a = total_asymptotic_cycle(flux_from_form(t3, flux()), angular)
    assert a.consistent and a.coords == coords


def test_asymptotic_cycle_on_surfaces():
    c = corpus_complex("torus2")
    for coords in [(1, 0), (2, -3)]:
        a = total_asymptotic_cycle(flux_from_form(c, harmonic_cochain(c, 1, coords)))
        assert a.consistent
    a = total_asymptotic_cycle(flux_from_form(c, random_exact(c, 1, 2)))
    assert a.coords == (0, 0)


def test_single_loop_class_equals_poincare_dual(t3, angular):
    x = flux_from_form(t3, fiber_cochain())
    loop = cycle_decomposition(x, angular)[0]
    z = loop_cochain(t3, loop.edges)
    assert loop_class(x.dual, loop.edges, angular) == poincare_dual_coords(t3, z, angular)


def test_flux_errors(t3):
    c = corpus_complex("torus2")
    bad = [0] * c.count(1)
    bad[0] = 1
    with pytest.raises(NotClosed):
        flux_from_form(c, Cochain(c, 1, tuple(bad)))
    with pytest.raises(ComplexError):
        flux_from_form(t3, angular_cocycle(t3, 0))
    with pytest.raises(ComplexError):
        flux_from_form(corpus_complex("klein"), Cochain.zero(corpus_complex("klein"), 1))


def test_section_on_fiber_flux(t3):
    x = flux_from_form(t3, fiber_cochain())
    out = cross_section(x)
    assert isinstance(out, CrossSection)
    assert all(float(v).is_integer() for v in out.theta)
    assert min(out.margins.values()) >= 1
    assert out.verify(x)
    broken = CrossSection(tuple(v + (i == 0) for i, v in enumerate(out.theta)), out.margins, out.scale)
    assert not broken.verify(x)


@pytest.mark.parametrize("flux", [opposite_cochain, lambda: random_exact(fibration().total, 2, 12)])
def test_no_section(t3, flux):
    x = flux_from_form(t3, flux())
    out = cross_section(x)
    assert isinstance(out, NoSection)
    assert out.verify(x)
    assert not any(out.witness_class)
    assert not any(x.dual.divergence(out.witness.values))
    tampered = NoSection(Circulation(tuple(-v for v in out.witness.values), out.witness.potential),
                         out.witness_class, out.farkas)
    assert not tampered.verify(x)


def test_tischler_scale():
    assert tischler_scale([F(1, 2), F(-2, 3), 0]) == ((3, -4, 0), 6)
    assert tischler_scale([1, 2]) == ((1, 2), 1)
