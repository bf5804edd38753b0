from fractions import Fraction

import pytest

from conftest import corpus_complex
from ihforms.complex import Cochain
from ihforms.dec import DiagonalStar, harmonic_representative, is_harmonic
from ihforms.harmonic import (
    BadDegrees,
    CoverageGap,
    EmptySupport,
    IntrinsicallyHarmonic,
    NotFound,
    NotIH,
    TransversalCertificate,
    VanishingInput,
    calabi_sum,
    conformal_factor,
    duality_bridge,
    eta_from_weights,
    ih_by_weights,
    transversal_certificate,
)
from ihforms.homology import NotClosed, class_from_coords
from ihforms.instances import fiber_cochain, fibration, harmonic_cochain, random_exact


def test_harmonic_cochain_is_ih():
    c = corpus_complex("torus2")
    z = harmonic_cochain(c, 1, (2, -1))
    v = ih_by_weights(c, z)
    assert isinstance(v, IntrinsicallyHarmonic)
    assert is_harmonic(v.weights, z)
    assert all(w >= 1 for w in v.degree_weights())


def test_exact_cochain_is_not_ih():
    c = corpus_complex("torus2")
    z = random_exact(c, 1, 3)
    v = ih_by_weights(c, z, predicate=lambda _: True)
    assert isinstance(v, NotIH) and v.verify()


def test_nonharmonic_representative_becomes_harmonic():
    c = corpus_complex("torus2")
    z = harmonic_cochain(c, 1, (1, 0)) + random_exact(c, 1, 4) * Fraction(1, 50)
    assert not is_harmonic(DiagonalStar.unit(c), z)
    v = ih_by_weights(c, z)
    assert isinstance(v, IntrinsicallyHarmonic)
    assert is_harmonic(v.weights, z)


def test_degree_one_in_dimension_three():
    c = fibration().total
    z = harmonic_representative(DiagonalStar.unit(c), class_from_coords(c, 1, (1, 0, 0)))
    v = ih_by_weights(c, z, predicate=lambda _: True)
    assert isinstance(v, IntrinsicallyHarmonic)


def test_input_errors():
    c = corpus_complex("torus2")
    with pytest.raises(VanishingInput):
        ih_by_weights(c, Cochain.zero(c, 1))
    t3 = fibration().total
    with pytest.raises(BadDegrees):
        ih_by_weights(t3, Cochain.zero(t3, 0))
    bad = [0] * c.count(1)
    bad[0] = 1
    with pytest.raises(NotClosed):
        ih_by_weights(c, Cochain(c, 1, tuple(bad)))
    with pytest.raises(EmptySupport):
        transversal_certificate(c, Cochain.zero(c, 1))
    with pytest.raises(BadDegrees):
        transversal_certificate(t3, harmonic_cochain(t3, 1, (1, 0, 0)))


def test_transversal_on_fiber_flux():
    c = fibration().total
    omega = fiber_cochain()
    cert = transversal_certificate(c, omega)
    assert isinstance(cert, TransversalCertificate)
    assert cert.verify(omega)
    assert min(cert.margins.values()) >= 1


def test_transversal_on_exact_flux_gives_circulation():
    c = corpus_complex("torus2")
    omega = random_exact(c, 1, 14)
    out = transversal_certificate(c, omega)
    assert isinstance(out, NotFound)
    assert out.circulation.verify(omega)


def test_calabi_sum_glues_partial_certificates():
    c = fibration().total
    omega = fiber_cochain()
    cert = transversal_certificate(c, omega)
    half = TransversalCertificate(tuple(v / 2 for v in cert.eta),
                                  {s: m / 2 for s, m in cert.margins.items()})
    zero = TransversalCertificate((Fraction(0),) * len(cert.eta), {s: Fraction(0) for s in cert.margins})
    glued = calabi_sum([cert, zero], omega)
    assert glued.eta == cert.eta
    assert calabi_sum([half, half, cert], omega).verify(omega)
    with pytest.raises(CoverageGap):
        calabi_sum([zero], omega)
    with pytest.raises(CoverageGap):
        calabi_sum([], omega)


def test_conformal_factor():
    d = conformal_factor(4, 1, 3)
    assert d.exponent == -1 and d.f == Fraction(1, 4) and d.verify()
    d = conformal_factor(9, 2, 6)
    assert d.exponent == Fraction(-1, 2) and d.f is None and d.verify()
    assert d.power(-2) == 9
    with pytest.raises(ValueError):
        d.power(1)
    with pytest.raises(BadDegrees):
        conformal_factor(2, 3, 3)
    with pytest.raises(BadDegrees):
        conformal_factor(0, 1, 3)


def test_bridge_on_small_instances():
    c = corpus_complex("torus2")
    for omega in (harmonic_cochain(c, 1, (1, 1)), random_exact(c, 1, 14)):
        br = duality_bridge(c, omega, predicate=lambda _: True)
        assert br.agree
        if br.ih.feasible:
            assert eta_from_weights(br.ih, omega).verify(omega)
            assert br.weights_from_eta is None or is_harmonic(br.weights_from_eta, omega)
        else:
            assert br.circulation_is_weight_farkas
