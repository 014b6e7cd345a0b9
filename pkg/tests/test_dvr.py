import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harness.parser import SemanticError, element_from_text
from rings.core import CapabilityError, Divides, NotDivides, RepresentationError
from rings.dvr import SampleBounds, sample_element, sample_elements, valuation


def test_localized_integers_membership(zloc2):
    assert zloc2.contains(Fraction(3, 5))
    assert not zloc2.contains(Fraction(1, 2))
    with pytest.raises(RepresentationError):
        zloc2.divide_exact(Fraction(1), Fraction(2))


def test_valuation_of_rationals(zloc2):
    assert valuation(zloc2, Fraction(12, 5)) == 2
    assert valuation(zloc2, Fraction(3)) == 0
    assert valuation(zloc2, Fraction(0)) == math.inf


def test_units_and_divisibility(zloc2):
    assert zloc2.inverse(Fraction(3)) == Fraction(1, 3)
    assert zloc2.inverse(Fraction(2)) is None
    assert zloc2.divides(Fraction(2), Fraction(12)) == Divides(Fraction(6))
    assert zloc2.divides(Fraction(4), Fraction(6)) == NotDivides()
    assert zloc2.divides(Fraction(0), Fraction(0)) == Divides(Fraction(0))


def test_dvr_is_local_domain(zloc2):
    assert zloc2.is_local().is_local
    assert zloc2.pi == Fraction(2)
    assert not zloc2.is_zero_divisor(Fraction(6)).holds
    assert not zloc2.is_field()


def test_residues(zloc2):
    assert zloc2.residue(Fraction(1, 3), 2) == Fraction(3)
    assert zloc2.residues(2) == [Fraction(r) for r in range(4)]


def test_fraction_field(ring):
    field = ring("Frac(Zloc(2))")
    assert field.order is None
    assert field.is_field()
    assert field.inverse(Fraction(2)) == Fraction(1, 2)
    assert valuation(field, Fraction(1, 8)) == -3


def test_localized_polynomials(ring):
    floc = ring("Floc(2)")
    x = floc.variables()["x"]
    assert floc.valuation(x) == 1
    a = element_from_text(floc, "x^2/(1+x)")
    assert floc.valuation(a) == 2
    assert floc.divides(x, a)
    assert not floc.divides(a, x)


def test_inverse_of_x_is_not_in_floc(ring):
    with pytest.raises(SemanticError):
        element_from_text(ring("Floc(2)"), "1/x")


def test_floc_over_gf4_names_the_field_generator(ring):
    floc = ring("Floc(4)")
    assert set(floc.variables()) == {"x", "a"}
    a = element_from_text(floc, "a")
    assert floc.inverse(a) is not None


def test_sampling_is_deterministic(zloc2):
    assert sample_elements(zloc2, 42, 50) == sample_elements(zloc2, 42, 50)
    assert sample_element(zloc2, 42, index=3) == sample_element(zloc2, 42, index=3)


def test_sampling_needs_positive_bounds(zloc2):
    with pytest.raises(ValueError):
        sample_element(zloc2, 1, SampleBounds(numerator=0))


def test_sampling_is_dvr_only(z8):
    with pytest.raises(CapabilityError):
        sample_element(z8, 1)


@given(st.integers(0, 10_000))
def test_samples_are_ring_elements(seed):
    from harness.parser import ring_from_text

    for expression in ("Zloc(3)", "Floc(2)"):
        ring = ring_from_text(expression)
        assert ring.contains(sample_element(ring, seed))


@given(st.integers(-200, 200).filter(bool), st.integers(-200, 200).filter(bool))
def test_divisibility_is_a_total_order(m, n):
    from harness.parser import ring_from_text

    ring = ring_from_text("Zloc(2)")
    a, b = Fraction(m), Fraction(n)
    assert ring.divides(a, b) or ring.divides(b, a)


@pytest.mark.parametrize("expression", ["Zloc(2)", "Zloc(3)", "Floc(2)", "Floc(4)"])
def test_valuation_is_additive_on_seeded_pairs(ring, expression):
    R = ring(expression)
    samples = sample_elements(R, 2024, 200)
    for a, b in zip(samples[::2], samples[1::2]):
        assert R.valuation(R.mul(a, b)) == R.valuation(a) + R.valuation(b)


@pytest.mark.parametrize("expression", ["Zloc(2)", "Floc(2)", "Floc(4)"])
def test_divisibility_witnesses_replay(ring, expression):
    R = ring(expression)
    samples = sample_elements(R, 7, 100) + [R.zero]
    for a, b in zip(samples, samples[1:] + samples[:1]):
        for x, y in ((a, b), (b, a)):
            verdict = R.divides(x, y)
            assert bool(verdict) == (R.valuation(x) <= R.valuation(y))
            if verdict:
                assert R.mul(x, verdict.witness) == y
