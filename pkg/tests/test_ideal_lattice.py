from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harness.catalog import arithmetical_catalog
from ideals.lattice import (
    all_ideals,
    annihilator_ideal,
    distributivity_holds,
    ideal_from_generators,
    ideals_by_subgroup_scan,
    is_arithmetical,
    is_coherent,
    is_principal,
    is_valuation_ring,
    lattice_for,
    lattice_op,
    require_chain_ring,
    verify_incomparable,
)
from rings.core import CapabilityError, PreconditionError, UsageError
from rings.descriptors import ZMod
from rings.factory import construct_ring


def test_ideals_of_z12_match_divisors(z12):
    ideals = all_ideals(z12)
    assert len(ideals) == 6
    assert [i.describe() for i in ideals] == ["(0)", "(6)", "(4)", "(3)", "(2)", "(1)"]
    assert all(i.principal for i in ideals)


def test_lattice_operations(z12):
    four = ideal_from_generators(z12, [4])
    six = ideal_from_generators(z12, [6])
    assert lattice_op("sum", four, six).describe() == "(2)"
    assert lattice_op("intersect", four, six).is_zero
    with pytest.raises(UsageError):
        lattice_op("product", four, six)


def test_two_generated_ideal_is_principal_in_z12(z12):
    ideal = ideal_from_generators(z12, [4, 6])
    assert ideal.generators == (4, 6)
    assert is_principal(ideal) == 2


def test_lattice_rejects_foreign_ideals(z8, z12):
    with pytest.raises(UsageError):
        lattice_op("sum", ideal_from_generators(z8, [2]), ideal_from_generators(z12, [2]))


def test_subgroup_scan_agrees_with_lattice(ring):
    for expression in ("Z/12", "F2[x]/(x^3)", "F2[x,y]/(x^2,x*y,y^2)", "Z/2 x Z/2 x Z/2"):
        R = ring(expression)
        assert ideals_by_subgroup_scan(R) == lattice_for(R).ideal_sets(), expression


def test_finite_annihilators(z12):
    assert annihilator_ideal(z12, 4).elements == frozenset({0, 3, 6, 9})
    assert annihilator_ideal(z12, 5).is_zero


def test_annihilators_in_a_dvr(zloc2):
    assert annihilator_ideal(zloc2, Fraction(6)).describe() == "(0)"
    whole = annihilator_ideal(zloc2, Fraction(0))
    assert whole.describe() == "(1)"
    assert Fraction(5, 3) in whole


@pytest.mark.parametrize("expression", ["Z/8", "Z/9", "F4", "F2[x]/(x^3)", "triv(Z/2, Z/2)"])
def test_chain_rings_are_valuation_rings(ring, expression):
    check = is_valuation_ring(ring(expression))
    assert check.holds
    assert check.agreement
    assert check.methods["local_and_two_generated_principal"]
    assert check.methods["ideals_totally_ordered"]


def test_valuation_witness_in_monomial_ring(ring):
    R = ring("F2[x,y]/(x^2,x*y,y^2)")
    check = is_valuation_ring(R)
    assert not check.holds
    assert check.witness == ((0, 0, 1), (0, 1, 0))
    assert verify_incomparable(R, *check.witness)
    assert check.agreement


def test_valuation_methods_are_decided_separately(ring, monkeypatch):
    import ideals.lattice as lattice_module

    R = ring("F2[x,y]/(x^2,x*y,y^2)")
    assert is_valuation_ring(R).methods["local_and_two_generated_principal"] is False
    monkeypatch.setattr(lattice_module, "_local_and_two_generated_principal", lambda ring, lattice: True)
    check = is_valuation_ring(R)
    assert not check.holds
    assert check.agreement is False


@pytest.mark.parametrize("expression", arithmetical_catalog(64))
def test_checker_methods_agree_on_the_catalog(ring, expression):
    R = ring(expression)
    valuation = is_valuation_ring(R)
    arithmetical = is_arithmetical(R)
    assert None not in valuation.methods.values()
    assert valuation.agreement and arithmetical.agreement
    if valuation.holds:
        assert arithmetical.holds


def test_non_local_ring_is_not_valuation(z12):
    check = is_valuation_ring(z12)
    assert not check.holds
    assert check.methods["local_and_two_generated_principal"] is False
    assert check.agreement


def test_closed_form_valuation_verdicts(ring):
    assert is_valuation_ring(ring("Zloc(3)")).closed_form
    assert is_valuation_ring(ring("triv(Zloc(2), Frac)")).holds
    check = is_valuation_ring(ring("triv(Zloc(2), free(1))"))
    assert not check.holds
    assert check.reason == "NonTorsionNotK"


def test_z12_is_arithmetical(z12):
    check = is_arithmetical(z12)
    assert check.holds
    assert check.factor_verdicts == (True, True)
    assert check.agreement


def test_distributivity_failure_is_replayed(ring):
    R = ring("F2[x,y]/(x^2,x*y,y^2)")
    check = is_arithmetical(R)
    assert not check.holds
    assert check.agreement
    a, b, c = check.witness
    assert not distributivity_holds(lattice_for(R), a.elements, b.elements, c.elements)


def test_parallel_arithmetical_check_finds_the_same_witness(ring):
    R = ring("F2[x,y]/(x^2,x*y,y^2)")
    assert is_arithmetical(R, workers=3).witness == is_arithmetical(R).witness


def test_ideal_enumeration_bound(ring):
    with pytest.raises(CapabilityError):
        all_ideals(ring("Z/64"), bound=32)


def test_finite_rings_are_coherent(ring):
    check = is_coherent(ring("F2[x,y]/(x^2,x*y,y^2)"))
    assert check.holds
    assert check.annihilators_checked > 0


def test_chain_ring_precondition(z8, z12):
    require_chain_ring(z8)
    with pytest.raises(PreconditionError):
        require_chain_ring(z12)


@given(st.integers(2, 48))
def test_zmod_is_arithmetical(n):
    check = is_arithmetical(construct_ring(ZMod(n)))
    assert check.holds and check.agreement


@given(st.integers(2, 40))
def test_zmod_valuation_iff_prime_power(n):
    from sympy import factorint

    assert is_valuation_ring(construct_ring(ZMod(n))).holds == (len(factorint(n)) == 1)
