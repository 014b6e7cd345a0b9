from fractions import Fraction

import pytest

from harness.catalog import random_relation_matrix
from harness.parser import module_from_text
from modules.analysis import (
    TorsionClass,
    annihilator_of_element,
    in_cyclic_submodule,
    incomparable_by_support,
    is_isomorphic_to_base,
    is_uniserial,
    minimal_generators,
    torsion_classification,
)
from modules.warfield import brute_force_profile, chain_ring_data, warfield_decompose
from rings.core import CapabilityError, ConstructionError, InternalError, PreconditionError
from rings.descriptors import CyclicTorsion, DvrFormalSum, FinitePresentation, Free, FractionField, ZMod, direct_sum
from rings.dvr import element_rng
from rings.factory import construct_module


def test_cyclic_quotient(z8):
    module = module_from_text("Z/8/(2)", z8)
    assert module.order == 2
    assert module.elements() == [(0,), (1,)]
    assert module.label == "Z/8/(2)"
    assert module.scale(3, (1,)) == (1,)


def test_presented_module_order(ring):
    base = ring("Z/4")
    module = module_from_text("free(2)/rel [[2, 0], [0, 2]]", base)
    assert module.order == 4
    assert len(minimal_generators(module)) == 2


def test_relation_row_length_is_checked():
    with pytest.raises(ConstructionError):
        FinitePresentation(ZMod(4), 2, ((1,),))


def test_direct_sum_is_block_diagonal():
    total = direct_sum(FinitePresentation(ZMod(4), 1, ((2,),)), FinitePresentation(ZMod(4), 1, ((1,),)))
    assert total.rank == 2
    assert total.relations == ((2, 0), (0, 1))
    assert construct_module(total).order == 2


@pytest.mark.parametrize("expression, module_text, expected", [
    ("Z/4", "free(1)", TorsionClass.MIXED),
    ("Z/4", "Z/4/(2)", TorsionClass.TORSION),
    ("Z/2", "free(2)", TorsionClass.TORSION_FREE),
])
def test_torsion_classification(ring, expression, module_text, expected):
    assert torsion_classification(module_from_text(module_text, ring(expression))) is expected


def test_uniserial(ring):
    assert is_uniserial(module_from_text("free(1)", ring("Z/4"))).holds
    verdict = is_uniserial(module_from_text("free(2)", ring("Z/2")))
    assert not verdict.holds
    x, y = verdict.witness
    module = module_from_text("free(2)", ring("Z/2"))
    assert not in_cyclic_submodule(module, x, y)
    assert not in_cyclic_submodule(module, y, x)


def test_isomorphic_to_base(ring):
    verdict = is_isomorphic_to_base(module_from_text("free(1)", ring("Z/4")))
    assert verdict.holds and verdict.witness == (1,)
    assert not is_isomorphic_to_base(module_from_text("Z/4/(2)", ring("Z/4"))).holds


def test_dvr_formal_sum(zloc2):
    module = construct_module(DvrFormalSum(zloc2.descriptor, (Free(), CyclicTorsion(1))))
    assert module.order is None
    assert torsion_classification(module) is TorsionClass.MIXED
    assert annihilator_of_element(module, module.canonical((Fraction(0), Fraction(1)))).describe() == "(2)"
    assert annihilator_of_element(module, module.unit_vector(0)).is_zero
    with pytest.raises(CapabilityError):
        module.elements()


def test_dvr_module_parsing(zloc2):
    module = module_from_text("Frac + Zloc(2)/(4)", zloc2)
    assert module.summands == (FractionField(), CyclicTorsion(2))
    assert module.order is None


def test_finite_presentation_needs_finite_base(zloc2):
    with pytest.raises(CapabilityError):
        construct_module(FinitePresentation(zloc2.descriptor, 1, ()))


def test_chain_ring_data(z8, f2x3):
    data = chain_ring_data(z8)
    assert (data.pi, data.length, data.residue_size) == (2, 3, 2)
    assert data.valuation(4) == 2
    assert data.valuation(0) == 3
    assert chain_ring_data(f2x3).pi == (0, 1, 0)


def test_warfield_diagonalises(z8):
    matrix = ((2, 4), (0, 4))
    decomposition = warfield_decompose(z8, matrix)
    assert decomposition.exponents == (1, 2)
    assert decomposition.generators == (2, 4)
    assert decomposition.predicted_order == 8
    assert decomposition.predicted_histogram() == [1, 4, 8, 8]
    assert brute_force_profile(z8, matrix, 2) == (8, [1, 4, 8, 8])


def test_warfield_keeps_free_summands(z8):
    decomposition = warfield_decompose(z8, ((1, 0),), rank=2)
    assert decomposition.exponents == (3,)
    assert decomposition.predicted_order == 8


def test_warfield_rejects_non_chain_rings(z12):
    with pytest.raises(PreconditionError):
        warfield_decompose(z12, ((2, 0),))


def test_formal_sum_uniserial_witness_replays(zloc2):
    module = construct_module(DvrFormalSum(zloc2.descriptor, (Free(), CyclicTorsion(1))))
    verdict = is_uniserial(module)
    assert not verdict.holds
    assert incomparable_by_support(module, *verdict.witness)
    both = module.canonical((Fraction(1), Fraction(1)))
    assert not incomparable_by_support(module, module.unit_vector(0), both)
    assert is_uniserial(construct_module(DvrFormalSum(zloc2.descriptor, (FractionField(),)))).holds


def test_uniserial_witness_that_fails_to_replay_is_an_error(zloc2, monkeypatch):
    module = construct_module(DvrFormalSum(zloc2.descriptor, (Free(), CyclicTorsion(1))))
    both = module.canonical((Fraction(1), Fraction(1)))
    monkeypatch.setattr(module, "unit_vector", lambda i: both)
    with pytest.raises(InternalError):
        is_uniserial(module)


def _finite_modules(ring):
    z12, z4, f2x3 = ring("Z/12"), ring("Z/4"), ring("F2[x]/(x^3)")
    x, x2 = (0, 1, 0), (0, 0, 1)
    return [
        module_from_text("Z/8/(2)", ring("Z/8")),
        module_from_text("free(2)/rel [[2, 0], [0, 3]]", z12),
        module_from_text("free(2)/rel [[2, 0], [0, 2]]", z4),
        construct_module(FinitePresentation(f2x3.descriptor, 2, ((x, x2),))),
    ]


def test_element_annihilators_are_ideals(ring):
    for module in _finite_modules(ring):
        R = module.ring
        for m in module.elements():
            members = annihilator_of_element(module, m).elements
            assert R.zero in members
            for a in members:
                assert all(R.add(a, b) in members for b in members)
                assert all(R.mul(r, a) in members for r in R.elements())
                assert module.scale(a, m) == module.zero


@pytest.mark.parametrize("expression, rank", [("Z/8", 2), ("Z/9", 2), ("F2[x]/(x^3)", 2), ("Z/4", 3)])
def test_warfield_matches_coset_enumeration_on_random_matrices(ring, expression, rank):
    R = ring(expression)
    for index in range(50):
        rng = element_rng(11, index)
        matrix = random_relation_matrix(R, rng, int(rng.integers(1, 4)), rank)
        decomposition = warfield_decompose(R, matrix, rank)
        order, histogram = brute_force_profile(R, matrix, rank)
        assert decomposition.predicted_order == order, matrix
        assert decomposition.predicted_histogram() == histogram, matrix
