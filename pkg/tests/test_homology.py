import pytest
from hypothesis import given
from hypothesis import strategies as st

from harness.parser import module_from_text
from homology.resolution import (
    ChainClass,
    PdKind,
    annihilator_cycle,
    classify_2d,
    cyclic_module,
    idempotent_generator,
    is_free_principal_ideal,
    minimal_free_resolution,
    projective_dimension_cyclic,
    resolution_periodicity,
    syzygy_generators,
)
from rings.core import CapabilityError, PreconditionError
from rings.descriptors import ZMod
from rings.factory import construct_ring


def test_syzygies_of_a_row(z8):
    result = syzygy_generators(z8, ((2, 4),))
    assert result.kernel_order == 16
    for column in result.generators:
        assert z8.add(z8.mul(2, column[0]), z8.mul(4, column[1])) == 0


def test_syzygies_need_a_column_count(z8):
    with pytest.raises(PreconditionError):
        syzygy_generators(z8, ())


def test_free_module_resolves_in_one_step(ring):
    R = ring("Z/4")
    resolution = minimal_free_resolution(R, module_from_text("free(1)", R))
    assert resolution.complete
    assert resolution.length == 0
    assert resolution.betti == (1,)


def test_periodic_resolution_over_z8(z8):
    resolution = minimal_free_resolution(z8, cyclic_module(z8, 4), max_steps=4)
    assert not resolution.complete
    assert resolution.minimal
    assert resolution.betti == (1, 1, 1, 1, 1)
    assert resolution.exact
    assert resolution_periodicity(resolution) == (2, 0)


def test_non_local_resolution_warns(z12, caplog):
    resolution = minimal_free_resolution(z12, module_from_text("Z/12/(2)", z12), max_steps=4)
    assert resolution.warning is not None
    assert not resolution.minimal
    assert resolution.exact
    assert resolution_periodicity(resolution) == (2, 0)
    assert "not local" in caplog.text


def test_resolution_checks_the_base(z8, z12):
    with pytest.raises(PreconditionError):
        minimal_free_resolution(z8, cyclic_module(z12, 2))


def test_resolution_enumeration_bound(ring):
    R = ring("Z/8")
    with pytest.raises(CapabilityError):
        minimal_free_resolution(R, module_from_text("free(3)", R), bound=256)


def test_pd_of_z8_mod_2(z8):
    verdict = projective_dimension_cyclic(z8, 2)
    assert verdict.kind is PdKind.INFINITE_BY_CYCLE
    assert (verdict.b, verdict.c) == (4, 2)
    assert verdict.cycle_checks == (True, True, True)
    assert verdict.is_infinite


def test_pd_cycle_in_truncated_polynomials(f2x3):
    x = f2x3.variables()["x"]
    verdict = projective_dimension_cyclic(f2x3, f2x3.power(x, 2))
    assert verdict.kind is PdKind.INFINITE_BY_CYCLE
    assert verdict.b == x
    assert verdict.c == f2x3.power(x, 2)


@pytest.mark.parametrize("n, a, kind", [
    (6, 2, PdKind.PROJECTIVE),
    (4, 0, PdKind.PROJECTIVE),
    (4, 3, PdKind.ZERO_MODULE),
    (9, 3, PdKind.INFINITE_BY_CYCLE),
])
def test_pd_verdicts_over_zmod(n, a, kind):
    assert projective_dimension_cyclic(construct_ring(ZMod(n)), a).kind is kind


def test_idempotent_generator(ring):
    assert idempotent_generator(ring("Z/6"), 2) == 4
    assert idempotent_generator(ring("Z/8"), 2) is None


def test_annihilator_cycle_over_z12(z12):
    b, c, checks = annihilator_cycle(z12, 2)
    assert (b, c) == (6, 2)
    assert all(checks)


def test_free_principal_ideals(z8, z12):
    assert is_free_principal_ideal(z8, 3)
    assert not is_free_principal_ideal(z8, 2)
    with pytest.raises(PreconditionError):
        is_free_principal_ideal(z12, 5)


def test_classify_chain_rings(ring, z8):
    assert classify_2d(ring("F4")).kind is ChainClass.FIELD
    classification = classify_2d(z8)
    assert classification.kind is ChainClass.NOT_2D
    assert classification.witness == 2
    assert classification.annihilator_generator == 4
    assert classification.verdict.is_infinite


def test_classify_needs_a_chain_ring(z12):
    with pytest.raises(PreconditionError):
        classify_2d(z12)


@given(st.sampled_from([4, 8, 9, 16, 25, 27]), st.data())
def test_non_unit_zero_divisors_of_chain_rings_have_infinite_pd(n, data):
    ring = construct_ring(ZMod(n))
    a = data.draw(st.integers(1, n - 1))
    verdict = projective_dimension_cyclic(ring, a)
    if ring.inverse(a) is not None:
        assert verdict.kind is PdKind.ZERO_MODULE
    else:
        assert verdict.kind is PdKind.INFINITE_BY_CYCLE
        assert ring.mul(a, verdict.b) == 0
