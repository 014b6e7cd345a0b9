from itertools import product
from math import prod

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harness.catalog import arithmetical_catalog
from harness.parser import ring_from_text
from rings.core import ConstructionError
from rings.decomposition import local_decomposition, recognize
from rings.descriptors import MonomialQuotient, PolyQuotient, Product, ZMod, prime_power_parts
from rings.factory import construct_ring
from rings.finite import galois_field


@pytest.mark.parametrize("q, expected", [
    (2, ZMod(2)),
    (4, PolyQuotient(2, (1, 1, 1))),
    (9, PolyQuotient(3, (1, 0, 1))),
])
def test_galois_field_modulus(q, expected):
    assert galois_field(q) == expected


@pytest.mark.parametrize("q", [4, 8, 9])
def test_galois_fields_are_fields(q):
    field = construct_ring(galois_field(q))
    assert field.order == q
    assert field.is_field()
    assert field.is_local().is_local


def test_prime_power_parts():
    assert prime_power_parts(8) == (2, 3)
    assert prime_power_parts(81) == (3, 4)
    with pytest.raises(ConstructionError):
        prime_power_parts(12)


def test_non_monic_relation_is_rejected():
    with pytest.raises(ConstructionError, match="monic"):
        PolyQuotient(2, (1, 0))


def test_truncated_polynomial_ring(f2x3):
    x = f2x3.variables()["x"]
    assert x == (0, 1, 0)
    assert f2x3.order == 8
    assert f2x3.power(x, 2) == (0, 0, 1)
    assert f2x3.power(x, 3) == f2x3.zero
    assert not f2x3.is_field()
    assert f2x3.is_local().is_local


def test_polynomial_unit_inverse(f2x3):
    unit = (1, 1, 0)
    inverse = f2x3.inverse(unit)
    assert f2x3.mul(unit, inverse) == f2x3.one


def test_monomial_quotient_basis():
    ring = construct_ring(MonomialQuotient(2, ("x", "y"), ((2, 0), (1, 1), (0, 2))))
    assert ring.basis == [(0, 0), (1, 0), (0, 1)]
    assert ring.order == 8
    x, y = ring.variables()["x"], ring.variables()["y"]
    assert ring.mul(x, y) == ring.zero
    assert ring.mul(x, x) == ring.zero
    assert ring.is_local().is_local


def test_monomial_quotient_needs_pure_powers():
    with pytest.raises(ConstructionError, match="pure power"):
        MonomialQuotient(2, ("x", "y"), ((2, 0), (1, 1)))


def test_product_ring(ring):
    product = ring("Z/4 x Z/3")
    assert product.order == 12
    verdict = product.is_local()
    assert not verdict.is_local
    assert verdict.witness == ((1, 0), (0, 1))
    assert product.divides((2, 1), (0, 2)).witness == (0, 2)


def test_empty_product_is_rejected():
    with pytest.raises(ConstructionError):
        Product(())


def test_local_decomposition_of_z12(z12):
    decomposition = local_decomposition(z12)
    assert decomposition.idempotents == (4, 9)
    assert [f.order for f in decomposition.factors] == [3, 4]
    assert [f.recognized for f in decomposition.factors] == [ZMod(3), ZMod(4)]
    assert decomposition.embed(decomposition.project(7)) == 7


def test_local_decomposition_of_product(ring):
    decomposition = local_decomposition(ring("F2[x]/(x^2) x Z/3"))
    assert sorted(f.order for f in decomposition.factors) == [3, 4]


def test_recognize_truncated_polynomial(f2x3):
    descriptor, table = recognize(f2x3)
    assert descriptor == PolyQuotient(2, (0, 0, 0, 1))
    assert len(table) == 8


@given(st.integers(2, 40))
def test_decomposition_factors_multiply_to_order(n):
    ring = construct_ring(ZMod(n))
    decomposition = local_decomposition(ring)
    total = 1
    for factor in decomposition.factors:
        assert factor.ring.is_local().is_local
        total *= factor.order
    assert total == n
    assert decomposition.embed(decomposition.idempotents) == ring.one


@pytest.mark.parametrize("expression", arithmetical_catalog(64))
def test_decomposition_is_a_ring_isomorphism(expression):
    R = ring_from_text(expression)
    decomposition = local_decomposition(R)
    factors = [f.ring for f in decomposition.factors]
    table = decomposition.projection_table()
    assert len(set(table.values())) == R.order == prod(f.order for f in factors)
    for factor, column in zip(factors, zip(*table.values())):
        assert set(column) == factor.element_set
    for a, b in product(R.elements(), repeat=2):
        assert table[R.add(a, b)] == tuple(f.add(x, y) for f, x, y in zip(factors, table[a], table[b]))
        assert table[R.mul(a, b)] == tuple(f.mul(x, y) for f, x, y in zip(factors, table[a], table[b]))
    assert all(decomposition.embed(image) == a for a, image in table.items())
