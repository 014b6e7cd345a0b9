from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from harness.catalog import arithmetical_catalog, chain_ring_catalog
from harness.parser import ring_from_text
from rings.core import (
    ConstructionError,
    Divides,
    NotDivides,
    RepresentationError,
    UsageError,
    arithmetic,
    divides,
    is_local,
    is_unit,
    is_zero_divisor,
)
from rings.decomposition import local_decomposition
from rings.descriptors import ZMod
from rings.dvr import element_rng
from rings.factory import construct_ring

SMALL_TRIVIAL_EXTENSIONS = (
    "triv(Z/2, Z/2)",
    "triv(Z/4, Z/4/(2))",
    "triv(Z/4, free(2)/rel [[2, 0], [0, 2]])",
)
SMALL_RINGS = arithmetical_catalog(16) + SMALL_TRIVIAL_EXTENSIONS
LARGER_RINGS = sorted(
    {e for e in arithmetical_catalog(64) + chain_ring_catalog(64) if ring_from_text(e).order > 16}
)


def assert_ring_axioms(R, triples):
    """Axioms on each triple; every result must be one of the canonical elements."""
    members = R.element_set
    for a, b, c in triples:
        s, m = R.add(a, b), R.mul(a, b)
        assert s in members and m in members and R.neg(a) in members
        assert s == R.add(b, a)
        assert m == R.mul(b, a)
        assert R.add(s, c) == R.add(a, R.add(b, c))
        assert R.mul(m, c) == R.mul(a, R.mul(b, c))
        assert R.mul(a, R.add(b, c)) == R.add(m, R.mul(a, c))
        assert R.add(a, R.zero) == a
        assert R.mul(a, R.one) == a
        assert R.add(a, R.neg(a)) == R.zero


def test_modulus_below_two_is_rejected():
    with pytest.raises(ConstructionError, match="modulus"):
        ZMod(1)


def test_construct_ring_is_cached():
    assert construct_ring(ZMod(12)) is construct_ring(ZMod(12))


def test_unit_carries_inverse(z12):
    verdict = is_unit(z12, 5)
    assert verdict.holds
    assert z12.mul(5, verdict.witness) == 1
    assert not is_unit(z12, 4)


def test_zero_divisor_witness(z12):
    verdict = is_zero_divisor(z12, 4)
    assert verdict.holds
    assert verdict.witness != 0
    assert z12.mul(4, verdict.witness) == 0


def test_zero_is_not_reported_as_zero_divisor(z12):
    assert not is_zero_divisor(z12, 0)


def test_divides_gives_least_multiplier(z12):
    assert divides(z12, 4, 8) == Divides(2)
    assert divides(z12, 4, 6) == NotDivides()
    assert divides(z12, 0, 3) == NotDivides()


def test_zero_divides_zero(z12):
    assert divides(z12, 0, 0) == Divides(0)


def test_non_canonical_payload_is_rejected(z12):
    with pytest.raises(RepresentationError):
        arithmetic(z12, "add", 12, 1)


def test_unknown_operation(z12):
    with pytest.raises(UsageError):
        arithmetic(z12, "div", 1, 1)


def test_locality_witness_of_z12(z12):
    verdict = is_local(z12)
    assert not verdict.is_local
    e, f = verdict.witness
    assert (e, f) == (4, 9)
    assert z12.inverse(e) is None and z12.inverse(f) is None
    assert z12.inverse(z12.add(e, f)) is not None


def test_maximal_ideal_of_z8(z8):
    verdict = is_local(z8)
    assert verdict.is_local
    assert verdict.maximal_ideal == (0, 2, 4, 6)


def test_power_and_from_int(z8):
    assert z8.power(2, 3) == 0
    assert z8.power(3, 0) == 1
    assert z8.from_int(-1) == 7


@given(st.integers(2, 30), st.data())
def test_ring_axioms_on_zmod(n, data):
    ring = construct_ring(ZMod(n))
    a, b, c = (data.draw(st.integers(0, n - 1)) for _ in range(3))
    assert ring.add(a, b) == ring.add(b, a)
    assert ring.mul(a, b) == ring.mul(b, a)
    assert ring.mul(a, ring.add(b, c)) == ring.add(ring.mul(a, b), ring.mul(a, c))
    assert ring.mul(ring.mul(a, b), c) == ring.mul(a, ring.mul(b, c))
    assert ring.add(a, ring.neg(a)) == ring.zero


@given(st.integers(2, 30), st.data())
def test_divides_witness_replays(n, data):
    ring = construct_ring(ZMod(n))
    a = data.draw(st.integers(0, n - 1))
    b = data.draw(st.integers(0, n - 1))
    verdict = ring.divides(a, b)
    brute = any(ring.mul(a, w) == b for w in range(n))
    assert bool(verdict) == brute
    if verdict:
        assert ring.mul(a, verdict.witness) == b


@pytest.mark.parametrize("expression", SMALL_RINGS)
def test_ring_axioms_exhaustively(expression):
    R = ring_from_text(expression)
    assert_ring_axioms(R, product(R.elements(), repeat=3))


@pytest.mark.parametrize("expression", ["Z/12", "Z/2 x Z/2 x Z/2", "F2[x]/(x^2) x Z/3"])
def test_corner_ring_axioms_exhaustively(expression):
    for factor in local_decomposition(ring_from_text(expression)).factors:
        assert_ring_axioms(factor.ring, product(factor.ring.elements(), repeat=3))


@pytest.mark.parametrize("expression", LARGER_RINGS)
def test_ring_axioms_on_seeded_triples(expression):
    R = ring_from_text(expression)
    items = R.elements()
    picks = element_rng(2024, R.order).integers(0, len(items), size=(1000, 3))
    assert_ring_axioms(R, [tuple(items[i] for i in row) for row in picks])
