from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extension.trivial import (
    NonFinitelyGeneratedCertificate,
    PredictionReason,
    annihilator_in_triv_ext,
    find_incomparable_pair,
    make_trivial_extension,
    predict_valuation,
)
from harness.parser import element_from_text
from ideals.lattice import is_valuation_ring, verify_incomparable
from rings.core import ConstructionError
from rings.descriptors import (
    CyclicTorsion,
    DvrFormalSum,
    FractionField,
    Free,
    LocalizedIntegers,
    PolyQuotient,
    ZMod,
    cyclic_quotient,
    free_module,
)
from rings.factory import construct_ring


def test_order_and_square_zero(ring):
    R = ring("triv(Z/4, Z/4/(2))")
    assert R.order == 8
    nilpotent = [x for x in R.elements() if x[0] == 0]
    for x in nilpotent:
        for y in nilpotent:
            assert R.mul(x, y) == R.zero


def test_units_come_from_the_base(ring):
    R = ring("triv(Z/4, Z/4/(2))")
    for x in R.elements():
        assert (R.inverse(x) is not None) == (x[0] in (1, 3))


def test_z2_idealization_is_dual_numbers():
    R = construct_ring(make_trivial_extension(ZMod(2), free_module(ZMod(2))))
    dual = construct_ring(PolyQuotient(2, (0, 0, 1)))
    assert R.order == dual.order == 4
    t = (0, (1,))
    assert R.mul(t, t) == R.zero
    assert len([x for x in R.elements() if R.mul(x, x) == R.zero]) == len(
        [a for a in dual.elements() if dual.mul(a, a) == dual.zero]
    )


def test_zero_module_is_rejected():
    with pytest.raises(ConstructionError):
        make_trivial_extension(ZMod(4), cyclic_quotient(ZMod(4), 1))


def test_prediction_over_finite_bases():
    assert predict_valuation(ZMod(2), free_module(ZMod(2))).verdict
    prediction = predict_valuation(ZMod(4), cyclic_quotient(ZMod(4), 2))
    assert not prediction.verdict
    assert prediction.reason is PredictionReason.BASE_NOT_FIELD
    prediction = predict_valuation(ZMod(2), free_module(ZMod(2), 2))
    assert prediction.reason is PredictionReason.MODULE_NOT_ISO_BASE


@pytest.mark.parametrize("summands, verdict, reason", [
    ((FractionField(),), True, PredictionReason.BASE_VALUATION_DOMAIN_MODULE_IS_K),
    ((Free(), CyclicTorsion(1)), False, PredictionReason.MIXED_MODULE),
    ((Free(),), False, PredictionReason.NON_TORSION_NOT_K),
    ((CyclicTorsion(2),), False, PredictionReason.BASE_NOT_FIELD),
])
def test_prediction_over_a_dvr(summands, verdict, reason):
    base = LocalizedIntegers(2)
    prediction = predict_valuation(base, DvrFormalSum(base, summands))
    assert prediction.verdict is verdict
    assert prediction.reason is reason


def test_prediction_matches_direct_check(ring):
    for expression in ("triv(Z/2, Z/2)", "triv(Z/4, Z/4/(2))", "triv(Z/3, free(2))", "triv(F4, F4)"):
        R = ring(expression)
        direct = is_valuation_ring(R)
        predicted = predict_valuation(R.descriptor.base, R.descriptor.module)
        assert direct.holds == predicted.verdict, expression


def test_mixed_module_incomparable_pair(ring):
    R = ring("triv(Zloc(2), free(1) + Zloc(2)/(2))")
    pair = find_incomparable_pair(R)
    assert pair is not None
    assert verify_incomparable(R, *pair)


def test_annihilator_of_nilpotent_in_a_kq(triv_q):
    x = element_from_text(triv_q, "(0, 5)")
    ideal = annihilator_in_triv_ext(triv_q, x)
    assert ideal.key == "0 ∝ K"
    assert not ideal.finitely_generated
    assert (Fraction(0), (Fraction(7, 3),)) in ideal
    assert (Fraction(1), (Fraction(0),)) not in ideal


def test_annihilator_of_regular_element_in_a_kq(triv_q):
    ideal = annihilator_in_triv_ext(triv_q, element_from_text(triv_q, "(2, 5)"))
    assert ideal.is_zero


def test_finite_annihilator_by_scan(ring):
    R = ring("triv(Z/4, Z/4/(2))")
    ideal = annihilator_in_triv_ext(R, (2, (0,)))
    assert ideal.elements == frozenset({(0, (0,)), (2, (0,)), (0, (1,)), (2, (1,))})


def test_certificate_escapes_any_candidate_list(triv_q):
    certificate = NonFinitelyGeneratedCertificate(triv_q)
    candidates = [(Fraction(0), (Fraction(1, 4),)), (Fraction(0), (Fraction(6),))]
    escaped = certificate.escape(candidates)
    assert escaped == (Fraction(0), (Fraction(1, 8),))
    assert certificate.verify(candidates)


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 50))
def test_a_kq_divisibility_is_total(a, b, c, d):
    from harness.parser import ring_from_text

    R = ring_from_text("triv(Zloc(2), Frac)")
    x = (Fraction(a), (Fraction(b, d),))
    y = (Fraction(c), (Fraction(a + 1, d),))
    forward, backward = R.divides(x, y), R.divides(y, x)
    assert forward or backward
    if forward:
        assert R.mul(x, forward.witness) == y
    if backward:
        assert R.mul(y, backward.witness) == x
