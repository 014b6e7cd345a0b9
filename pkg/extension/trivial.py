"""
trivial.py
Trivial ring extensions A ∝ E

Elements are pairs (a, e) with (a, e)(b, f) = (ab, af + be); 0 ∝ E is a
square-zero ideal. Finite instances use the exhaustive defaults of
``Ring``; A ∝ E over a DVR with E a formal sum of A, A/pi^k and K gets
closed forms for units, zero divisors, divisibility and annihilators.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional, Sequence, Tuple

from ideals.lattice import Ideal, closed_form_ideal, lattice_for
from modules.analysis import annihilator_of_element, is_isomorphic_to_base, torsion_classification, TorsionClass
from modules.dvr_modules import DvrFormalSumModule
from rings.core import (
    CapabilityError,
    ConstructionError,
    Divides,
    DivisibilityVerdict,
    LocalityVerdict,
    NotDivides,
    Ring,
    Verdict,
)
from rings.descriptors import CyclicTorsion, FractionField, Free, TrivialExtension
from rings.dvr import DiscreteValuationRing, dvr_divides
from rings.factory import construct_module, construct_ring

logger = logging.getLogger(__name__)


class TrivialExtensionRing(Ring):
    def __init__(self, descriptor: TrivialExtension):
        super().__init__(descriptor)
        self.base = construct_ring(descriptor.base)
        self.module = construct_module(descriptor.module)
        if self.module.ring is not self.base:
            raise ConstructionError("module is defined over a different base ring")
        if self.module.is_zero_module() or (
            isinstance(self.module, DvrFormalSumModule) and not self.module.summands
        ):
            raise ConstructionError("the module of a trivial extension must be nonzero")

    @property
    def closed_form(self) -> bool:
        return isinstance(self.module, DvrFormalSumModule) and isinstance(self.base, DiscreteValuationRing)

    @property
    def label(self) -> str:
        return f"triv({self.base.label}, {self.module.label})"

    @property
    def order(self) -> Optional[int]:
        if self.base.order is None or self.module.order is None:
            return None
        return self.base.order * self.module.order

    @property
    def zero(self):
        return (self.base.zero, self.module.zero)

    @property
    def one(self):
        return (self.base.one, self.module.zero)

    def add(self, x, y):
        return (self.base.add(x[0], y[0]), self.module.add(x[1], y[1]))

    def neg(self, x):
        return (self.base.neg(x[0]), self.module.neg(x[1]))

    def mul(self, x, y):
        (a, e), (b, f) = x, y
        E = self.module
        return (self.base.mul(a, b), E.add(E.scale(a, f), E.scale(b, e)))

    def from_int(self, n: int):
        return (self.base.from_int(n), self.module.zero)

    def contains(self, x) -> bool:
        return (
            isinstance(x, tuple)
            and len(x) == 2
            and self.base.contains(x[0])
            and self.module.contains(x[1])
        )

    def _enumerate(self):
        return itertools.product(self.base.elements(bound=self.base.order), self.module.elements(bound=self.module.order))

    def variables(self):
        return {name: (value, self.module.zero) for name, value in self.base.variables().items()}

    def format_element(self, x) -> str:
        return f"({self.base.format_element(x[0])}, {self.module.format_element(x[1])})"

    def inverse(self, x):
        """(a, e)^-1 = (a^-1, -a^-2 e); a unit iff a is a unit of A."""
        a, e = x
        a_inverse = self.base.inverse(a)
        if a_inverse is None:
            return None
        E = self.module
        return (a_inverse, E.neg(E.scale(self.base.mul(a_inverse, a_inverse), e)))

    def is_local(self) -> LocalityVerdict:
        base = self.base.is_local()
        if not base.is_local:
            e, f = base.witness
            return LocalityVerdict(False, witness=((e, self.module.zero), (f, self.module.zero)))
        if self.order is not None:
            maximal = tuple(x for x in self.elements(bound=self.order) if self.base.inverse(x[0]) is None)
            return LocalityVerdict(True, maximal_ideal=maximal)
        return LocalityVerdict(
            True,
            generator=(base.generator, self.module.zero),
            description=f"{base.description} ∝ E",
        )

    def is_field(self) -> bool:
        return False

    # --- closed forms over a DVR ---------------------------------------
    def is_zero_divisor(self, x) -> Verdict:
        if not self.closed_form:
            return super().is_zero_divisor(x)
        self.validate(x)
        if x == self.zero:
            return Verdict(False)
        a, _ = x
        E = self.module
        A = self.base
        if a == A.zero:
            return Verdict(True, (A.zero, E.unit_vector(0)))
        if A.valuation(a) >= 1:
            for i, s in enumerate(E.summands):
                if isinstance(s, CyclicTorsion):
                    component = A.power(A.pi, s.k - 1)
                    vector = tuple(component if j == i else A.zero for j in range(len(E.summands)))
                    return Verdict(True, (A.zero, vector))
        return Verdict(False)

    def divides(self, x, y) -> DivisibilityVerdict:
        if not self.closed_form:
            return super().divides(x, y)
        self.validate(x, y)
        (a, e), (b, f) = x, y
        A, E = self.base, self.module
        if a != A.zero:
            verdict = dvr_divides(A, a, b)
            if not verdict:
                return NotDivides()
            c = verdict.witness
            target = E.sub(f, E.scale(c, e))
            z = _solve_scalar_equation(E, a, target)
            return NotDivides() if z is None else Divides((c, z))
        if b != A.zero:
            return NotDivides()
        c = _solve_coefficient(E, e, f)
        return NotDivides() if c is None else Divides((c, E.zero))


def _solve_scalar_equation(E: DvrFormalSumModule, a, target):
    """z with a·z = target componentwise, or None."""
    A, K = E.ring, E.field
    out = []
    for s, t in zip(E.summands, target):
        if isinstance(s, FractionField):
            out.append(K.div(t, a))
        elif isinstance(s, Free):
            verdict = dvr_divides(A, a, t)
            if not verdict:
                return None
            out.append(verdict.witness)
        else:
            found = next((z for z in A.residues(s.k) if A.residue(A.mul(a, z), s.k) == t), None)
            if found is None:
                return None
            out.append(found)
    return tuple(out)


def _solve_coefficient(E: DvrFormalSumModule, e, f):
    """c ∈ A with c·e = f, or None."""
    A, K = E.ring, E.field
    candidate = None
    for s, x, y in zip(E.summands, e, f):
        if isinstance(s, CyclicTorsion):
            continue
        if x != A.zero:
            candidate = K.div(y, x)
            break
        if y != A.zero:
            return None
    if candidate is not None:
        if not A.contains(candidate):
            return None
        return candidate if E.scale(candidate, e) == f else None
    top = max((s.k for s in E.summands if isinstance(s, CyclicTorsion)), default=0)
    return next((c for c in A.residues(top) if E.scale(c, e) == f), None)


# ============================
# CONSTRUCTION AND PREDICTION
# ============================

def make_trivial_extension(base, module) -> TrivialExtension:
    """Descriptor of A ∝ E, validated by building the ring."""
    descriptor = TrivialExtension(base, module)
    construct_ring(descriptor)
    return descriptor


class PredictionReason(str, Enum):
    BASE_NOT_FIELD = "BaseNotField"
    MODULE_NOT_ISO_BASE = "ModuleNotIsoBase"
    BASE_FIELD_MODULE_ISO_BASE = "BaseFieldModuleIsoBase"
    BASE_VALUATION_DOMAIN_MODULE_IS_K = "BaseValuationDomainModuleIsK"
    MIXED_MODULE = "MixedModule"
    NON_TORSION_NOT_K = "NonTorsionNotK"


@dataclass(frozen=True)
class ValuationPrediction:
    verdict: bool
    reason: PredictionReason
    witness: Any = None

    def __bool__(self) -> bool:
        return self.verdict


def predict_valuation(base, module) -> ValuationPrediction:
    """
    Valuation criterion for A ∝ E:
    finite A: A is a field and E ≅ A;
    A a DVR: E ≅ K; a mixed E never gives a valuation ring.
    """
    A = construct_ring(base)
    E = construct_module(module)
    if isinstance(A, DiscreteValuationRing) and isinstance(E, DvrFormalSumModule):
        if E.is_fraction_field:
            return ValuationPrediction(True, PredictionReason.BASE_VALUATION_DOMAIN_MODULE_IS_K)
        if torsion_classification(E) == TorsionClass.MIXED:
            return ValuationPrediction(False, PredictionReason.MIXED_MODULE)
        if E.has_torsion_free:
            return ValuationPrediction(False, PredictionReason.NON_TORSION_NOT_K)
        # torsion E over a domain that is not a field
        return ValuationPrediction(False, PredictionReason.BASE_NOT_FIELD, A.pi)
    if A.order is None or E.order is None:
        raise CapabilityError(f"no valuation criterion for {A.label} ∝ {E.label}")
    if not A.is_field():
        witness = next(a for a in A.elements(bound=A.order) if a != A.zero and A.inverse(a) is None)
        return ValuationPrediction(False, PredictionReason.BASE_NOT_FIELD, witness)
    iso = is_isomorphic_to_base(E)
    if not iso.holds:
        return ValuationPrediction(False, PredictionReason.MODULE_NOT_ISO_BASE)
    return ValuationPrediction(True, PredictionReason.BASE_FIELD_MODULE_ISO_BASE, iso.witness)


def predict_for_ring(ring: TrivialExtensionRing) -> ValuationPrediction:
    return predict_valuation(ring.descriptor.base, ring.descriptor.module)


def find_incomparable_pair(ring: TrivialExtensionRing) -> Optional[Tuple]:
    """First pair of canonical candidates (0, e_i), (pi, 0), (0, pi e_i) that are incomparable."""
    A, E = ring.base, ring.module
    if ring.order is not None:
        from ideals.lattice import is_valuation_ring

        return is_valuation_ring(ring).witness
    candidates = [(A.pi, E.zero)]
    for i in range(len(E.summands)):
        candidates.append((A.zero, E.unit_vector(i)))
        vector = tuple(A.pi if j == i else A.zero for j in range(len(E.summands)))
        candidates.append((A.zero, E.canonical(vector)))
    for x, y in itertools.combinations(candidates, 2):
        if x != y and not ring.divides(x, y) and not ring.divides(y, x):
            return (x, y)
    return None


# ============================
# ANNIHILATORS
# ============================

@dataclass(frozen=True)
class NonFinitelyGeneratedCertificate:
    """
    0 ∝ K is not finitely generated over A ∝ K: for any finite list of
    candidate generators (0, x_i), the element (0, pi^(m-1)) with m the least
    valuation among the x_i lies outside their span.
    """
    ring: TrivialExtensionRing

    def escape(self, candidates: Sequence) -> Tuple:
        A = self.ring.base
        K = self.ring.module.field
        valuations = [K.valuation(x[1][0]) for x in candidates if x[1][0] != K.zero]
        m = min(valuations) if valuations else 0
        exponent = m - 1
        value = K.one
        step = A.pi if exponent >= 0 else K.div(K.one, A.pi)
        for _ in range(abs(exponent)):
            value = K.mul(value, step)
        return (A.zero, (value,))

    def verify(self, candidates: Sequence) -> bool:
        """The escape element is not an A-combination of the candidates."""
        A = self.ring.base
        escaped = self.escape(candidates)[1][0]
        coefficients_needed = [x[1][0] for x in candidates if x[1][0] != A.zero]
        if not coefficients_needed:
            return escaped != A.zero
        # span of the candidates is (pi^m) ⊂ K as an A-module
        K = self.ring.module.field
        m = min(K.valuation(x) for x in coefficients_needed)
        return K.valuation(escaped) < m


def annihilator_in_triv_ext(ring: TrivialExtensionRing, x) -> Ideal:
    """
    (0 : (a, e)). Finite rings: exhaustive scan. A ∝ E over a DVR:
    a ≠ 0 gives 0 ∝ E[a] (the a-torsion of E); a = 0 gives ann_A(e) ∝ E,
    which is 0 ∝ E and not finitely generated when e is not torsion and E
    has a K summand.
    """
    ring.validate(x)
    if ring.order is not None:
        return lattice_for(ring).annihilator(x)
    if not ring.closed_form:
        raise CapabilityError(f"no closed-form annihilator in {ring.label}")
    A, E = ring.base, ring.module
    a, e = x
    if x == ring.zero:
        return closed_form_ideal(ring, "(1)", lambda y: True, (ring.one,), ring.one)
    if a != A.zero:
        if A.valuation(a) == 0 or not E.has_torsion:
            return closed_form_ideal(ring, "(0)", lambda y: y == ring.zero, (ring.zero,), ring.zero)
        va = A.valuation(a)
        generators = []
        for i, s in enumerate(E.summands):
            if isinstance(s, CyclicTorsion):
                vector = tuple(A.power(A.pi, max(s.k - va, 0)) if j == i else A.zero for j in range(len(E.summands)))
                generators.append((A.zero, E.canonical(vector)))
        return closed_form_ideal(
            ring,
            f"0 ∝ E[{A.format_element(a)}]",
            lambda y: y[0] == A.zero and E.scale(a, y[1]) == E.zero,
            generators,
        )
    ann = annihilator_of_element(E, e)

    def member(y):
        return y[0] in ann

    if ann.is_zero:
        if any(isinstance(s, FractionField) for s in E.summands):
            shape = "0 ∝ K" if E.is_fraction_field else "0 ∝ E"
            return closed_form_ideal(
                ring, shape, member, (), None,
                finitely_generated=False, certificate=NonFinitelyGeneratedCertificate(ring),
            )
        generators = [(A.zero, E.unit_vector(i)) for i in range(len(E.summands))]
        return closed_form_ideal(ring, "0 ∝ E", member, generators)
    # pi^s K = K, so a nonzero (pi^s) absorbs every K summand
    generators = [(ann.principal_generator, E.zero)] + [
        (A.zero, E.unit_vector(i)) for i, s in enumerate(E.summands) if not isinstance(s, FractionField)
    ]
    return closed_form_ideal(ring, f"{ann.describe()} ∝ E", member, generators)
