"""
analysis.py
Element annihilators, torsion classification and uniserial checks for modules
"""

from __future__ import annotations

import logging
from enum import Enum
from typing import Optional

from ideals.lattice import Ideal, dvr_power_ideal, lattice_for
from modules.base import Module, select_generators
from modules.dvr_modules import DvrFormalSumModule
from rings.core import CapabilityError, InternalError, Verdict
from rings.descriptors import CyclicTorsion
from rings.dvr import INFINITY

logger = logging.getLogger(__name__)


class TorsionClass(str, Enum):
    ZERO = "Zero"
    TORSION = "Torsion"
    TORSION_FREE = "TorsionFree"
    MIXED = "Mixed"


def annihilator_of_element(module: Module, x) -> Ideal:
    """(0:x) = {a : a·x = 0}."""
    module.validate(x)
    ring = module.ring
    if isinstance(module, DvrFormalSumModule):
        if x == module.zero:
            return dvr_power_ideal(ring, 0)
        exponent = 0
        for i, (s, a) in enumerate(zip(module.summands, x)):
            if a == ring.zero:
                continue
            if not isinstance(s, CyclicTorsion):
                return dvr_power_ideal(ring, INFINITY)
            exponent = max(exponent, s.k - module.component_valuation(i, a))
        return dvr_power_ideal(ring, exponent)
    lattice = lattice_for(ring)
    return lattice.make(frozenset(a for a in lattice.elements if module.scale(a, x) == module.zero))


def is_torsion_element(module: Module, x) -> bool:
    """Some nonzero scalar kills x."""
    ideal = annihilator_of_element(module, x)
    return not ideal.is_zero


def torsion_classification(module: Module) -> TorsionClass:
    if isinstance(module, DvrFormalSumModule):
        if not module.summands:
            return TorsionClass.ZERO
        if not module.has_torsion_free:
            return TorsionClass.TORSION
        if not module.has_torsion:
            return TorsionClass.TORSION_FREE
        return TorsionClass.MIXED
    nonzero = [x for x in module.elements() if x != module.zero]
    if not nonzero:
        return TorsionClass.ZERO
    flags = {is_torsion_element(module, x) for x in nonzero}
    if flags == {True}:
        return TorsionClass.TORSION
    if flags == {False}:
        return TorsionClass.TORSION_FREE
    return TorsionClass.MIXED


def in_cyclic_submodule(module: Module, x, y) -> bool:
    """x ∈ A·y, decided by scanning scalars (finite base)."""
    return any(module.scale(a, y) == x for a in module.ring.elements(bound=module.ring.order))


def incomparable_by_support(module: DvrFormalSumModule, x, y) -> bool:
    """
    x ∉ Ay and y ∉ Ax for formal sums: a·y vanishes wherever y does, so
    x ∈ Ay needs supp(x) ⊆ supp(y).
    """
    zero = module.ring.zero
    sx = {i for i, a in enumerate(x) if a != zero}
    sy = {i for i, a in enumerate(y) if a != zero}
    return not (sx <= sy or sy <= sx)


def is_uniserial(module: Module) -> Verdict:
    """Elementwise form: for all x, y either x ∈ Ay or y ∈ Ax."""
    if isinstance(module, DvrFormalSumModule):
        if len(module.summands) <= 1:
            return Verdict(True)
        witness = (module.unit_vector(0), module.unit_vector(1))
        if not incomparable_by_support(module, *witness):
            raise InternalError(f"uniserial witness for {module.label} does not replay")
        return Verdict(False, witness)
    items = module.elements()
    cyclic = {x: module.cyclic_submodule(x) for x in items}
    for i, x in enumerate(items):
        for y in items[i + 1:]:
            if x not in cyclic[y] and y not in cyclic[x]:
                return Verdict(False, (x, y))
    return Verdict(True)


def minimal_generators(module: Module, local: Optional[bool] = None) -> list:
    """Generating set of a finite module; minimal when the base ring is local."""
    if module.ring.order is None:
        raise CapabilityError(f"generator selection needs a finite base ring, not {module.ring.label}")
    return select_generators(module.ring, module.elements(), module.add, module.scale, module.zero, local)


def is_isomorphic_to_base(module: Module) -> Verdict:
    """
    For finite modules: E ≅ A iff |E| = |A| and some x has (0:x) = 0
    (then A·x has |A| elements, so x generates E freely).
    """
    ring = module.ring
    if ring.order is None or module.order is None:
        raise CapabilityError("isomorphism with the base ring is decided for finite modules only")
    if module.order != ring.order:
        return Verdict(False)
    for x in module.elements():
        if annihilator_of_element(module, x).is_zero:
            return Verdict(True, x)
    return Verdict(False)

