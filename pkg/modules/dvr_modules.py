"""
dvr_modules.py
Formal direct sums over a DVR: A, A/pi^k A and K = qf(A)

Elements are tuples with one component per summand; torsion components
are kept as canonical residue representatives.
"""

from __future__ import annotations

import itertools
import logging
from functools import reduce
from typing import List, Optional

from modules.base import Module
from rings.core import CapabilityError, ConstructionError, DEFAULT_ELEMENT_BOUND
from rings.descriptors import CyclicTorsion, DvrFormalSum, FractionField, Free
from rings.dvr import DiscreteValuationRing, INFINITY
from rings.factory import construct_ring

logger = logging.getLogger(__name__)

SUMMAND_NAMES = {Free: "free", FractionField: "Frac"}


class DvrFormalSumModule(Module):
    def __init__(self, descriptor: DvrFormalSum):
        ring = construct_ring(descriptor.base)
        if not isinstance(ring, DiscreteValuationRing):
            raise ConstructionError(f"{ring.label} is not a DVR")
        super().__init__(descriptor, ring)
        self.summands = descriptor.summands
        self.field = ring.fraction_field()

    @property
    def label(self) -> str:
        parts = []
        for s in self.summands:
            if isinstance(s, CyclicTorsion):
                parts.append(f"{self.ring.label}/(pi^{s.k})")
            else:
                parts.append(SUMMAND_NAMES[type(s)])
        return " + ".join(parts) if parts else "0"

    @property
    def order(self) -> Optional[int]:
        if any(not isinstance(s, CyclicTorsion) for s in self.summands):
            return None
        return reduce(lambda acc, s: acc * self.ring.residue_size ** s.k, self.summands, 1)

    @property
    def zero(self):
        return tuple(self.ring.zero for _ in self.summands)

    def unit_vector(self, i: int):
        return tuple(self.ring.one if j == i else self.ring.zero for j in range(len(self.summands)))

    def add(self, x, y):
        out = []
        for s, a, b in zip(self.summands, x, y):
            total = self.field.add(a, b)
            out.append(self.ring.residue(total, s.k) if isinstance(s, CyclicTorsion) else total)
        return tuple(out)

    def neg(self, x):
        out = []
        for s, a in zip(self.summands, x):
            negated = self.field.neg(a)
            out.append(self.ring.residue(negated, s.k) if isinstance(s, CyclicTorsion) else negated)
        return tuple(out)

    def scale(self, r, x):
        out = []
        for s, a in zip(self.summands, x):
            product = self.field.mul(r, a)
            out.append(self.ring.residue(product, s.k) if isinstance(s, CyclicTorsion) else product)
        return tuple(out)

    def canonical(self, x):
        """Reduce torsion components of a tuple of ring / field elements."""
        return tuple(
            self.ring.residue(a, s.k) if isinstance(s, CyclicTorsion) else a
            for s, a in zip(self.summands, x)
        )

    def contains(self, x) -> bool:
        if not isinstance(x, tuple) or len(x) != len(self.summands):
            return False
        for s, a in zip(self.summands, x):
            if isinstance(s, FractionField):
                if not self.field.contains(a):
                    return False
            elif not self.ring.contains(a):
                return False
            elif isinstance(s, CyclicTorsion) and self.ring.residue(a, s.k) != a:
                return False
        return True

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> List:
        if self.order is None:
            raise CapabilityError(f"the module {self.label} is infinite; its elements cannot be listed")
        if self.order > bound:
            raise CapabilityError(f"{self.label} has {self.order} elements, above the bound {bound}")
        return sorted(itertools.product(*(self.ring.residues(s.k) for s in self.summands)))

    def cyclic_submodule(self, x) -> frozenset:
        if self.order is None:
            raise CapabilityError(f"A·x is infinite in {self.label}")
        top = max((s.k for s in self.summands), default=0)
        return frozenset(self.scale(r, x) for r in self.ring.residues(top))

    def component_valuation(self, i: int, a):
        """Valuation of a component; a zero torsion component counts as its exponent k."""
        s = self.summands[i]
        v = self.field.arithmetic.valuation(a)
        if isinstance(s, CyclicTorsion) and v == INFINITY:
            return s.k
        return v

    def format_element(self, x) -> str:
        parts = [self.field.format_element(a) for a in x]
        if len(parts) == 1:
            return parts[0]
        return "(" + ", ".join(parts) + ")"

    @property
    def has_torsion(self) -> bool:
        return any(isinstance(s, CyclicTorsion) for s in self.summands)

    @property
    def has_torsion_free(self) -> bool:
        return any(not isinstance(s, CyclicTorsion) for s in self.summands)

    @property
    def is_fraction_field(self) -> bool:
        return len(self.summands) == 1 and isinstance(self.summands[0], FractionField)
