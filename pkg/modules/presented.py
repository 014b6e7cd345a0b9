"""
presented.py
Finitely presented modules over finite rings

M = R^n / N with N the row span of the relation matrix. Elements are
materialised as cosets: the canonical representative of a coset is its
lexicographically least vector, found by one sweep over R^n in payload
order.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, List

from modules.base import Module, vector_add, vector_neg, vector_scale, vector_span, zero_vector
from rings.core import CapabilityError, DEFAULT_ELEMENT_BOUND, RepresentationError
from rings.descriptors import FinitePresentation
from rings.factory import construct_ring

logger = logging.getLogger(__name__)


class FinitelyPresentedModule(Module):
    def __init__(self, descriptor: FinitePresentation, bound: int = DEFAULT_ELEMENT_BOUND):
        ring = construct_ring(descriptor.base)
        super().__init__(descriptor, ring)
        if ring.order is None:
            raise CapabilityError(f"finite presentations are materialised over finite rings only, not {ring.label}")
        self.rank = descriptor.rank
        ambient = ring.order ** self.rank
        if ambient > bound:
            raise CapabilityError(f"{ring.label}^{self.rank} has {ambient} vectors, above the bound {bound}")
        for row in descriptor.relations:
            ring.validate(*row)
        self.relations = descriptor.relations
        self.relation_span = vector_span(ring, self.relations, self.rank)
        self._representative: Dict[tuple, tuple] = {}
        representatives = []
        scalars = ring.elements(bound=ring.order)
        for v in itertools.product(scalars, repeat=self.rank):
            if v in self._representative:
                continue
            representatives.append(v)
            for n in self.relation_span:
                self._representative[vector_add(ring, v, n)] = v
        self._elements = tuple(representatives)
        logger.debug("%s has %d elements", self.label, len(self._elements))

    @property
    def label(self) -> str:
        if not self.relations:
            return f"{self.ring.label}^{self.rank}"
        if self.rank == 1:
            return f"{self.ring.label}/({', '.join(self.ring.format_element(r[0]) for r in self.relations)})"
        return f"{self.ring.label}^{self.rank}/<{len(self.relations)} relations>"

    @property
    def order(self) -> int:
        return len(self._elements)

    @property
    def zero(self):
        return zero_vector(self.ring, self.rank)

    def canonical(self, vector) -> tuple:
        """Coset representative of an arbitrary vector of R^n."""
        try:
            return self._representative[tuple(vector)]
        except KeyError:
            raise RepresentationError(f"{vector!r} is not a vector of {self.ring.label}^{self.rank}") from None

    def add(self, x, y):
        return self._representative[vector_add(self.ring, x, y)]

    def neg(self, x):
        return self._representative[vector_neg(self.ring, x)]

    def scale(self, r, x):
        return self._representative[vector_scale(self.ring, r, x)]

    def contains(self, x) -> bool:
        try:
            return self._representative.get(x) == x
        except TypeError:
            return False

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> List:
        if self.order > bound:
            raise CapabilityError(f"{self.label} has {self.order} elements, above the bound {bound}")
        return list(self._elements)

    def format_element(self, x) -> str:
        if self.rank == 1:
            return self.ring.format_element(x[0])
        return "(" + ", ".join(self.ring.format_element(c) for c in x) + ")"

    def generator(self, i: int) -> tuple:
        """Image of the i-th basis vector."""
        basis = tuple(self.ring.one if j == i else self.ring.zero for j in range(self.rank))
        return self.canonical(basis)
