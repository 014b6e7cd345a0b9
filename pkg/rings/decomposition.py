"""
decomposition.py
Idempotent decomposition of a finite commutative ring into local factors

A complete set of primitive orthogonal idempotents e_1..e_k gives
R ≅ e_1 R x ... x e_k R. Each factor is materialised as a ``CornerRing``
(element subset with the parent's operations and identity e_i) and,
when possible, re-recognised as Z/n or F_p[x]/(f) by generator matching.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from sympy import isprime

from rings.core import ConstructionError, DEFAULT_ELEMENT_BOUND, Element, Ring
from rings.descriptors import Corner, PolyQuotient, ZMod

logger = logging.getLogger(__name__)


class CornerRing(Ring):
    """eR for an idempotent e of a finite ring R, with identity e."""

    def __init__(self, descriptor: Corner, parent: Ring):
        super().__init__(descriptor)
        self.parent = parent
        self.idempotent = descriptor.idempotent
        parent.validate(self.idempotent)
        parent.require_finite("corner ring")
        e = self.idempotent
        if parent.mul(e, e) != e or e == parent.zero:
            raise ConstructionError(f"{parent.format_element(e)} is not a nonzero idempotent of {parent.label}")
        self._members = frozenset(parent.mul(e, a) for a in parent.elements(bound=parent.order))

    @property
    def label(self) -> str:
        return f"{self.parent.format_element(self.idempotent)}·({self.parent.label})"

    @property
    def order(self) -> int:
        return len(self._members)

    @property
    def zero(self):
        return self.parent.zero

    @property
    def one(self):
        return self.idempotent

    def add(self, a, b):
        return self.parent.add(a, b)

    def neg(self, a):
        return self.parent.neg(a)

    def mul(self, a, b):
        return self.parent.mul(a, b)

    def contains(self, a) -> bool:
        try:
            return a in self._members
        except TypeError:
            return False

    def _enumerate(self):
        return self._members

    def format_element(self, a) -> str:
        return self.parent.format_element(a)


@dataclass(frozen=True)
class LocalFactor:
    idempotent: Element
    ring: CornerRing
    recognized: Optional[object] = None
    # factor element -> payload of the recognised ring
    isomorphism: Dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.ring.order


@dataclass(frozen=True)
class LocalDecomposition:
    ring: Ring
    factors: Tuple[LocalFactor, ...]

    @property
    def idempotents(self) -> Tuple[Element, ...]:
        return tuple(f.idempotent for f in self.factors)

    def project(self, a) -> Tuple[Element, ...]:
        """a -> (e_1 a, ..., e_k a)."""
        return tuple(self.ring.mul(f.idempotent, a) for f in self.factors)

    def embed(self, components) -> Element:
        total = self.ring.zero
        for part in components:
            total = self.ring.add(total, part)
        return total

    def projection_table(self) -> Dict[Element, Tuple[Element, ...]]:
        return {a: self.project(a) for a in self.ring.elements(bound=self.ring.order)}


def _additive_order(ring: Ring, a) -> int:
    k, total = 1, a
    while total != ring.zero:
        total = ring.add(total, a)
        k += 1
    return k


def recognize(factor: Ring) -> Tuple[Optional[object], Dict]:
    """
    Match a finite local ring against Z/n (cyclic additive group) or
    F_p[x]/(f) (characteristic p, generated as an algebra by one element).
    Returns (descriptor, element table) or (None, {}).
    """
    n = factor.order
    characteristic = _additive_order(factor, factor.one)
    if characteristic == n:
        table, value = {}, factor.zero
        for k in range(n):
            table[value] = k
            value = factor.add(value, factor.one)
        return ZMod(n), table
    if not isprime(characteristic):
        return None, {}
    p = characteristic
    d = 0
    while p ** d < n:
        d += 1
    if p ** d != n:
        return None, {}
    for t in factor.elements(bound=n):
        powers = [factor.one]
        for _ in range(d):
            powers.append(factor.mul(powers[-1], t))
        spanned: Dict[Element, Tuple[int, ...]] = {}
        for coefficients in itertools.product(range(p), repeat=d):
            value = factor.zero
            for c, power in zip(coefficients, powers):
                for _ in range(c):
                    value = factor.add(value, power)
            spanned[value] = coefficients
        if len(spanned) != n:
            continue
        top = spanned[powers[d]]
        modulus = tuple((-c) % p for c in top) + (1,)
        return PolyQuotient(p, modulus), {value: coeffs for value, coeffs in spanned.items()}
    return None, {}


def local_decomposition(ring: Ring, bound: int = DEFAULT_ELEMENT_BOUND) -> LocalDecomposition:
    """Refine {1} by idempotents until every part is primitive."""
    from rings.factory import construct_ring

    ring.require_finite("local_decomposition", bound)
    idempotents = ring.idempotents()
    parts: List[Element] = [ring.one]
    refined = True
    while refined:
        refined = False
        for i, e in enumerate(parts):
            for f in idempotents:
                if f != ring.zero and f != e and ring.mul(f, e) == f:
                    parts[i:i + 1] = [f, ring.sub(e, f)]
                    refined = True
                    break
            if refined:
                break
    parts.sort()
    factors = []
    for e in parts:
        corner = construct_ring(Corner(ring.descriptor, e))
        if not corner.is_local():
            raise ConstructionError(f"factor {ring.format_element(e)}·R of {ring.label} is not local")
        recognized, table = recognize(corner)
        factors.append(LocalFactor(e, corner, recognized, table))
    logger.debug("%s splits into %d local factor(s)", ring.label, len(factors))
    return LocalDecomposition(ring, tuple(factors))
