"""
factory.py
Descriptor -> instance construction

Instances are cached per descriptor, so constructing the same descriptor
twice returns the same (immutable) ring or module object and caches such
as element lists and ideal lattices are shared.
"""

from __future__ import annotations

import logging
from functools import lru_cache

from rings.core import ConstructionError, Ring
from rings.descriptors import (
    Corner,
    DvrFormalSum,
    FinitePresentation,
    FractionFieldOf,
    LocalizedIntegers,
    LocalizedPolynomials,
    MonomialQuotient,
    PolyQuotient,
    Product,
    TrivialExtension,
    ZMod,
    prime_power_parts,
)

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def construct_ring(descriptor) -> Ring:
    """Validated ring instance for a descriptor."""
    from rings import decomposition, dvr, finite

    if isinstance(descriptor, ZMod):
        ring = finite.ZModRing(descriptor)
    elif isinstance(descriptor, PolyQuotient):
        ring = finite.PolyQuotientRing(descriptor)
    elif isinstance(descriptor, MonomialQuotient):
        ring = finite.MonomialQuotientRing(descriptor)
    elif isinstance(descriptor, Product):
        ring = finite.ProductRing(descriptor, tuple(construct_ring(f) for f in descriptor.factors))
    elif isinstance(descriptor, LocalizedIntegers):
        ring = dvr.LocalizedIntegerRing(descriptor)
    elif isinstance(descriptor, LocalizedPolynomials):
        ring = dvr.LocalizedPolynomialRing(descriptor, construct_ring(coefficient_field(descriptor.q)))
    elif isinstance(descriptor, FractionFieldOf):
        ring = dvr.FractionFieldRing(descriptor, construct_ring(descriptor.dvr))
    elif isinstance(descriptor, Corner):
        ring = decomposition.CornerRing(descriptor, construct_ring(descriptor.parent))
    elif isinstance(descriptor, TrivialExtension):
        from extension.trivial import TrivialExtensionRing

        ring = TrivialExtensionRing(descriptor)
    else:
        raise ConstructionError(f"unknown ring descriptor {descriptor!r}")
    logger.debug("Constructed %s (order %s)", ring.label, ring.order if ring.order is not None else "infinite")
    return ring


@lru_cache(maxsize=None)
def construct_module(descriptor):
    """Validated module instance for a descriptor."""
    if isinstance(descriptor, FinitePresentation):
        from modules.presented import FinitelyPresentedModule

        return FinitelyPresentedModule(descriptor)
    if isinstance(descriptor, DvrFormalSum):
        from modules.dvr_modules import DvrFormalSumModule

        return DvrFormalSumModule(descriptor)
    raise ConstructionError(f"unknown module descriptor {descriptor!r}")


def coefficient_field(q: int):
    """GF(q) with its algebra generator named ``a``."""
    from rings.finite import galois_field

    p, k = prime_power_parts(q)
    field = galois_field(q)
    if k == 1:
        return field
    return PolyQuotient(p, field.f, var="a")
