"""
base.py
Module interface and span / generator helpers shared by modules and homology
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Any, Callable, Iterable, List, Optional, Sequence, Tuple

from rings.core import CapabilityError, DEFAULT_ELEMENT_BOUND, RepresentationError, Ring

Vector = Tuple[Any, ...]


class Module(ABC):
    """Module over a commutative ring ``self.ring`` with hashable canonical elements."""

    def __init__(self, descriptor, ring: Ring):
        self.descriptor = descriptor
        self.ring = ring

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"

    @property
    @abstractmethod
    def label(self) -> str:
        ...

    @property
    @abstractmethod
    def order(self) -> Optional[int]:
        ...

    @property
    @abstractmethod
    def zero(self):
        ...

    @abstractmethod
    def add(self, x, y):
        ...

    @abstractmethod
    def neg(self, x):
        ...

    @abstractmethod
    def scale(self, r, x):
        ...

    @abstractmethod
    def contains(self, x) -> bool:
        ...

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def validate(self, *items) -> None:
        for x in items:
            if not self.contains(x):
                raise RepresentationError(f"{x!r} is not a canonical element of the module {self.label}")

    def is_zero_module(self) -> bool:
        return self.order == 1

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> List:
        raise CapabilityError(f"the module {self.label} is infinite; its elements cannot be listed")

    def format_element(self, x) -> str:
        if len(x) == 1:
            return self.ring.format_element(x[0]) if self.ring.contains(x[0]) else str(x[0])
        return "(" + ", ".join(str(c) for c in x) + ")"

    def cyclic_submodule(self, x) -> frozenset:
        """A·x for a finite base ring."""
        return frozenset(self.scale(r, x) for r in self.ring.elements(bound=self.ring.order))


# ============================
# VECTORS OVER A RING
# ============================

def vector_add(ring: Ring, u: Vector, v: Vector) -> Vector:
    return tuple(ring.add(a, b) for a, b in zip(u, v))


def vector_neg(ring: Ring, u: Vector) -> Vector:
    return tuple(ring.neg(a) for a in u)


def vector_scale(ring: Ring, r, u: Vector) -> Vector:
    return tuple(ring.mul(r, a) for a in u)


def zero_vector(ring: Ring, n: int) -> Vector:
    return (ring.zero,) * n


# ============================
# SPANS AND GENERATORS
# ============================

def submodule_span(
    ring: Ring,
    generators: Iterable,
    add: Callable,
    scale: Callable,
    zero,
    start: Iterable = (),
) -> frozenset:
    """
    Closure of ``start`` ∪ {0} under addition of ring multiples of the generators.
    ``start`` must already be a submodule (or empty).
    """
    scalars = ring.elements(bound=ring.order)
    span = set(start) or {zero}
    for g in generators:
        if g in span:
            continue
        multiples = {scale(r, g) for r in scalars}
        span = {add(s, m) for s in span for m in multiples}
    return frozenset(span)


def select_generators(
    ring: Ring,
    members: Iterable,
    add: Callable,
    scale: Callable,
    zero,
    local: Optional[bool] = None,
) -> list:
    """
    Generating set of the finite submodule ``members``.

    Candidates are tried largest cyclic submodule first (ties by payload).
    Over a local ring the greedy pass runs modulo m·K, so by Nakayama the
    result is a minimal generating set; otherwise redundant generators are
    pruned afterwards.
    """
    target = frozenset(members)
    scalars = ring.elements(bound=ring.order)
    if local is None:
        local = ring.is_local().is_local
    cyclic = {v: frozenset(scale(r, v) for r in scalars) for v in target if v != zero}
    candidates = sorted(cyclic, key=lambda v: (-len(cyclic[v]), v))
    if local:
        maximal = [r for r in scalars if ring.inverse(r) is None]
        radical = submodule_span(ring, (scale(r, v) for v in candidates for r in maximal), add, scale, zero)
    else:
        radical = frozenset({zero})
    generators = []
    current = radical
    for v in candidates:
        if len(current) == len(target):
            break
        if v in current:
            continue
        generators.append(v)
        current = submodule_span(ring, [v], add, scale, zero, start=current)
    if not local:
        for g in list(generators):
            rest = [h for h in generators if h != g]
            if submodule_span(ring, rest, add, scale, zero) == target:
                generators = rest
    return generators


def vector_generators(ring: Ring, members: Iterable[Vector], rank: int, local: Optional[bool] = None) -> List[Vector]:
    return select_generators(
        ring,
        members,
        lambda u, v: vector_add(ring, u, v),
        lambda r, u: vector_scale(ring, r, u),
        zero_vector(ring, rank),
        local,
    )


def vector_span(ring: Ring, generators: Sequence[Vector], rank: int) -> frozenset:
    return submodule_span(
        ring,
        generators,
        lambda u, v: vector_add(ring, u, v),
        lambda r, u: vector_scale(ring, r, u),
        zero_vector(ring, rank),
    )
