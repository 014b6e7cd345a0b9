#!/usr/bin/env python3
"""
core.py
Uniform ring interface for ringlab

Every ring family (modular integers, polynomial quotients, products,
corner rings, discrete valuation rings, fraction fields, trivial
extensions) implements the ``Ring`` base class below. Elements are plain
hashable payloads in canonical form, so equality of payloads is equality
in the ring.

Finite rings get exhaustive default algorithms for units, zero divisors,
divisibility and locality; the infinite families override them with
closed forms or raise ``CapabilityError``.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Hashable, Iterable, List, Optional, Tuple, Union

logger = logging.getLogger(__name__)

# ---------------------------
# Constants / Defaults
# ---------------------------
DEFAULT_ELEMENT_BOUND = 4096
DEFAULT_IDEAL_BOUND = 64

Element = Hashable


# ============================
# ERRORS
# ============================

class RingLabError(Exception):
    """Base class of every error raised by ringlab."""


class RepresentationError(RingLabError):
    """An element payload is not canonical for the ring it was handed to."""


class ConstructionError(RingLabError):
    """A descriptor is malformed (bad modulus, non-monic polynomial, zero module, ...)."""


class CapabilityError(RingLabError):
    """The query is not supported for this ring family or exceeds a configured bound."""


class PreconditionError(RingLabError):
    """An operation precondition (chain ring, local ring, ...) does not hold."""


class UsageError(RingLabError):
    """Objects from different rings were mixed."""


class InternalError(RingLabError):
    """A witness computed by ringlab failed to replay."""


# ============================
# VERDICTS
# ============================

@dataclass(frozen=True)
class Verdict:
    """Boolean answer with an optional witness (inverse, annihilating element, ...)."""
    holds: bool
    witness: Any = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class Divides:
    """``a`` divides ``b``; ``witness`` satisfies a * witness == b."""
    witness: Any

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotDivides:
    """``a`` does not divide ``b``."""

    def __bool__(self) -> bool:
        return False


DivisibilityVerdict = Union[Divides, NotDivides]


@dataclass(frozen=True)
class LocalityVerdict:
    """
    Result of a locality test.

    For finite local rings ``maximal_ideal`` is the sorted tuple of non-units;
    closed-form families give a ``generator`` instead. A non-local verdict
    carries a pair of non-units whose sum is a unit.
    """
    is_local: bool
    maximal_ideal: Optional[Tuple[Element, ...]] = None
    generator: Any = None
    witness: Optional[Tuple[Element, Element]] = None
    description: str = ""

    def __bool__(self) -> bool:
        return self.is_local


# ============================
# RING INTERFACE
# ============================

class Ring(ABC):
    """Abstract commutative ring with identity."""

    def __init__(self, descriptor: Any):
        self.descriptor = descriptor

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.label}>"

    # --- shape ---------------------------------------------------------
    @property
    @abstractmethod
    def label(self) -> str:
        """Short human-readable name used in messages and logs."""

    @property
    @abstractmethod
    def order(self) -> Optional[int]:
        """Number of elements, or ``None`` for an infinite ring."""

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    @property
    @abstractmethod
    def zero(self) -> Element:
        ...

    @property
    @abstractmethod
    def one(self) -> Element:
        ...

    # --- arithmetic ----------------------------------------------------
    @abstractmethod
    def add(self, a: Element, b: Element) -> Element:
        ...

    @abstractmethod
    def neg(self, a: Element) -> Element:
        ...

    @abstractmethod
    def mul(self, a: Element, b: Element) -> Element:
        ...

    def sub(self, a: Element, b: Element) -> Element:
        return self.add(a, self.neg(b))

    def power(self, a: Element, k: int) -> Element:
        result, base = self.one, a
        while k > 0:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def from_int(self, n: int) -> Element:
        """Image of the integer ``n`` under Z -> R (double-and-add)."""
        result, base, k = self.zero, self.one, abs(n)
        while k > 0:
            if k & 1:
                result = self.add(result, base)
            base = self.add(base, base)
            k >>= 1
        return self.neg(result) if n < 0 else result

    def variables(self) -> Dict[str, Element]:
        """Named generators understood by the element parser."""
        return {}

    def divide_exact(self, a: Element, b: Element) -> Element:
        """``a / b`` for element literals; only division by units is meaningful here."""
        inverse = self.inverse(b)
        if inverse is None:
            raise RepresentationError(f"cannot divide by the non-unit {self.format_element(b)} in {self.label}")
        return self.mul(a, inverse)

    # --- representation ------------------------------------------------
    @abstractmethod
    def contains(self, a: Any) -> bool:
        """True iff ``a`` is a canonical payload of this ring."""

    def validate(self, *items: Any) -> None:
        for a in items:
            if not self.contains(a):
                raise RepresentationError(f"{a!r} is not a canonical element of {self.label}")

    def format_element(self, a: Element) -> str:
        return str(a)

    # --- finite support ------------------------------------------------
    def _enumerate(self) -> Iterable[Element]:
        raise CapabilityError(f"{self.label} is infinite; its elements cannot be listed")

    def require_finite(self, what: str, bound: int = DEFAULT_ELEMENT_BOUND) -> None:
        if self.order is None:
            raise CapabilityError(f"{what} needs a finite ring; {self.label} is infinite")
        if self.order > bound:
            raise CapabilityError(f"{what}: {self.label} has order {self.order}, above the bound {bound}")

    @cached_property
    def _element_list(self) -> Tuple[Element, ...]:
        self.require_finite("element enumeration", bound=self.order or 0)
        listed = tuple(sorted(self._enumerate()))
        logger.debug("Enumerated %d elements of %s", len(listed), self.label)
        return listed

    @cached_property
    def element_set(self) -> frozenset:
        return frozenset(self._element_list)

    def elements(self, bound: int = DEFAULT_ELEMENT_BOUND) -> List[Element]:
        """All canonical elements in lexicographic payload order."""
        self.require_finite("elements", bound)
        return list(self._element_list)

    # --- units, zero divisors, divisibility ----------------------------
    def inverse(self, a: Element) -> Optional[Element]:
        self.require_finite("is_unit")
        for b in self._element_list:
            if self.mul(a, b) == self.one:
                return b
        return None

    def is_unit(self, a: Element) -> Verdict:
        self.validate(a)
        inverse = self.inverse(a)
        return Verdict(inverse is not None, inverse)

    def is_zero_divisor(self, a: Element) -> Verdict:
        """``a = 0`` is reported as not a zero divisor by convention."""
        self.validate(a)
        if a == self.zero:
            return Verdict(False)
        self.require_finite("is_zero_divisor")
        for b in self._element_list:
            if b != self.zero and self.mul(a, b) == self.zero:
                return Verdict(True, b)
        return Verdict(False)

    def divides(self, a: Element, b: Element) -> DivisibilityVerdict:
        """Least multiplier ``w`` (payload order) with a * w == b."""
        self.validate(a, b)
        self.require_finite("divides")
        for w in self._element_list:
            if self.mul(a, w) == b:
                return Divides(w)
        return NotDivides()

    def is_field(self) -> bool:
        self.require_finite("is_field")
        return all(self.inverse(a) is not None for a in self._element_list if a != self.zero)

    # --- locality ------------------------------------------------------
    def idempotents(self) -> List[Element]:
        self.require_finite("idempotents")
        return [e for e in self._element_list if self.mul(e, e) == e]

    def is_local(self) -> LocalityVerdict:
        """
        A finite commutative ring is local iff 0 and 1 are its only idempotents,
        i.e. iff its non-units are closed under addition. A nontrivial
        idempotent e yields the witness pair (e, 1 - e); for Z/12 that is
        (4, 9) rather than a pair of non-units such as (3, 4).
        """
        return self._locality

    @cached_property
    def _locality(self) -> LocalityVerdict:
        self.require_finite("is_local")
        for e in self._element_list:
            if e != self.zero and e != self.one and self.mul(e, e) == e:
                return LocalityVerdict(False, witness=(e, self.sub(self.one, e)))
        maximal = tuple(a for a in self._element_list if self.inverse(a) is None)
        return LocalityVerdict(True, maximal_ideal=maximal)


# ============================
# FUNCTIONAL FRONT END
# ============================

ARITHMETIC_OPS = ("add", "neg", "mul")


def arithmetic(ring: Ring, op: str, a: Element, b: Element = None) -> Element:
    """Validated ring arithmetic; ``b`` is ignored for ``neg``."""
    if op not in ARITHMETIC_OPS:
        raise UsageError(f"unknown ring operation {op!r}; expected one of {', '.join(ARITHMETIC_OPS)}")
    ring.validate(a)
    if op == "neg":
        return ring.neg(a)
    ring.validate(b)
    return ring.add(a, b) if op == "add" else ring.mul(a, b)


def is_unit(ring: Ring, a: Element) -> Verdict:
    return ring.is_unit(a)


def is_zero_divisor(ring: Ring, a: Element) -> Verdict:
    return ring.is_zero_divisor(a)


def divides(ring: Ring, a: Element, b: Element) -> DivisibilityVerdict:
    return ring.divides(a, b)


def elements(ring: Ring, bound: int = DEFAULT_ELEMENT_BOUND) -> List[Element]:
    return ring.elements(bound)


def is_local(ring: Ring) -> LocalityVerdict:
    return ring.is_local()
