"""
descriptors.py
Symbolic descriptions of rings and modules

Descriptors are frozen dataclasses: hashable, comparable and cheap to
build. They validate their own shape on construction and carry no
arithmetic; ``rings.factory`` turns them into ring / module instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Tuple, Union

from sympy import isprime, perfect_power

from rings.core import ConstructionError


def _require_prime(p: int, what: str) -> None:
    if not isinstance(p, int) or not isprime(p):
        raise ConstructionError(f"{what} must be a prime, got {p!r}")


def prime_power_parts(q: int) -> Tuple[int, int]:
    """Split ``q = p**k``; raises ConstructionError if ``q`` is not a prime power."""
    if isinstance(q, int) and isprime(q):
        return q, 1
    parts = perfect_power(q) if isinstance(q, int) and q > 3 else False
    if parts:
        base, exponent = parts
        # perfect_power may return a composite base for q = (p^i)^j
        if isprime(base):
            return int(base), int(exponent)
        inner = prime_power_parts(int(base))
        return inner[0], inner[1] * int(exponent)
    raise ConstructionError(f"field size must be a prime power, got {q!r}")


# ============================
# RING DESCRIPTORS
# ============================

@dataclass(frozen=True)
class ZMod:
    """Z/nZ."""
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise ConstructionError(f"modulus must be ≥ 2, got {self.n!r}")


@dataclass(frozen=True)
class PolyQuotient:
    """F_p[var]/(f) with ``f`` given by ascending coefficients, monic, degree ≥ 1."""
    p: int
    f: Tuple[int, ...]
    var: str = "x"

    def __post_init__(self):
        _require_prime(self.p, "characteristic")
        coefficients = tuple(int(c) % self.p for c in self.f)
        object.__setattr__(self, "f", coefficients)
        if len(coefficients) < 2:
            raise ConstructionError("quotient polynomial must have degree ≥ 1")
        if coefficients[-1] != 1:
            raise ConstructionError("quotient polynomial must be monic")

    @property
    def degree(self) -> int:
        return len(self.f) - 1


@dataclass(frozen=True)
class MonomialQuotient:
    """F_p[x1..xk]/(monomials); every variable needs a pure power among the monomials."""
    p: int
    variables: Tuple[str, ...]
    monomials: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        _require_prime(self.p, "characteristic")
        if not self.variables or len(set(self.variables)) != len(self.variables):
            raise ConstructionError("monomial quotient needs distinct variable names")
        k = len(self.variables)
        for m in self.monomials:
            if len(m) != k or any(e < 0 for e in m) or not any(m):
                raise ConstructionError(f"bad monomial exponent vector {m!r}")
        for i, name in enumerate(self.variables):
            if not any(m[i] > 0 and sum(m) == m[i] for m in self.monomials):
                raise ConstructionError(f"no pure power of {name} among the relations; the quotient would be infinite")
        object.__setattr__(self, "monomials", tuple(sorted(set(self.monomials))))


@dataclass(frozen=True)
class Product:
    factors: Tuple["RingDescriptor", ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ConstructionError("product needs at least one factor")


@dataclass(frozen=True)
class TrivialExtension:
    """A ∝ E."""
    base: "RingDescriptor"
    module: "ModuleDescriptor"

    def __post_init__(self):
        if self.module.base != self.base:
            raise ConstructionError("module is defined over a different base ring")


@dataclass(frozen=True)
class LocalizedIntegers:
    """Z localized at the prime ideal (p)."""
    p: int

    def __post_init__(self):
        _require_prime(self.p, "localization prime")


@dataclass(frozen=True)
class LocalizedPolynomials:
    """F_q[x] localized at (x)."""
    q: int

    def __post_init__(self):
        prime_power_parts(self.q)


@dataclass(frozen=True)
class FractionFieldOf:
    dvr: "RingDescriptor"

    def __post_init__(self):
        if not isinstance(self.dvr, (LocalizedIntegers, LocalizedPolynomials)):
            raise ConstructionError("fraction fields are supported for Zloc(p) and Floc(q) only")


@dataclass(frozen=True)
class Corner:
    """The corner ring eR of an idempotent e of a finite ring R."""
    parent: "RingDescriptor"
    idempotent: Hashable


RingDescriptor = Union[
    ZMod, PolyQuotient, MonomialQuotient, Product, TrivialExtension,
    LocalizedIntegers, LocalizedPolynomials, FractionFieldOf, Corner,
]

DVR_DESCRIPTORS = (LocalizedIntegers, LocalizedPolynomials)


# ============================
# MODULE DESCRIPTORS
# ============================

@dataclass(frozen=True)
class FinitePresentation:
    """base^rank modulo the row span of ``relations``."""
    base: RingDescriptor
    rank: int
    relations: Tuple[Tuple[Hashable, ...], ...] = ()

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 0:
            raise ConstructionError(f"rank must be a non-negative integer, got {self.rank!r}")
        rows = tuple(tuple(row) for row in self.relations)
        for row in rows:
            if len(row) != self.rank:
                raise ConstructionError(f"relation row {row!r} does not have {self.rank} entries")
        object.__setattr__(self, "relations", rows)


@dataclass(frozen=True)
class Free:
    """Summand A of a DVR formal sum."""


@dataclass(frozen=True)
class CyclicTorsion:
    """Summand A/pi^k A of a DVR formal sum."""
    k: int

    def __post_init__(self):
        if not isinstance(self.k, int) or self.k < 1:
            raise ConstructionError(f"torsion exponent must be ≥ 1, got {self.k!r}")


@dataclass(frozen=True)
class FractionField:
    """Summand K = qf(A) of a DVR formal sum."""


Summand = Union[Free, CyclicTorsion, FractionField]


@dataclass(frozen=True)
class DvrFormalSum:
    base: RingDescriptor
    summands: Tuple[Summand, ...]

    def __post_init__(self):
        if not isinstance(self.base, DVR_DESCRIPTORS):
            raise ConstructionError("formal sums are defined over Zloc(p) or Floc(q) only")
        object.__setattr__(self, "summands", tuple(self.summands))


ModuleDescriptor = Union[FinitePresentation, DvrFormalSum]


def cyclic_quotient(base: RingDescriptor, *generators: Hashable) -> FinitePresentation:
    """A/(g1, ..., gk) as a rank-one presentation."""
    return FinitePresentation(base, 1, tuple((g,) for g in generators))


def free_module(base: RingDescriptor, rank: int = 1) -> FinitePresentation:
    return FinitePresentation(base, rank, ())


def direct_sum(*parts: FinitePresentation) -> FinitePresentation:
    """Block-diagonal direct sum of finite presentations over one base."""
    if not parts:
        raise ConstructionError("direct sum needs at least one summand")
    base = parts[0].base
    if any(part.base != base for part in parts):
        raise ConstructionError("direct sum of modules over different bases")
    from rings.factory import construct_ring

    zero = construct_ring(base).zero
    rank = sum(part.rank for part in parts)
    rows = []
    offset = 0
    for part in parts:
        for row in part.relations:
            rows.append((zero,) * offset + tuple(row) + (zero,) * (rank - offset - part.rank))
        offset += part.rank
    return FinitePresentation(base, rank, tuple(rows))
