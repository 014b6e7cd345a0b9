"""
dvr.py
Exact discrete valuation rings and their fraction fields

Two families are supported:

* Z_(p): rationals whose reduced denominator is prime to p, payload ``Fraction``.
* F_q[x]_(x): rational functions over GF(q) whose reduced denominator has a
  nonzero constant term, payload ``PolyFraction``.

Both share their arithmetic with the fraction field (Q, resp. F_q(x)); the
ring only adds the localization constraint on top. Valuations are exact,
``math.inf`` for zero.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from sympy import multiplicity

from rings import polynomials as poly
from rings.core import (
    CapabilityError,
    Divides,
    DivisibilityVerdict,
    LocalityVerdict,
    NotDivides,
    RepresentationError,
    Ring,
    Verdict,
)
from rings.descriptors import FractionFieldOf, LocalizedIntegers, LocalizedPolynomials

logger = logging.getLogger(__name__)

INFINITY = math.inf

# ---------------------------
# Sampling defaults
# ---------------------------
DEFAULT_SAMPLE_MAGNITUDE = 100
DEFAULT_SAMPLE_DEGREE = 4
ZERO_SAMPLE_RATE = 0.05


@dataclass(frozen=True)
class SampleBounds:
    """Magnitude bounds for seeded element sampling."""
    numerator: int = DEFAULT_SAMPLE_MAGNITUDE
    denominator: int = DEFAULT_SAMPLE_MAGNITUDE
    degree: int = DEFAULT_SAMPLE_DEGREE


@dataclass(frozen=True, order=True)
class PolyFraction:
    """Reduced quotient num/den of polynomials over GF(q), den monic."""
    num: Tuple[Any, ...]
    den: Tuple[Any, ...]


# ============================
# SHARED FRACTION ARITHMETIC
# ============================

class RationalArithmetic:
    """Arithmetic of Q on ``Fraction`` payloads."""

    zero = Fraction(0)
    one = Fraction(1)

    def __init__(self, p: int):
        self.p = p
        self.residue_size = p

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def from_int(self, n: int):
        return Fraction(n)

    def is_payload(self, a) -> bool:
        return isinstance(a, Fraction)

    def valuation(self, a):
        if a == 0:
            return INFINITY
        return multiplicity(self.p, abs(a.numerator)) - multiplicity(self.p, a.denominator)

    def in_ring(self, a) -> bool:
        return a.denominator % self.p != 0

    def pi(self):
        return Fraction(self.p)

    def residue(self, a, k: int):
        modulus = self.p ** k
        return Fraction(a.numerator * pow(a.denominator, -1, modulus) % modulus)

    def residues(self, k: int) -> List[Fraction]:
        return [Fraction(r) for r in range(self.p ** k)]

    def format(self, a) -> str:
        return str(a)

    def variables(self) -> Dict[str, Any]:
        return {}

    def sample(self, rng: np.random.Generator, bounds: SampleBounds, in_ring: bool):
        if rng.random() < ZERO_SAMPLE_RATE:
            return self.zero
        top = 0
        while self.p ** (top + 1) <= bounds.numerator:
            top += 1
        v = int(rng.integers(0, top + 1))
        m = int(rng.integers(1, max(1, bounds.numerator // self.p ** v) + 1))
        while m % self.p == 0:
            m //= self.p
        sign = -1 if rng.random() < 0.5 else 1
        d = int(rng.integers(1, bounds.denominator + 1))
        if in_ring:
            while d % self.p == 0:
                d //= self.p
        return Fraction(sign * self.p ** v * m, d)


class RationalFunctionArithmetic:
    """Arithmetic of F_q(x) on ``PolyFraction`` payloads."""

    def __init__(self, field: Ring, q: int):
        self.F = field
        self.q = q
        self.residue_size = q
        self.zero = PolyFraction((), (field.one,))
        self.one = PolyFraction((field.one,), (field.one,))

    def make(self, num, den) -> PolyFraction:
        F = self.F
        num, den = poly.strip(F, num), poly.strip(F, den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            return self.zero
        g = poly.gcd(F, num, den)
        num = poly.divmod_poly(F, num, g)[0]
        den = poly.divmod_poly(F, den, g)[0]
        lead = F.inverse(den[-1])
        return PolyFraction(poly.scale(F, lead, num), poly.scale(F, lead, den))

    def add(self, a, b):
        F = self.F
        if a.den == b.den:
            return self.make(poly.add(F, a.num, b.num), a.den)
        return self.make(
            poly.add(F, poly.mul(F, a.num, b.den), poly.mul(F, b.num, a.den)),
            poly.mul(F, a.den, b.den),
        )

    def neg(self, a):
        return PolyFraction(poly.neg(self.F, a.num), a.den)

    def mul(self, a, b):
        F = self.F
        return self.make(poly.mul(F, a.num, b.num), poly.mul(F, a.den, b.den))

    def div(self, a, b):
        F = self.F
        if not b.num:
            raise ZeroDivisionError("division by zero rational function")
        return self.make(poly.mul(F, a.num, b.den), poly.mul(F, a.den, b.num))

    def from_int(self, n: int):
        return self.make((self.F.from_int(n),), (self.F.one,))

    def is_payload(self, a) -> bool:
        if not isinstance(a, PolyFraction) or not a.den:
            return False
        if not all(self.F.contains(c) for c in a.num + a.den):
            return False
        return self.make(a.num, a.den) == a

    def valuation(self, a):
        if not a.num:
            return INFINITY
        return poly.valuation_at_zero(self.F, a.num) - poly.valuation_at_zero(self.F, a.den)

    def in_ring(self, a) -> bool:
        return a.den[0] != self.F.zero

    def pi(self):
        return PolyFraction((self.F.zero, self.F.one), (self.F.one,))

    def residue(self, a, k: int):
        F = self.F
        truncated = poly.truncate(F, poly.mul(F, a.num, poly.inverse_mod_power(F, a.den, k)), k)
        return PolyFraction(truncated, (F.one,))

    def residues(self, k: int) -> List[PolyFraction]:
        F = self.F
        coefficients = F.elements(bound=F.order)
        return [
            PolyFraction(poly.strip(F, c), (F.one,))
            for c in itertools.product(coefficients, repeat=k)
        ]

    def _poly_str(self, f) -> str:
        F = self.F
        return poly.format_poly(f, "x", lambda c: c == F.zero, lambda c: c == F.one, F.format_element)

    def format(self, a) -> str:
        num = self._poly_str(a.num)
        if a.den == (self.F.one,):
            return num
        num = num if "+" not in num else f"({num})"
        return f"{num}/({self._poly_str(a.den)})"

    def variables(self) -> Dict[str, Any]:
        out = {"x": self.pi()}
        F = self.F
        # generator of GF(q) over its prime field, named "a"
        for name, value in F.variables().items():
            out[name] = PolyFraction((value,), (F.one,))
        return out

    def _random_poly(self, rng, degree: int, nonzero_constant: bool):
        F = self.F
        coefficients = F.elements(bound=F.order)
        nonzero = [c for c in coefficients if c != F.zero]
        out = [nonzero[int(rng.integers(len(nonzero)))] if nonzero_constant
               else coefficients[int(rng.integers(len(coefficients)))]]
        for _ in range(degree):
            out.append(coefficients[int(rng.integers(len(coefficients)))])
        return poly.strip(F, out)

    def sample(self, rng: np.random.Generator, bounds: SampleBounds, in_ring: bool):
        if rng.random() < ZERO_SAMPLE_RATE:
            return self.zero
        F = self.F
        v = int(rng.integers(0, bounds.degree + 1))
        unit_part = self._random_poly(rng, int(rng.integers(0, bounds.degree - v + 1)), True)
        num = (F.zero,) * v + unit_part
        den = self._random_poly(rng, int(rng.integers(0, bounds.degree + 1)), True)
        if not in_ring:
            den = (F.zero,) * int(rng.integers(0, bounds.degree + 1)) + den
        return self.make(num, den)


# ============================
# RINGS
# ============================

class DiscreteValuationRing(Ring):
    """Common closed forms of the two DVR families."""

    arithmetic: Any

    @property
    def order(self) -> None:
        return None

    @property
    def zero(self):
        return self.arithmetic.zero

    @property
    def one(self):
        return self.arithmetic.one

    def add(self, a, b):
        return self.arithmetic.add(a, b)

    def neg(self, a):
        return self.arithmetic.neg(a)

    def mul(self, a, b):
        return self.arithmetic.mul(a, b)

    def from_int(self, n: int):
        return self.arithmetic.from_int(n)

    def contains(self, a) -> bool:
        return self.arithmetic.is_payload(a) and self.arithmetic.in_ring(a)

    def format_element(self, a) -> str:
        return self.arithmetic.format(a)

    def variables(self):
        return self.arithmetic.variables()

    @property
    def pi(self):
        """Uniformizer p, resp. x."""
        return self.arithmetic.pi()

    @property
    def residue_size(self) -> int:
        return self.arithmetic.residue_size

    def valuation(self, a):
        self.validate(a)
        return self.arithmetic.valuation(a)

    def quotient(self, a, b):
        """a / b computed in the fraction field (b nonzero)."""
        return self.arithmetic.div(a, b)

    def residue(self, a, k: int):
        """Canonical representative of a modulo pi^k."""
        if k <= 0:
            return self.zero
        return self.arithmetic.residue(a, k)

    def residues(self, k: int) -> list:
        """Representatives of A / pi^k A, each fixed by ``residue``."""
        if k <= 0:
            return [self.zero]
        return self.arithmetic.residues(k)

    def fraction_field(self) -> "FractionFieldRing":
        from rings.factory import construct_ring

        return construct_ring(FractionFieldOf(self.descriptor))

    def divide_exact(self, a, b):
        if b == self.zero:
            raise RepresentationError(f"division by zero in {self.label}")
        value = self.arithmetic.div(a, b)
        if not self.arithmetic.in_ring(value):
            raise RepresentationError(
                f"{self.arithmetic.format(value)} is not an element of {self.label} (denominator not invertible)"
            )
        return value

    def inverse(self, a):
        if a == self.zero or self.arithmetic.valuation(a) != 0:
            return None
        return self.arithmetic.div(self.one, a)

    def is_zero_divisor(self, a) -> Verdict:
        self.validate(a)
        return Verdict(False)

    def divides(self, a, b) -> DivisibilityVerdict:
        return dvr_divides(self, a, b)

    def is_field(self) -> bool:
        return False

    def is_local(self) -> LocalityVerdict:
        return LocalityVerdict(True, generator=self.pi, description=f"({self.format_element(self.pi)})")

    def sample(self, rng: np.random.Generator, bounds: SampleBounds = SampleBounds()):
        return self.arithmetic.sample(rng, bounds, in_ring=True)


class LocalizedIntegerRing(DiscreteValuationRing):
    def __init__(self, descriptor: LocalizedIntegers):
        super().__init__(descriptor)
        self.p = descriptor.p
        self.arithmetic = RationalArithmetic(descriptor.p)

    @property
    def label(self) -> str:
        return f"Zloc({self.p})"


class LocalizedPolynomialRing(DiscreteValuationRing):
    def __init__(self, descriptor: LocalizedPolynomials, coefficient_field: Ring):
        super().__init__(descriptor)
        self.q = descriptor.q
        self.coefficient_field = coefficient_field
        self.arithmetic = RationalFunctionArithmetic(coefficient_field, descriptor.q)

    @property
    def label(self) -> str:
        return f"Floc({self.q})"


class FractionFieldRing(Ring):
    """Q or F_q(x) as the fraction field of a DVR; every nonzero element is a unit."""

    def __init__(self, descriptor: FractionFieldOf, dvr: DiscreteValuationRing):
        super().__init__(descriptor)
        self.dvr = dvr
        self.arithmetic = dvr.arithmetic

    @property
    def label(self) -> str:
        return f"Frac({self.dvr.label})"

    @property
    def order(self) -> None:
        return None

    @property
    def zero(self):
        return self.arithmetic.zero

    @property
    def one(self):
        return self.arithmetic.one

    def add(self, a, b):
        return self.arithmetic.add(a, b)

    def neg(self, a):
        return self.arithmetic.neg(a)

    def mul(self, a, b):
        return self.arithmetic.mul(a, b)

    def div(self, a, b):
        return self.arithmetic.div(a, b)

    def from_int(self, n: int):
        return self.arithmetic.from_int(n)

    def contains(self, a) -> bool:
        return self.arithmetic.is_payload(a)

    def format_element(self, a) -> str:
        return self.arithmetic.format(a)

    def variables(self):
        return self.arithmetic.variables()

    def valuation(self, a):
        self.validate(a)
        return self.arithmetic.valuation(a)

    def inverse(self, a):
        if a == self.zero:
            return None
        return self.arithmetic.div(self.one, a)

    def divide_exact(self, a, b):
        if b == self.zero:
            raise RepresentationError(f"division by zero in {self.label}")
        return self.arithmetic.div(a, b)

    def is_zero_divisor(self, a) -> Verdict:
        self.validate(a)
        return Verdict(False)

    def divides(self, a, b) -> DivisibilityVerdict:
        self.validate(a, b)
        if a == self.zero:
            return Divides(self.zero) if b == self.zero else NotDivides()
        return Divides(self.arithmetic.div(b, a))

    def is_field(self) -> bool:
        return True

    def is_local(self) -> LocalityVerdict:
        return LocalityVerdict(True, generator=self.zero, description="(0)")

    def sample(self, rng: np.random.Generator, bounds: SampleBounds = SampleBounds()):
        return self.arithmetic.sample(rng, bounds, in_ring=False)


# ============================
# FUNCTIONAL FRONT END
# ============================

def valuation(ring: Ring, a):
    """Exact p-adic / x-adic order; ``math.inf`` for zero."""
    if not isinstance(ring, (DiscreteValuationRing, FractionFieldRing)):
        raise CapabilityError(f"{ring.label} carries no discrete valuation")
    return ring.valuation(a)


def dvr_divides(ring: DiscreteValuationRing, a, b) -> DivisibilityVerdict:
    """a | b in a DVR iff v(a) <= v(b); the witness is the exact quotient b/a."""
    ring.validate(a, b)
    if a == ring.zero:
        return Divides(ring.zero) if b == ring.zero else NotDivides()
    arithmetic = ring.arithmetic
    if arithmetic.valuation(a) <= arithmetic.valuation(b):
        return Divides(arithmetic.div(b, a))
    return NotDivides()


def element_rng(seed: int, index: int = 0) -> np.random.Generator:
    """Independent generator per (seed, index); no shared generator state."""
    return np.random.default_rng([seed, index])


def sample_element(ring: Ring, seed: int, bounds: SampleBounds = SampleBounds(), index: int = 0):
    """Deterministic seeded element of a DVR or of its fraction field."""
    if bounds.numerator < 1 or bounds.denominator < 1 or bounds.degree < 0:
        raise ValueError("sample bounds must be positive")
    if not isinstance(ring, (DiscreteValuationRing, FractionFieldRing)):
        raise CapabilityError(f"seeded sampling is implemented for DVR families, not {ring.label}")
    return ring.sample(element_rng(seed, index), bounds)


def sample_elements(ring: Ring, seed: int, count: int, bounds: SampleBounds = SampleBounds()) -> list:
    rng = element_rng(seed)
    return [ring.sample(rng, bounds) for _ in range(count)]


def capped_valuation(ring: DiscreteValuationRing, a, cap: Optional[int] = None):
    """Valuation of a residue class representative, with 0 mapped to ``cap``."""
    v = ring.arithmetic.valuation(a)
    if cap is not None and v >= cap:
        return cap
    return v
