"""
finite.py
Finite ring families: Z/n, F_p[x]/(f), F_p[x1..xk]/(monomials), products

Polynomial quotient arithmetic is delegated to sympy's dense GF(p)
routines; results are converted back to plain ``int`` tuples so that
payloads stay hashable and comparable.
"""

from __future__ import annotations

import itertools
import logging
from functools import reduce
from math import gcd
from typing import Dict, Iterable, List, Optional, Tuple

from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_gcdex, gf_irreducible_p, gf_mul, gf_rem, gf_strip

from rings.core import (
    ConstructionError,
    Divides,
    DivisibilityVerdict,
    Element,
    LocalityVerdict,
    NotDivides,
    Ring,
    Verdict,
)
from rings.descriptors import MonomialQuotient, PolyQuotient, Product, ZMod, prime_power_parts
from rings.polynomials import format_poly

logger = logging.getLogger(__name__)


# ============================
# Z / n
# ============================

class ZModRing(Ring):
    """Integers modulo n; payloads are ints in [0, n)."""

    def __init__(self, descriptor: ZMod):
        super().__init__(descriptor)
        self.n = descriptor.n

    @property
    def label(self) -> str:
        return f"Z/{self.n}"

    @property
    def order(self) -> int:
        return self.n

    @property
    def zero(self) -> int:
        return 0

    @property
    def one(self) -> int:
        return 1 % self.n

    def add(self, a, b):
        return (a + b) % self.n

    def neg(self, a):
        return (-a) % self.n

    def mul(self, a, b):
        return (a * b) % self.n

    def from_int(self, n: int) -> int:
        return n % self.n

    def contains(self, a) -> bool:
        return isinstance(a, int) and not isinstance(a, bool) and 0 <= a < self.n

    def _enumerate(self) -> Iterable[int]:
        return range(self.n)

    def inverse(self, a) -> Optional[int]:
        if gcd(a, self.n) != 1:
            return None
        return pow(a, -1, self.n)

    def is_zero_divisor(self, a) -> Verdict:
        self.validate(a)
        if a == 0:
            return Verdict(False)
        g = gcd(a, self.n)
        if g == 1:
            return Verdict(False)
        return Verdict(True, self.n // g)

    def divides(self, a, b) -> DivisibilityVerdict:
        """Closed form of the multiplier scan: least w in [0, n) with a*w = b."""
        self.validate(a, b)
        g = gcd(a, self.n)
        if b % g:
            return NotDivides()
        reduced = self.n // g
        if reduced == 1:
            return Divides(0)
        return Divides(((b // g) * pow(a // g, -1, reduced)) % reduced)


# ============================
# F_p[x] / (f)
# ============================

class PolyQuotientRing(Ring):
    """Univariate quotient of F_p[x]; payloads are ascending coefficient tuples of length deg f."""

    def __init__(self, descriptor: PolyQuotient):
        super().__init__(descriptor)
        self.p = descriptor.p
        self.var = descriptor.var
        self.degree = descriptor.degree
        self._modulus = [ZZ(c) for c in reversed(descriptor.f)]

    @property
    def label(self) -> str:
        return f"F{self.p}[{self.var}]/({format_poly(self.descriptor.f, self.var, lambda c: c == 0, lambda c: c == 1)})"

    @property
    def order(self) -> int:
        return self.p ** self.degree

    @property
    def zero(self) -> Tuple[int, ...]:
        return (0,) * self.degree

    @property
    def one(self) -> Tuple[int, ...]:
        return (1,) + (0,) * (self.degree - 1)

    def _to_gf(self, a) -> list:
        return gf_strip([ZZ(c) for c in reversed(a)])

    def _from_gf(self, coefficients) -> Tuple[int, ...]:
        ascending = [int(c) % self.p for c in reversed(coefficients)]
        return tuple(ascending + [0] * (self.degree - len(ascending)))

    def reduce(self, coefficients) -> Tuple[int, ...]:
        """Canonical form of an arbitrary ascending coefficient list."""
        gf = gf_strip([ZZ(int(c) % self.p) for c in reversed(list(coefficients))])
        return self._from_gf(gf_rem(gf, self._modulus, self.p, ZZ))

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        product = gf_mul(self._to_gf(a), self._to_gf(b), self.p, ZZ)
        return self._from_gf(gf_rem(product, self._modulus, self.p, ZZ))

    def from_int(self, n: int):
        return ((n % self.p),) + (0,) * (self.degree - 1)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == self.degree
            and all(isinstance(c, int) and 0 <= c < self.p for c in a)
        )

    def _enumerate(self):
        return itertools.product(range(self.p), repeat=self.degree)

    def inverse(self, a) -> Optional[Tuple[int, ...]]:
        s, _, g = gf_gcdex(self._to_gf(a), self._modulus, self.p, ZZ)
        if [int(c) for c in g] != [1]:
            return None
        return self._from_gf(gf_rem(s, self._modulus, self.p, ZZ))

    def variables(self) -> Dict[str, Tuple[int, ...]]:
        return {self.var: self.reduce((0, 1))}

    def format_element(self, a) -> str:
        return format_poly(a, self.var, lambda c: c == 0, lambda c: c == 1)


def galois_field(q: int):
    """Descriptor of GF(q): Z/p for a prime, otherwise F_p[x]/(first monic irreducible)."""
    p, k = prime_power_parts(q)
    if k == 1:
        return ZMod(p)
    for tail in itertools.product(range(p), repeat=k):
        ascending = tuple(tail) + (1,)
        if gf_irreducible_p([ZZ(c) for c in reversed(ascending)], p, ZZ):
            logger.debug("GF(%d) realised modulo %s", q, ascending)
            return PolyQuotient(p, ascending)
    raise ConstructionError(f"no irreducible polynomial of degree {k} over F_{p}")  # unreachable for prime p


# ============================
# F_p[x1..xk] / (monomials)
# ============================

class MonomialQuotientRing(Ring):
    """
    Multivariate quotient by a monomial ideal containing a pure power of every
    variable. Payloads are coefficient tuples over the standard monomials,
    ordered by degree then reverse-lexicographic exponents (1, x, y, x^2, ...).
    """

    def __init__(self, descriptor: MonomialQuotient):
        super().__init__(descriptor)
        self.p = descriptor.p
        self.names = descriptor.variables
        self.relations = descriptor.monomials
        bounds = [
            min(m[i] for m in self.relations if m[i] > 0 and sum(m) == m[i])
            for i in range(len(self.names))
        ]
        standard = [
            e for e in itertools.product(*(range(b) for b in bounds))
            if not self._in_ideal(e)
        ]
        self.basis: List[Tuple[int, ...]] = sorted(standard, key=lambda e: (sum(e), tuple(-x for x in e)))
        self.index = {e: i for i, e in enumerate(self.basis)}

    def _in_ideal(self, exponents) -> bool:
        return any(all(x >= y for x, y in zip(exponents, m)) for m in self.relations)

    @property
    def label(self) -> str:
        return f"F{self.p}[{','.join(self.names)}]/({','.join(self._monomial_str(m) for m in self.relations)})"

    def _monomial_str(self, exponents) -> str:
        parts = []
        for name, e in zip(self.names, exponents):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    @property
    def order(self) -> int:
        return self.p ** len(self.basis)

    @property
    def zero(self):
        return (0,) * len(self.basis)

    @property
    def one(self):
        return (1,) + (0,) * (len(self.basis) - 1)

    def add(self, a, b):
        return tuple((x + y) % self.p for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.p for x in a)

    def mul(self, a, b):
        out = [0] * len(self.basis)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if not y:
                    continue
                exponents = tuple(s + t for s, t in zip(self.basis[i], self.basis[j]))
                k = self.index.get(exponents)
                if k is not None:
                    out[k] = (out[k] + x * y) % self.p
        return tuple(out)

    def from_int(self, n: int):
        return ((n % self.p),) + (0,) * (len(self.basis) - 1)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.basis)
            and all(isinstance(c, int) and 0 <= c < self.p for c in a)
        )

    def _enumerate(self):
        return itertools.product(range(self.p), repeat=len(self.basis))

    def inverse(self, a):
        # the maximal ideal is spanned by the non-constant monomials
        if a[0] == 0:
            return None
        return super().inverse(a)

    def variables(self):
        out = {}
        for i, name in enumerate(self.names):
            exponents = tuple(1 if j == i else 0 for j in range(len(self.names)))
            vector = [0] * len(self.basis)
            if exponents in self.index:
                vector[self.index[exponents]] = 1
            out[name] = tuple(vector)
        return out

    def format_element(self, a) -> str:
        terms = []
        for k in range(len(self.basis) - 1, -1, -1):
            c = a[k]
            if not c:
                continue
            monomial = self._monomial_str(self.basis[k])
            if monomial == "1":
                terms.append(str(c))
            elif c == 1:
                terms.append(monomial)
            else:
                terms.append(f"{c}*{monomial}")
        return "+".join(terms) if terms else "0"


# ============================
# PRODUCTS
# ============================

class ProductRing(Ring):
    """Componentwise product; payloads are tuples with one entry per factor."""

    def __init__(self, descriptor: Product, factors: Tuple[Ring, ...]):
        super().__init__(descriptor)
        self.factors = factors

    @property
    def label(self) -> str:
        return " x ".join(f"({f.label})" if " x " in f.label else f.label for f in self.factors)

    @property
    def order(self) -> Optional[int]:
        orders = [f.order for f in self.factors]
        if any(o is None for o in orders):
            return None
        return reduce(lambda x, y: x * y, orders, 1)

    @property
    def zero(self):
        return tuple(f.zero for f in self.factors)

    @property
    def one(self):
        return tuple(f.one for f in self.factors)

    def add(self, a, b):
        return tuple(f.add(x, y) for f, x, y in zip(self.factors, a, b))

    def neg(self, a):
        return tuple(f.neg(x) for f, x in zip(self.factors, a))

    def mul(self, a, b):
        return tuple(f.mul(x, y) for f, x, y in zip(self.factors, a, b))

    def from_int(self, n: int):
        return tuple(f.from_int(n) for f in self.factors)

    def contains(self, a) -> bool:
        return (
            isinstance(a, tuple)
            and len(a) == len(self.factors)
            and all(f.contains(x) for f, x in zip(self.factors, a))
        )

    def _enumerate(self):
        return itertools.product(*(f.elements(bound=f.order) for f in self.factors))

    def inverse(self, a):
        parts = [f.inverse(x) for f, x in zip(self.factors, a)]
        if any(x is None for x in parts):
            return None
        return tuple(parts)

    def is_zero_divisor(self, a) -> Verdict:
        self.validate(a)
        if a == self.zero:
            return Verdict(False)
        for i, (f, x) in enumerate(zip(self.factors, a)):
            partner = f.one if x == f.zero else f.is_zero_divisor(x).witness
            if partner is not None:
                witness = list(self.zero)
                witness[i] = partner
                return Verdict(True, tuple(witness))
        return Verdict(False)

    def divides(self, a, b) -> DivisibilityVerdict:
        # the least multiplier of the product order is the tuple of least multipliers
        self.validate(a, b)
        parts = []
        for f, x, y in zip(self.factors, a, b):
            verdict = f.divides(x, y)
            if not verdict:
                return NotDivides()
            parts.append(verdict.witness)
        return Divides(tuple(parts))

    def is_field(self) -> bool:
        return len(self.factors) == 1 and self.factors[0].is_field()

    def is_local(self) -> LocalityVerdict:
        if len(self.factors) > 1:
            e = tuple(f.one if i == 0 else f.zero for i, f in enumerate(self.factors))
            return LocalityVerdict(False, witness=(e, self.sub(self.one, e)))
        inner = self.factors[0].is_local()
        wrap = (lambda pair: tuple((x,) for x in pair)) if inner.witness else (lambda pair: None)
        return LocalityVerdict(
            inner.is_local,
            maximal_ideal=tuple((x,) for x in inner.maximal_ideal) if inner.maximal_ideal is not None else None,
            generator=(inner.generator,) if inner.generator is not None else None,
            witness=wrap(inner.witness),
            description=inner.description,
        )

    def format_element(self, a) -> str:
        return "(" + ", ".join(f.format_element(x) for f, x in zip(self.factors, a)) + ")"
