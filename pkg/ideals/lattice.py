"""
lattice.py
Ideals, ideal lattices and the valuation / arithmetical checkers

Finite rings: ideals carry their full element set; the lattice is built
by closing the principal ideals under pairwise sums. Infinite rings in the
closed-form families (DVRs, fraction fields, A ∝ E over a DVR) get
``Ideal`` objects with a membership predicate instead of an element set.
"""

from __future__ import annotations

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Sequence, Tuple

from modules.base import select_generators, submodule_span
from rings.core import (
    CapabilityError,
    DEFAULT_ELEMENT_BOUND,
    DEFAULT_IDEAL_BOUND,
    Element,
    PreconditionError,
    Ring,
    UsageError,
)

logger = logging.getLogger(__name__)


# ============================
# IDEALS
# ============================

@dataclass(frozen=True)
class Ideal:
    """
    An ideal of ``ring``. Identity is (ring descriptor, key) where the key is
    the element set for finite rings and a closed-form shape otherwise.
    """
    descriptor: Any
    key: Any
    ring: Ring = field(compare=False, repr=False)
    generators: Tuple = field(default=(), compare=False)
    principal_generator: Any = field(default=None, compare=False)
    principal: bool = field(default=False, compare=False)
    finitely_generated: bool = field(default=True, compare=False)
    member: Optional[Callable[[Element], bool]] = field(default=None, compare=False, repr=False)
    certificate: Any = field(default=None, compare=False, repr=False)

    @property
    def elements(self) -> Optional[FrozenSet]:
        return self.key if isinstance(self.key, frozenset) else None

    @property
    def size(self) -> Optional[int]:
        return len(self.key) if isinstance(self.key, frozenset) else None

    def sorted_elements(self) -> list:
        if self.elements is None:
            raise CapabilityError("this ideal has no finite element set")
        return sorted(self.elements)

    def __contains__(self, x) -> bool:
        if self.elements is not None:
            return x in self.elements
        if self.member is not None:
            return self.member(x)
        raise CapabilityError("membership is not decidable for this ideal")

    def issubset(self, other: "Ideal") -> bool:
        return self.elements <= other.elements

    @property
    def is_zero(self) -> bool:
        if self.elements is not None:
            return self.elements == frozenset({self.ring.zero})
        return self.key == "(0)"

    def describe(self) -> str:
        """Generator notation, e.g. ``(2)`` or ``(x, y)``."""
        if isinstance(self.key, str):
            return self.key
        if self.principal:
            return f"({self.ring.format_element(self.principal_generator)})"
        return "(" + ", ".join(self.ring.format_element(g) for g in self.generators) + ")"


def closed_form_ideal(
    ring: Ring,
    shape: str,
    member: Callable[[Element], bool],
    generators: Sequence = (),
    principal_generator: Any = None,
    finitely_generated: bool = True,
    certificate: Any = None,
) -> Ideal:
    return Ideal(
        descriptor=ring.descriptor,
        key=shape,
        ring=ring,
        generators=tuple(generators),
        principal_generator=principal_generator,
        principal=principal_generator is not None,
        finitely_generated=finitely_generated,
        member=member,
        certificate=certificate,
    )


def dvr_power_ideal(ring, exponent) -> Ideal:
    """(pi^s) in a DVR; ``exponent`` may be ``math.inf`` for the zero ideal."""
    from rings.dvr import INFINITY

    if exponent == INFINITY:
        return closed_form_ideal(ring, "(0)", lambda x: x == ring.zero, (ring.zero,), ring.zero)
    generator = ring.power(ring.pi, exponent)
    shape = "(1)" if exponent == 0 else f"({ring.format_element(generator)})"
    return closed_form_ideal(
        ring, shape, lambda x: ring.valuation(x) >= exponent, (generator,), generator,
    )


# ============================
# LATTICE OF A FINITE RING
# ============================

class IdealLattice:
    """Ideal computations over one finite ring, with per-ring caches."""

    def __init__(self, ring: Ring, bound: int = DEFAULT_ELEMENT_BOUND):
        ring.require_finite("ideal computations", bound)
        self.ring = ring
        self.elements = ring.elements(bound)
        self.full = ring.element_set
        self.zero_set = frozenset({ring.zero})
        self._principal: Dict[Element, FrozenSet] = {}
        self._generator: Dict[FrozenSet, Optional[Element]] = {}
        self._ideal_sets: Optional[List[FrozenSet]] = None

    # --- element sets --------------------------------------------------
    def principal_set(self, a) -> FrozenSet:
        cached = self._principal.get(a)
        if cached is None:
            if self.ring.inverse(a) is not None:
                cached = self.full
            else:
                cached = frozenset(self.ring.mul(a, r) for r in self.elements)
            self._principal[a] = cached
        return cached

    def sum_sets(self, S: FrozenSet, T: FrozenSet) -> FrozenSet:
        if S <= T:
            return T
        if T <= S:
            return S
        add = self.ring.add
        return frozenset(add(s, t) for s in S for t in T)

    def closure(self, generators) -> FrozenSet:
        ring = self.ring
        return submodule_span(ring, generators, ring.add, ring.mul, ring.zero)

    def annihilator_set(self, a) -> FrozenSet:
        mul, zero = self.ring.mul, self.ring.zero
        return frozenset(b for b in self.elements if mul(a, b) == zero)

    def find_generator(self, S: FrozenSet) -> Optional[Element]:
        """Least member g (payload order) with (g) = S, or None."""
        if S in self._generator:
            return self._generator[S]
        found = None
        for g in sorted(S):
            if self.principal_set(g) == S:
                found = g
                break
        self._generator[S] = found
        return found

    def generators_of(self, S: FrozenSet) -> Tuple:
        g = self.find_generator(S)
        if g is not None:
            return (g,)
        ring = self.ring
        return tuple(select_generators(ring, S, ring.add, ring.mul, ring.zero))

    # --- ideals --------------------------------------------------------
    def make(self, S: FrozenSet, generators: Optional[Sequence] = None) -> Ideal:
        g = self.find_generator(S)
        return Ideal(
            descriptor=self.ring.descriptor,
            key=S,
            ring=self.ring,
            generators=tuple(generators) if generators is not None else self.generators_of(S),
            principal_generator=g,
            principal=g is not None,
        )

    def from_generators(self, generators: Sequence) -> Ideal:
        self.ring.validate(*generators)
        return self.make(self.closure(generators), generators)

    def _check_same(self, *ideals: Ideal) -> None:
        for ideal in ideals:
            if ideal.descriptor != self.ring.descriptor:
                raise UsageError(f"ideal of another ring handed to the lattice of {self.ring.label}")

    def sum(self, I: Ideal, J: Ideal) -> Ideal:
        self._check_same(I, J)
        return self.make(self.sum_sets(I.elements, J.elements), I.generators + J.generators)

    def intersect(self, I: Ideal, J: Ideal) -> Ideal:
        self._check_same(I, J)
        return self.make(I.elements & J.elements)

    def annihilator(self, a) -> Ideal:
        self.ring.validate(a)
        return self.make(self.annihilator_set(a))

    def principal(self, a) -> Ideal:
        self.ring.validate(a)
        return self.make(self.principal_set(a), (a,))

    # --- enumeration ---------------------------------------------------
    def ideal_sets(self, bound: int = DEFAULT_IDEAL_BOUND) -> List[FrozenSet]:
        if self.ring.order > bound:
            raise CapabilityError(
                f"ideal enumeration of {self.ring.label} (order {self.ring.order}) exceeds the bound {bound}"
            )
        if self._ideal_sets is None:
            principal = {self.principal_set(a) for a in self.elements}
            known = set(principal)
            frontier = list(principal)
            while frontier:
                fresh = []
                for S in frontier:
                    for T in list(known):
                        total = self.sum_sets(S, T)
                        if total not in known:
                            known.add(total)
                            fresh.append(total)
                frontier = fresh
            self._ideal_sets = sorted(known, key=lambda S: (len(S), sorted(S)))
            logger.debug("%s has %d ideals", self.ring.label, len(self._ideal_sets))
        return self._ideal_sets

    def all_ideals(self, bound: int = DEFAULT_IDEAL_BOUND) -> List[Ideal]:
        return [self.make(S) for S in self.ideal_sets(bound)]


@lru_cache(maxsize=None)
def lattice_for(ring: Ring) -> IdealLattice:
    return IdealLattice(ring, bound=ring.order or 0)


# ============================
# FUNCTIONAL FRONT END
# ============================

def ideal_from_generators(ring: Ring, generators: Sequence) -> Ideal:
    ring.require_finite("ideal_from_generators")
    return lattice_for(ring).from_generators(generators)


def all_ideals(ring: Ring, bound: int = DEFAULT_IDEAL_BOUND) -> List[Ideal]:
    ring.require_finite("all_ideals", bound)
    return lattice_for(ring).all_ideals(bound)


def lattice_op(kind: str, I: Ideal, J: Ideal) -> Ideal:
    if I.descriptor != J.descriptor:
        raise UsageError("lattice operation on ideals of different rings")
    lattice = lattice_for(I.ring)
    if kind == "sum":
        return lattice.sum(I, J)
    if kind == "intersect":
        return lattice.intersect(I, J)
    raise UsageError(f"unknown lattice operation {kind!r}; expected 'sum' or 'intersect'")


def annihilator_ideal(ring: Ring, a) -> Ideal:
    """(0 : a); infinite domains answer in closed form, finite rings by scan."""
    if ring.order is None:
        ring.validate(a)
        if a == ring.zero:
            return closed_form_ideal(ring, "(1)", lambda x: True, (ring.one,), ring.one)
        if ring.is_zero_divisor(a).holds:
            raise CapabilityError(f"no closed-form annihilator in {ring.label}")
        return closed_form_ideal(ring, "(0)", lambda x: x == ring.zero, (ring.zero,), ring.zero)
    return lattice_for(ring).annihilator(a)


def is_principal(ideal: Ideal) -> Optional[Element]:
    if ideal.elements is None:
        return ideal.principal_generator
    return lattice_for(ideal.ring).find_generator(ideal.elements)


# ============================
# VALUATION CHECK
# ============================

@dataclass(frozen=True)
class ValuationCheck:
    holds: bool
    witness: Optional[Tuple[Element, Element]] = None
    methods: Dict[str, Optional[bool]] = field(default_factory=dict)
    agreement: Optional[bool] = None
    closed_form: bool = False
    reason: str = ""

    def __bool__(self) -> bool:
        return self.holds


def verify_incomparable(ring: Ring, a, b) -> bool:
    """a ∉ (b) and b ∉ (a), re-decided through ``divides``."""
    return not ring.divides(b, a) and not ring.divides(a, b)


def _local_and_two_generated_principal(ring: Ring, lattice: "IdealLattice") -> bool:
    """(a) + (b) is principal for every pair of principal ideals of a local ring."""
    if not ring.is_local().is_local:
        return False
    principal: Dict[FrozenSet, Element] = {}
    for a in lattice.elements:
        principal.setdefault(lattice.principal_set(a), a)
    return all(
        lattice.find_generator(lattice.sum_sets(S, T)) is not None
        for S, T in itertools.combinations(principal, 2)
    )


def _closed_form_valuation(ring: Ring) -> ValuationCheck:
    from extension.trivial import TrivialExtensionRing, find_incomparable_pair, predict_for_ring
    from rings.dvr import DiscreteValuationRing, FractionFieldRing
    from rings.finite import ProductRing

    if isinstance(ring, FractionFieldRing):
        return ValuationCheck(True, closed_form=True, reason="field")
    if isinstance(ring, DiscreteValuationRing):
        return ValuationCheck(True, closed_form=True, reason="discrete valuation ring")
    if isinstance(ring, TrivialExtensionRing):
        prediction = predict_for_ring(ring)
        witness = None if prediction.verdict else find_incomparable_pair(ring)
        return ValuationCheck(prediction.verdict, witness, closed_form=True, reason=prediction.reason.value)
    if isinstance(ring, ProductRing) and len(ring.factors) > 1:
        return ValuationCheck(False, ring.is_local().witness, closed_form=True, reason="product of rings is not local")
    raise CapabilityError(f"no closed-form valuation criterion for {ring.label}")


def is_valuation_ring(
    ring: Ring,
    max_order: int = DEFAULT_IDEAL_BOUND,
    element_bound: int = DEFAULT_ELEMENT_BOUND,
) -> ValuationCheck:
    """
    Finite rings: the principal ideals are scanned element by element for an
    incomparable pair, then two independent methods are compared:
    (i) all ideals totally ordered (only when order <= max_order),
    (ii) local and every 2-generated ideal principal.
    """
    if ring.order is None:
        return _closed_form_valuation(ring)
    ring.require_finite("is_valuation_ring", element_bound)
    lattice = lattice_for(ring)
    chain: Dict[FrozenSet, Element] = {}
    witness = None
    for a in lattice.elements:
        S = lattice.principal_set(a)
        if S in chain:
            continue
        for T, b in chain.items():
            if not (S <= T or T <= S):
                witness = (b, a)
                break
        if witness:
            break
        chain[S] = a
    holds = witness is None

    methods: Dict[str, Optional[bool]] = {
        "local_and_two_generated_principal": _local_and_two_generated_principal(ring, lattice),
    }
    if ring.order <= max_order:
        sets = sorted(lattice.ideal_sets(max_order), key=len)
        methods["ideals_totally_ordered"] = all(S <= T for S, T in zip(sets, sets[1:]))
    else:
        methods["ideals_totally_ordered"] = None
    agreement = all(m == holds for m in methods.values() if m is not None)
    if not agreement:
        logger.warning("valuation methods disagree on %s: %s", ring.label, methods)
    return ValuationCheck(holds, witness, methods, agreement)


# ============================
# ARITHMETICAL CHECK
# ============================

@dataclass(frozen=True)
class ArithmeticalCheck:
    holds: bool
    witness: Optional[Tuple[Ideal, Ideal, Ideal]] = None
    methods: Dict[str, Optional[bool]] = field(default_factory=dict)
    agreement: Optional[bool] = None
    factor_verdicts: Tuple[bool, ...] = ()
    closed_form: bool = False

    def __bool__(self) -> bool:
        return self.holds


def _least_distributivity_failure(lattice: IdealLattice, sets: List[FrozenSet], firsts: Sequence[int]):
    index = {S: i for i, S in enumerate(sets)}
    sums: Dict[Tuple[int, int], int] = {}
    meets: Dict[Tuple[int, int], int] = {}

    def plus(i, j):
        key = (min(i, j), max(i, j))
        if key not in sums:
            sums[key] = index[lattice.sum_sets(sets[i], sets[j])]
        return sums[key]

    def meet(i, j):
        key = (min(i, j), max(i, j))
        if key not in meets:
            meets[key] = index[sets[i] & sets[j]]
        return meets[key]

    n = len(sets)
    for i in firsts:
        for j in range(n):
            s = plus(i, j)
            for k in range(n):
                if meet(s, k) != plus(meet(i, k), meet(j, k)):
                    return (i, j, k)
    return None


def distributivity_holds(lattice: IdealLattice, a: FrozenSet, b: FrozenSet, c: FrozenSet) -> bool:
    """(a + b) ∩ c == (a ∩ c) + (b ∩ c) by direct element-set operations."""
    return lattice.sum_sets(a, b) & c == lattice.sum_sets(a & c, b & c)


def is_arithmetical(ring: Ring, max_order: int = DEFAULT_IDEAL_BOUND, workers: int = 1) -> ArithmeticalCheck:
    """
    (i) distributivity over all ideal triples, least failing triple as witness;
    (ii) every local factor of the idempotent decomposition is a valuation ring.
    """
    from rings.decomposition import local_decomposition

    if ring.order is None:
        check = _closed_form_valuation(ring)
        if check.holds:
            return ArithmeticalCheck(True, closed_form=True)
        raise CapabilityError(f"arithmetical check of the infinite ring {ring.label} has no closed form")
    lattice = lattice_for(ring)
    sets = lattice.ideal_sets(max_order)
    n = len(sets)
    if workers > 1 and n > 1:
        chunks = [list(range(w, n, workers)) for w in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            found = [t for t in pool.map(lambda c: _least_distributivity_failure(lattice, sets, c), chunks) if t]
        failure = min(found) if found else None
    else:
        failure = _least_distributivity_failure(lattice, sets, range(n))
    method_i = failure is None

    decomposition = local_decomposition(ring)
    factor_verdicts = tuple(
        is_valuation_ring(f.ring, max_order=max_order).holds for f in decomposition.factors
    )
    method_ii = all(factor_verdicts)
    witness = None
    if failure:
        witness = tuple(lattice.make(sets[i]) for i in failure)
    agreement = method_i == method_ii
    if not agreement:
        logger.warning("arithmetical methods disagree on %s", ring.label)
    return ArithmeticalCheck(
        method_i,
        witness,
        {"distributive_lattice": method_i, "local_factors_valuation": method_ii},
        agreement,
        factor_verdicts,
    )


# ============================
# ORACLES
# ============================

def ideals_by_subgroup_scan(ring: Ring, bound: int = 16) -> List[FrozenSet]:
    """Every additive subgroup closed under the ring action; exponential, small rings only."""
    ring.require_finite("ideals_by_subgroup_scan", bound)
    elements = ring.elements(bound)
    zero = frozenset({ring.zero})

    def join(H: FrozenSet, g) -> FrozenSet:
        cyclic = {ring.zero}
        value = g
        while value not in cyclic:
            cyclic.add(value)
            value = ring.add(value, g)
        return frozenset(ring.add(h, c) for h in H for c in cyclic)

    subgroups = {zero}
    frontier = [zero]
    while frontier:
        fresh = []
        for H in frontier:
            for g in elements:
                if g in H:
                    continue
                K = join(H, g)
                if K not in subgroups:
                    subgroups.add(K)
                    fresh.append(K)
        frontier = fresh
    ideals = [H for H in subgroups if all(ring.mul(r, h) in H for r in elements for h in H)]
    return sorted(ideals, key=lambda S: (len(S), sorted(S)))


@dataclass(frozen=True)
class CoherenceCheck:
    holds: bool
    annihilators_checked: int
    intersections_checked: int


def is_coherent(ring: Ring, max_order: int = DEFAULT_IDEAL_BOUND) -> CoherenceCheck:
    """Every (0:a) and every intersection of two ideals admits a finite generating set."""
    lattice = lattice_for(ring)
    sets = lattice.ideal_sets(max_order)
    annihilators = {lattice.annihilator_set(a) for a in lattice.elements}
    holds = True
    for S in annihilators:
        holds &= lattice.closure(lattice.generators_of(S)) == S
    pairs = 0
    for S, T in itertools.combinations(sets, 2):
        meet = S & T
        holds &= lattice.closure(lattice.generators_of(meet)) == meet
        pairs += 1
    return CoherenceCheck(holds, len(annihilators), pairs)


def require_chain_ring(ring: Ring) -> None:
    """Raise unless ``ring`` is a finite valuation (chain) ring."""
    if ring.order is None:
        raise PreconditionError(f"{ring.label} is not a finite ring")
    if not is_valuation_ring(ring).holds:
        raise PreconditionError(f"{ring.label} is not a chain ring")
