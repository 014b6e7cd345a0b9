"""
warfield.py
Diagonalisation of presentation matrices over finite chain rings

Over a chain ring every element is unit·pi^k, so pivoting on an entry of
least valuation lets us clear its row and column with ring multiples.
The presented module splits as ⊕ R/(pi^e_i); exponents equal to the chain
length N are free summands (pi^N = 0).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache, reduce
from typing import List, Optional, Sequence, Tuple

from ideals.lattice import lattice_for, require_chain_ring
from modules.presented import FinitelyPresentedModule
from rings.core import CapabilityError, DEFAULT_ELEMENT_BOUND, PreconditionError, Ring
from rings.descriptors import FinitePresentation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainRingData:
    pi: object
    length: int
    residue_size: int
    powers: Tuple[frozenset, ...]

    def valuation(self, a) -> int:
        """Largest k with a ∈ (pi^k); the zero element gets the chain length."""
        for k in range(self.length, 0, -1):
            if a in self.powers[k]:
                return k
        return 0


@lru_cache(maxsize=None)
def chain_ring_data(ring: Ring) -> ChainRingData:
    require_chain_ring(ring)
    lattice = lattice_for(ring)
    locality = ring.is_local()
    maximal = frozenset(locality.maximal_ideal)
    pi = lattice.find_generator(maximal)
    if pi is None:
        raise PreconditionError(f"the maximal ideal of {ring.label} is not principal")
    powers = [lattice.full]
    value = ring.one
    while powers[-1] != lattice.zero_set:
        value = ring.mul(value, pi)
        powers.append(lattice.principal_set(value))
    residue_size = ring.order // len(maximal)
    return ChainRingData(pi, len(powers) - 1, residue_size, tuple(powers))


@dataclass(frozen=True)
class WarfieldDecomposition:
    ring_label: str
    pi: object
    chain_length: int
    residue_size: int
    exponents: Tuple[int, ...]
    generators: Tuple

    @property
    def predicted_order(self) -> int:
        return reduce(lambda acc, e: acc * self.residue_size ** e, self.exponents, 1)

    def predicted_histogram(self) -> List[int]:
        """h(k) = |{m : pi^k m = 0}| for k = 0..N."""
        return [
            reduce(lambda acc, e: acc * self.residue_size ** min(k, e), self.exponents, 1)
            for k in range(self.chain_length + 1)
        ]


def warfield_decompose(ring: Ring, matrix: Sequence[Sequence], rank: Optional[int] = None) -> WarfieldDecomposition:
    """
    Pivot rule: least valuation, ties broken by lowest (row, column).
    Unit pivots kill their generator and are dropped from the result.
    """
    data = chain_ring_data(ring)
    rows = [list(r) for r in matrix]
    if rank is None:
        if not rows:
            raise PreconditionError("an empty relation matrix needs an explicit rank")
        rank = len(rows[0])
    for row in rows:
        if len(row) != rank:
            raise PreconditionError(f"relation row {row!r} does not have {rank} entries")
        ring.validate(*row)
    active_rows = list(range(len(rows)))
    active_cols = list(range(rank))
    exponents = []
    while active_rows and active_cols:
        best = None
        for i in active_rows:
            for j in active_cols:
                v = data.valuation(rows[i][j])
                if best is None or v < best[0]:
                    best = (v, i, j)
        v, i, j = best
        if v >= data.length:
            break
        pivot = rows[i][j]
        for r in active_rows:
            if r != i and rows[r][j] != ring.zero:
                q = ring.divides(pivot, rows[r][j]).witness
                rows[r] = [ring.sub(rows[r][c], ring.mul(q, rows[i][c])) for c in range(rank)]
        for c in active_cols:
            if c != j and rows[i][c] != ring.zero:
                q = ring.divides(pivot, rows[i][c]).witness
                for r in range(len(rows)):
                    rows[r][c] = ring.sub(rows[r][c], ring.mul(q, rows[r][j]))
        exponents.append(v)
        active_rows.remove(i)
        active_cols.remove(j)
    exponents.extend([data.length] * len(active_cols))
    kept = tuple(sorted(e for e in exponents if e > 0))
    logger.debug("Warfield over %s: exponents %s", ring.label, kept)
    return WarfieldDecomposition(
        ring.label,
        data.pi,
        data.length,
        data.residue_size,
        kept,
        tuple(ring.power(data.pi, e) for e in kept),
    )


def brute_force_profile(ring: Ring, matrix: Sequence[Sequence], rank: int,
                        bound: int = DEFAULT_ELEMENT_BOUND) -> Tuple[int, List[int]]:
    """(module order, annihilator histogram) by coset enumeration of R^rank / row span."""
    data = chain_ring_data(ring)
    module = FinitelyPresentedModule(
        FinitePresentation(ring.descriptor, rank, tuple(tuple(r) for r in matrix)), bound=bound,
    )
    if module.order > bound:
        raise CapabilityError("module too large for brute-force comparison")
    items = module.elements(bound)
    histogram = []
    for k in range(data.length + 1):
        scalar = ring.power(data.pi, k)
        histogram.append(sum(1 for m in items if module.scale(scalar, m) == module.zero))
    return module.order, histogram
