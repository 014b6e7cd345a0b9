"""
resolution.py
Syzygies, free resolutions and projective dimension over finite rings

Matrices are tuples of rows acting on column vectors: D : R^m -> R^k has
k rows and m columns. Kernels are enumerated exhaustively, generators are
extracted greedily (minimal by Nakayama over a local ring), and the
resolution is iterated until a zero kernel or ``max_steps``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any, FrozenSet, List, Optional, Sequence, Tuple

from ideals.lattice import is_valuation_ring, lattice_for
from modules.analysis import minimal_generators
from modules.base import vector_generators, vector_span, zero_vector
from rings.core import CapabilityError, DEFAULT_ELEMENT_BOUND, PreconditionError, Ring
from rings.descriptors import FinitePresentation
from rings.factory import construct_module

logger = logging.getLogger(__name__)

# ---------------------------
# Defaults
# ---------------------------
DEFAULT_MAX_STEPS = 8

Matrix = Tuple[Tuple[Any, ...], ...]


# ============================
# MATRICES
# ============================

def matrix_apply(ring: Ring, matrix: Matrix, vector: Sequence) -> tuple:
    out = []
    for row in matrix:
        total = ring.zero
        for entry, v in zip(row, vector):
            total = ring.add(total, ring.mul(entry, v))
        out.append(total)
    return tuple(out)


def matrix_multiply(ring: Ring, left: Matrix, right: Matrix, inner: int) -> Matrix:
    columns = len(right[0]) if right else 0
    return tuple(
        tuple(
            _dot(ring, row, [right[k][j] for k in range(inner)])
            for j in range(columns)
        )
        for row in left
    )


def _dot(ring: Ring, u, v):
    total = ring.zero
    for a, b in zip(u, v):
        total = ring.add(total, ring.mul(a, b))
    return total


def columns_to_matrix(columns: Sequence[tuple], rows: int) -> Matrix:
    return tuple(tuple(col[r] for col in columns) for r in range(rows))


def kernel(ring: Ring, matrix: Matrix, columns: int, bound: int = DEFAULT_ELEMENT_BOUND) -> FrozenSet:
    """{v ∈ R^columns : Mv = 0} by enumeration."""
    size = ring.order ** columns
    if size > bound:
        raise CapabilityError(f"kernel enumeration over {ring.label}^{columns} ({size} vectors) exceeds the bound {bound}")
    target = zero_vector(ring, len(matrix))
    scalars = ring.elements(bound=ring.order)
    return frozenset(v for v in itertools.product(scalars, repeat=columns) if matrix_apply(ring, matrix, v) == target)


def image(ring: Ring, matrix: Matrix, columns: int) -> FrozenSet:
    cols = [tuple(row[j] for row in matrix) for j in range(columns)]
    return vector_span(ring, cols, len(matrix))


@dataclass(frozen=True)
class SyzygyResult:
    generators: Tuple[tuple, ...]
    kernel: FrozenSet
    matrix: Matrix

    @property
    def kernel_order(self) -> int:
        return len(self.kernel)


def syzygy_generators(ring: Ring, matrix: Matrix, columns: Optional[int] = None,
                      bound: int = DEFAULT_ELEMENT_BOUND) -> SyzygyResult:
    """Generating set of ker(M) as the columns of a matrix."""
    ring.require_finite("syzygy_generators", bound)
    if columns is None:
        if not matrix:
            raise PreconditionError("a matrix without rows needs an explicit column count")
        columns = len(matrix[0])
    K = kernel(ring, matrix, columns, bound)
    generators = vector_generators(ring, K, columns)
    return SyzygyResult(tuple(generators), K, columns_to_matrix(generators, columns))


# ============================
# RESOLUTIONS
# ============================

@dataclass(frozen=True)
class ExactnessCertificate:
    """D_i · D_{i+1} = 0 and |ker D_i| = |im D_{i+1}| at position i."""
    position: int
    composite_zero: bool
    kernel_order: int
    image_order: int

    @property
    def exact(self) -> bool:
        return self.composite_zero and self.kernel_order == self.image_order


@dataclass(frozen=True)
class FreeResolution:
    ring_label: str
    module_label: str
    generators: Tuple
    matrices: Tuple[Matrix, ...]
    betti: Tuple[int, ...]
    complete: bool
    minimal: bool
    kernel_states: Tuple[Tuple[int, FrozenSet], ...] = field(repr=False)
    certificates: Tuple[ExactnessCertificate, ...] = ()
    warning: Optional[str] = None

    @property
    def steps(self) -> int:
        return len(self.matrices)

    @property
    def length(self) -> Optional[int]:
        """Length of a terminating resolution, else None."""
        return len(self.matrices) if self.complete else None

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.certificates)


def minimal_free_resolution(ring: Ring, module, max_steps: int = DEFAULT_MAX_STEPS,
                            bound: int = DEFAULT_ELEMENT_BOUND) -> FreeResolution:
    """
    F_n -> ... -> F_1 -> F_0 -> M -> 0 by iterated syzygies. Over a non-local
    ring the result is still a free resolution but need not be minimal.
    """
    if isinstance(module, FinitePresentation):
        module = construct_module(module)
    if module.ring.descriptor != ring.descriptor:
        raise PreconditionError(f"the module {module.label} is not defined over {ring.label}")
    ring.require_finite("minimal_free_resolution", bound)
    local = ring.is_local().is_local
    warning = None
    if not local:
        warning = f"{ring.label} is not local; the resolution is free but minimality is not guaranteed"
        logger.warning(warning)
    generators = tuple(minimal_generators(module, local))
    b0 = len(generators)
    scalars = ring.elements(bound=ring.order)
    if ring.order ** b0 > bound:
        raise CapabilityError(f"{ring.label}^{b0} exceeds the enumeration bound {bound}")

    def augment(v):
        total = module.zero
        for c, g in zip(v, generators):
            total = module.add(total, module.scale(c, g))
        return total

    current = frozenset(v for v in itertools.product(scalars, repeat=b0) if augment(v) == module.zero)
    states = [(b0, current)]
    matrices: List[Matrix] = []
    betti = [b0]
    certificates = []
    rank = b0
    for step in range(max_steps):
        if current == frozenset({zero_vector(ring, rank)}):
            break
        columns = vector_generators(ring, current, rank, local)
        D = columns_to_matrix(columns, rank)
        next_rank = len(columns)
        image_order = len(vector_span(ring, columns, rank))
        if matrices:
            composite = matrix_multiply(ring, matrices[-1], D, rank)
            composite_zero = all(e == ring.zero for row in composite for e in row)
        else:
            composite_zero = all(augment(col) == module.zero for col in columns)
        certificates.append(ExactnessCertificate(step, composite_zero, len(current), image_order))
        matrices.append(D)
        betti.append(next_rank)
        current = kernel(ring, D, next_rank, bound)
        rank = next_rank
        states.append((rank, current))
    complete = current == frozenset({zero_vector(ring, rank)})
    logger.debug("Resolution of %s over %s: Betti %s%s", module.label, ring.label, betti, "" if complete else " ...")
    return FreeResolution(
        ring.label,
        module.label,
        generators,
        tuple(matrices),
        tuple(betti),
        complete,
        local,
        tuple(states),
        tuple(certificates),
        warning,
    )


def resolution_periodicity(resolution: FreeResolution) -> Optional[Tuple[int, int]]:
    """(period, offset) of the first repeated kernel state, or None."""
    seen = {}
    for i, state in enumerate(resolution.kernel_states):
        if state in seen:
            return i - seen[state], seen[state]
        seen[state] = i
    return None


# ============================
# PROJECTIVE DIMENSION
# ============================

class PdKind(str, Enum):
    ZERO_MODULE = "ZeroModule"
    PROJECTIVE = "Projective"
    AT_MOST_ONE = "AtMostOne"
    INFINITE_BY_CYCLE = "InfiniteByCycle"
    INFINITE_BY_PERIODICITY = "InfiniteByPeriodicity"
    FINITE_LENGTH = "FiniteLength"
    UNKNOWN_AFTER = "UnknownAfter"


@dataclass(frozen=True)
class PdVerdict:
    kind: PdKind
    b: Any = None
    c: Any = None
    period: Optional[int] = None
    offset: Optional[int] = None
    steps: Optional[int] = None
    length: Optional[int] = None
    cycle_checks: Tuple[bool, ...] = ()
    # label of the local factor that decided a non-local ring
    factor: Optional[str] = None

    @property
    def is_infinite(self) -> bool:
        return self.kind in (PdKind.INFINITE_BY_CYCLE, PdKind.INFINITE_BY_PERIODICITY)


def cyclic_module(ring: Ring, a) -> FinitePresentation:
    """A/aA as a rank-one presentation."""
    return FinitePresentation(ring.descriptor, 1, ((a,),))


def idempotent_generator(ring: Ring, a) -> Optional[Any]:
    """An idempotent e with eA = aA, or None. A/aA is projective iff one exists."""
    lattice = lattice_for(ring)
    target = lattice.principal_set(a)
    for e in ring.idempotents():
        if e in target and lattice.principal_set(e) == target:
            return e
    return None


def annihilator_cycle(ring: Ring, a) -> Optional[Tuple[Any, Any, Tuple[bool, bool, bool]]]:
    """
    b, c with (0:a) = bA, (0:b) = cA, (0:c) = bA. The sequences
    0 -> bA -> A -> aA -> 0 and 0 -> cA -> A -> bA -> 0 give
    pd(bA) = pd(cA) + 1 = pd(bA) + 2 once A/bA is not projective, so pd(A/aA)
    is infinite. Each equality is re-checked by a fresh annihilator scan.
    """
    lattice = lattice_for(ring)
    b = lattice.find_generator(lattice.annihilator_set(a))
    if b is None:
        return None
    c = lattice.find_generator(lattice.annihilator_set(b))
    if c is None:
        return None
    mul, zero = ring.mul, ring.zero
    scan = lambda x: frozenset(y for y in lattice.elements if mul(x, y) == zero)  # noqa: E731
    checks = (
        scan(a) == lattice.principal_set(b),
        scan(b) == lattice.principal_set(c),
        scan(c) == lattice.principal_set(b),
    )
    if not all(checks) or idempotent_generator(ring, b) is not None:
        return None
    return b, c, checks


def projective_dimension_cyclic(ring: Ring, a, max_steps: int = DEFAULT_MAX_STEPS,
                                bound: int = DEFAULT_ELEMENT_BOUND) -> PdVerdict:
    """
    Verdict on pd(A/aA). Over a non-local ring without an annihilator cycle
    the question is settled factor by factor, since free resolutions there
    can cycle through projective modules that are not free.
    """
    ring.validate(a)
    ring.require_finite("projective_dimension_cyclic", bound)
    if a == ring.zero:
        return PdVerdict(PdKind.PROJECTIVE)
    if ring.inverse(a) is not None:
        return PdVerdict(PdKind.ZERO_MODULE)
    if idempotent_generator(ring, a) is not None:
        return PdVerdict(PdKind.PROJECTIVE)
    lattice = lattice_for(ring)
    if lattice.annihilator_set(a) == lattice.zero_set:
        return PdVerdict(PdKind.AT_MOST_ONE)
    cycle = annihilator_cycle(ring, a)
    if cycle is not None:
        b, c, checks = cycle
        return PdVerdict(PdKind.INFINITE_BY_CYCLE, b=b, c=c, cycle_checks=checks)
    if not ring.is_local().is_local:
        return _pd_by_local_factors(ring, a, max_steps, bound)
    resolution = minimal_free_resolution(ring, cyclic_module(ring, a), max_steps, bound)
    if resolution.complete:
        return PdVerdict(PdKind.FINITE_LENGTH, length=resolution.length, steps=resolution.steps)
    periodicity = resolution_periodicity(resolution)
    if periodicity is not None:
        period, offset = periodicity
        return PdVerdict(PdKind.INFINITE_BY_PERIODICITY, period=period, offset=offset, steps=resolution.steps)
    return PdVerdict(PdKind.UNKNOWN_AFTER, steps=max_steps)


def _pd_by_local_factors(ring: Ring, a, max_steps: int, bound: int) -> PdVerdict:
    """pd over R = ∏ e_i R is the largest pd over the factors."""
    from rings.decomposition import local_decomposition

    decomposition = local_decomposition(ring, bound)
    verdicts = []
    for factor, component in zip(decomposition.factors, decomposition.project(a)):
        verdict = projective_dimension_cyclic(factor.ring, component, max_steps, bound)
        verdicts.append(replace(verdict, factor=factor.ring.label))
    for kind in (PdKind.INFINITE_BY_CYCLE, PdKind.INFINITE_BY_PERIODICITY, PdKind.UNKNOWN_AFTER):
        for verdict in verdicts:
            if verdict.kind is kind:
                return verdict
    finite = [v for v in verdicts if v.kind is PdKind.FINITE_LENGTH]
    if finite:
        return max(finite, key=lambda v: v.length)
    if any(v.kind is PdKind.AT_MOST_ONE for v in verdicts):
        return PdVerdict(PdKind.AT_MOST_ONE)
    return PdVerdict(PdKind.PROJECTIVE)


def is_free_principal_ideal(ring: Ring, a) -> bool:
    """aA is free (equivalently flat, for a finite local ring) iff (0:a) = 0."""
    ring.validate(a)
    if not ring.is_local().is_local:
        raise PreconditionError(f"{ring.label} is not local")
    lattice = lattice_for(ring)
    return lattice.annihilator_set(a) == lattice.zero_set


# ============================
# (2, d) CLASSIFICATION OF CHAIN RINGS
# ============================

class ChainClass(str, Enum):
    FIELD = "FieldHenceProjectiveWorld"
    NOT_2D = "NotA2dRingForAnyD"


@dataclass(frozen=True)
class ChainClassification:
    kind: ChainClass
    witness: Any = None
    annihilator_generator: Any = None
    verdict: Optional[PdVerdict] = None


def classify_2d(ring: Ring) -> ChainClassification:
    """
    A field has only free modules. Any other finite chain ring has the
    zero divisor pi with (0:pi) principal, and A/pi A has infinite pd.
    """
    if ring.order is None or not is_valuation_ring(ring).holds:
        raise PreconditionError(f"{ring.label} is not a finite chain ring")
    if ring.is_field():
        return ChainClassification(ChainClass.FIELD)
    from modules.warfield import chain_ring_data

    pi = chain_ring_data(ring).pi
    lattice = lattice_for(ring)
    generator = lattice.find_generator(lattice.annihilator_set(pi))
    return ChainClassification(ChainClass.NOT_2D, pi, generator, projective_dimension_cyclic(ring, pi))
