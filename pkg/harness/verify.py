"""
verify.py
Theorem verification suite

Each registered check sweeps a family of instances and records every
disagreement between a closed-form criterion and a direct computation as a
counterexample. Instances draw their random numbers from seeds derived
from (global seed, instance key), so results do not depend on the order in
which instances run.
"""

from __future__ import annotations

import hashlib
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np
import psutil

from extension.trivial import (
    NonFinitelyGeneratedCertificate,
    PredictionReason,
    annihilator_in_triv_ext,
    find_incomparable_pair,
    predict_valuation,
)
from harness.catalog import (
    DVR_BASES,
    arithmetical_catalog,
    chain_ring_catalog,
    finite_catalog,
    random_relation_matrix,
    rings,
)
from harness.parser import element_from_text, ring_from_text
from homology.resolution import (
    ChainClass,
    PdKind,
    classify_2d,
    cyclic_module,
    is_free_principal_ideal,
    minimal_free_resolution,
    projective_dimension_cyclic,
    resolution_periodicity,
)
from ideals.lattice import (
    annihilator_ideal,
    distributivity_holds,
    is_arithmetical,
    is_coherent,
    is_valuation_ring,
    lattice_for,
    verify_incomparable,
)
from modules.analysis import TorsionClass, is_uniserial, torsion_classification
from modules.warfield import brute_force_profile, chain_ring_data, warfield_decompose
from rings.core import DEFAULT_ELEMENT_BOUND, DEFAULT_IDEAL_BOUND, Ring, UsageError
from rings.descriptors import (
    CyclicTorsion,
    DvrFormalSum,
    FinitePresentation,
    FractionField,
    Free,
    TrivialExtension,
    cyclic_quotient,
    free_module,
)
from rings.dvr import SampleBounds, element_rng
from rings.factory import construct_module, construct_ring

logger = logging.getLogger(__name__)

# ---------------------------
# Defaults
# ---------------------------
DEFAULT_SEED = 42
DEFAULT_SAMPLES = 10_000
DEFAULT_MAX_STEPS = 8
WARFIELD_MATRICES = 200
WARFIELD_SHAPES = ((2, 2), (2, 3), (3, 3))
MAX_MODULE_ORDER = 16
RANDOM_PRESENTATIONS = 6


@dataclass(frozen=True)
class VerifyConfig:
    max_order: int = DEFAULT_IDEAL_BOUND
    max_steps: int = DEFAULT_MAX_STEPS
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    workers: int = 1
    sample_bounds: SampleBounds = SampleBounds()

    def bounds(self) -> Dict[str, int]:
        return {"max_order": self.max_order, "max_steps": self.max_steps, "samples": self.samples}


def derive_seed(seed: int, key: str) -> int:
    """Per-instance seed; independent of the order instances are processed in."""
    digest = hashlib.sha256(f"{seed}:{key}".encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


# ============================
# REPORTS
# ============================

@dataclass
class Tally:
    checked: int = 0
    passed: int = 0
    counterexamples: List[str] = field(default_factory=list)
    seeds: Dict[str, int] = field(default_factory=dict)

    def record(self, ok: bool, instance: str, detail: str = "") -> bool:
        self.checked += 1
        if ok:
            self.passed += 1
        else:
            message = f"{instance}: {detail}" if detail else instance
            self.counterexamples.append(message)
            logger.debug("Counterexample %s", message)
        return ok


@dataclass(frozen=True)
class TheoremReport:
    theorem_id: str
    title: str
    instances: str
    checked: int
    passed_count: int
    counterexamples: Tuple[str, ...]
    seeds: Dict[str, int]
    bounds: Dict[str, int]
    wall_clock: float
    rss_bytes: int

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        out = {
            "id": self.theorem_id,
            "title": self.title,
            "instances": self.instances,
            "checked": self.checked,
            "passed_count": self.passed_count,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
            "seeds": dict(self.seeds),
            "bounds": dict(self.bounds),
        }
        if timings:
            out["wall_clock_seconds"] = round(self.wall_clock, 3)
            out["rss_bytes"] = self.rss_bytes
        return out

    def row(self) -> Dict[str, Any]:
        return {
            "id": self.theorem_id,
            "checked": self.checked,
            "passed": self.passed_count,
            "counterexamples": len(self.counterexamples),
            "verdict": "PASS" if self.passed else "FAIL",
            "seconds": round(self.wall_clock, 2),
            "rss_mb": round(self.rss_bytes / 2 ** 20, 1),
        }


@dataclass(frozen=True)
class TheoremCheck:
    theorem_id: str
    title: str
    instances: str
    run: Callable[[VerifyConfig, Tally], None]


REGISTRY: Dict[str, TheoremCheck] = {}


def register(theorem_id: str, title: str, instances: str):
    def decorator(fn):
        REGISTRY[theorem_id] = TheoremCheck(theorem_id, title, instances, fn)
        return fn
    return decorator


def theorem_ids() -> List[str]:
    return list(REGISTRY)


def verify_theorem(theorem_id: str, config: VerifyConfig = VerifyConfig()) -> TheoremReport:
    if theorem_id not in REGISTRY:
        raise UsageError(f"unknown theorem id {theorem_id!r}; known ids: {', '.join(REGISTRY)}, all")
    check = REGISTRY[theorem_id]
    logger.info("Verifying %s: %s", theorem_id, check.title)
    tally = Tally()
    start = time.perf_counter()
    check.run(config, tally)
    elapsed = time.perf_counter() - start
    if tally.checked == 0:
        tally.counterexamples.append("no instances were checked")
    rss = psutil.Process().memory_info().rss
    logger.info(
        "%s: %d checked, %d counterexample(s), %.2fs",
        theorem_id, tally.checked, len(tally.counterexamples), elapsed,
    )
    return TheoremReport(
        theorem_id,
        check.title,
        check.instances,
        tally.checked,
        tally.passed,
        tuple(tally.counterexamples),
        tally.seeds,
        config.bounds(),
        elapsed,
        rss,
    )


def verify_all(config: VerifyConfig = VerifyConfig()) -> List[TheoremReport]:
    return [verify_theorem(theorem_id, config) for theorem_id in REGISTRY]


# ============================
# SHARED INSTANCE BUILDERS
# ============================

def _triv(base, module) -> Ring:
    return construct_ring(TrivialExtension(base, module))


def finite_module_instances(base_ring: Ring, rng: np.random.Generator,
                            random_presentations: int = RANDOM_PRESENTATIONS) -> List[FinitePresentation]:
    """
    Nonzero cyclic quotients A/(a), one per principal ideal, then rank-2
    diagonal and up to ``random_presentations`` seeded random rank-2
    presentations, all with |E| <= 16.
    """
    base = base_ring.descriptor
    lattice = lattice_for(base_ring)
    representatives = []
    seen = set()
    for a in lattice.elements:
        if base_ring.inverse(a) is not None:
            continue
        S = lattice.principal_set(a)
        if S not in seen:
            seen.add(S)
            representatives.append(a)
    modules = [cyclic_quotient(base, a) for a in representatives]
    zero = base_ring.zero
    for i, a in enumerate(representatives):
        for b in representatives[i:]:
            size = (base_ring.order // len(lattice.principal_set(a))) * (base_ring.order // len(lattice.principal_set(b)))
            if size <= MAX_MODULE_ORDER:
                modules.append(FinitePresentation(base, 2, ((a, zero), (zero, b))))
    if base_ring.order ** 2 > DEFAULT_ELEMENT_BOUND:
        return modules
    accepted = 0
    for _ in range(4 * random_presentations):
        candidate = FinitePresentation(base, 2, random_relation_matrix(base_ring, rng, 2, 2))
        order = construct_module(candidate).order
        if 1 < order <= MAX_MODULE_ORDER and candidate not in modules:
            modules.append(candidate)
            accepted += 1
            if accepted == random_presentations:
                break
    return modules


def _finite_pairs(config: VerifyConfig, tally: Tally):
    for expression, A in rings(finite_catalog(min(config.max_order, MAX_MODULE_ORDER))):
        key = f"pairs:{expression}"
        seed = derive_seed(config.seed, key)
        tally.seeds[expression] = seed
        count = min(RANDOM_PRESENTATIONS, config.samples)
        for E in finite_module_instances(A, element_rng(seed), count):
            yield expression, A, E


def _sample_triv_element(ring: Ring, rng: np.random.Generator, bounds: SampleBounds, zero_base: bool = False):
    A, E = ring.base, ring.module
    a = A.zero if zero_base else A.sample(rng, bounds)
    vector = []
    for s in E.summands:
        value = E.field.sample(rng, bounds) if isinstance(s, FractionField) else A.sample(rng, bounds)
        vector.append(value)
    return a, E.canonical(tuple(vector))


# ============================
# VALUATION RINGS A ∝ E
# ============================

def _divisibility_problem(ring, x, y) -> Optional[str]:
    """None when x | y or y | x and every returned witness replays."""
    forward, backward = ring.divides(x, y), ring.divides(y, x)
    if not (forward or backward):
        return "incomparable"
    for a, b, verdict in ((x, y, forward), (y, x, backward)):
        if verdict and ring.mul(a, verdict.witness) != b:
            return f"divisibility witness {ring.format_element(verdict.witness)} does not replay"
    return None


@register("thm-2.1.1", "A ∝ K is a valuation ring for a valuation domain A",
          "Zloc(2), Zloc(3), Floc(2) with E = K; seeded element pairs and annihilator membership checks")
def _a_kq_is_a_valuation_ring(config: VerifyConfig, tally: Tally) -> None:
    draws = max(1, min(1000, config.samples // 10))
    for expression in DVR_BASES:
        base = ring_from_text(expression).descriptor
        module = DvrFormalSum(base, (FractionField(),))
        ring = _triv(base, module)
        prediction = predict_valuation(base, module)
        tally.record(prediction.verdict, ring.label, "prediction is not a valuation ring")
        seed = derive_seed(config.seed, f"thm-2.1.1:{expression}")
        tally.seeds[expression] = seed
        rng = element_rng(seed)
        failures = 0
        for _ in range(config.samples):
            x = _sample_triv_element(ring, rng, config.sample_bounds)
            y = _sample_triv_element(ring, rng, config.sample_bounds)
            problem = _divisibility_problem(ring, x, y)
            if problem:
                failures += 1
                tally.counterexamples.append(f"{ring.label}: {ring.format_element(x)} and {ring.format_element(y)} {problem}")
        tally.checked += 1
        tally.passed += failures == 0
        mismatches = 0
        for i in range(draws):
            x = _sample_triv_element(ring, rng, config.sample_bounds, zero_base=i % 2 == 0)
            y = _sample_triv_element(ring, rng, config.sample_bounds, zero_base=i % 3 != 2)
            ideal = annihilator_in_triv_ext(ring, x)
            if (y in ideal) != (ring.mul(x, y) == ring.zero):
                mismatches += 1
        tally.record(mismatches == 0, ring.label, f"{mismatches} annihilator membership mismatches")


@register("thm-2.1.2", "A ∝ E (A finite) is a valuation ring iff A is a field and E ≅ A",
          "catalog rings of order <= 16 with cyclic and rank-2 modules of order <= 16")
def _finite_valuation_criterion(config: VerifyConfig, tally: Tally) -> None:
    for expression, A, E in _finite_pairs(config, tally):
        ring = _triv(A.descriptor, E)
        direct = is_valuation_ring(ring, max_order=config.max_order)
        predicted = predict_valuation(A.descriptor, E)
        detail = f"predicted {predicted.verdict} ({predicted.reason.value}), direct {direct.holds}"
        tally.record(direct.holds == predicted.verdict and direct.agreement is not False, ring.label, detail)


@register("lem-2.2", "A ∝ E a valuation ring forces A a valuation domain and E uniserial",
          "all pairs of thm-2.1.2 plus A ∝ K over the DVR bases")
def _valuation_forces_domain_and_uniserial(config: VerifyConfig, tally: Tally) -> None:
    for expression, A, E in _finite_pairs(config, tally):
        ring = _triv(A.descriptor, E)
        if not is_valuation_ring(ring, max_order=config.max_order).holds:
            continue
        module = construct_module(E)
        ok = A.is_field() and is_uniserial(module).holds
        tally.record(ok, ring.label, "valuation ring over a non-domain base or a non-uniserial module")
    for expression in DVR_BASES:
        base = ring_from_text(expression).descriptor
        module = DvrFormalSum(base, (FractionField(),))
        ring = _triv(base, module)
        ok = is_valuation_ring(ring).holds and is_uniserial(construct_module(module)).holds
        tally.record(ok, ring.label, "closed-form valuation ring without a uniserial module")


@register("cor-2.3", "A ∝ A is a valuation ring iff A is a field",
          "Z/n (2 <= n <= 32), GF(4), GF(8), GF(9), truncated polynomial rings, Z/4 x Z/3, F2[x,y]/(x^2,xy,y^2)")
def _self_idealization(config: VerifyConfig, tally: Tally) -> None:
    for expression, A in rings(finite_catalog(min(config.max_order, 32))):
        ring = _triv(A.descriptor, free_module(A.descriptor))
        direct = is_valuation_ring(ring, max_order=config.max_order)
        if direct.holds:
            ok = A.is_field()
        else:
            ok = not A.is_field() and verify_incomparable(ring, *direct.witness)
        tally.record(ok, ring.label, f"direct {direct.holds}, field {A.is_field()}")


@register("cor-2.6", "A ∝ E is not a valuation ring when E is mixed",
          "DVR bases with Free + A/(pi) and K + A/(pi); finite mixed modules of thm-2.1.2")
def _mixed_modules(config: VerifyConfig, tally: Tally) -> None:
    for expression in DVR_BASES:
        base = ring_from_text(expression).descriptor
        for summands in ((Free(), CyclicTorsion(1)), (FractionField(), CyclicTorsion(1))):
            module = DvrFormalSum(base, summands)
            ring = _triv(base, module)
            prediction = predict_valuation(base, module)
            pair = find_incomparable_pair(ring)
            ok = (
                not prediction.verdict
                and prediction.reason is PredictionReason.MIXED_MODULE
                and pair is not None
                and verify_incomparable(ring, *pair)
            )
            tally.record(ok, ring.label, "no verified incomparable pair for a mixed module")
    for expression, A, E in _finite_pairs(config, tally):
        if torsion_classification(construct_module(E)) is not TorsionClass.MIXED:
            continue
        ring = _triv(A.descriptor, E)
        direct = is_valuation_ring(ring, max_order=config.max_order)
        ok = not direct.holds and verify_incomparable(ring, *direct.witness)
        tally.record(ok, ring.label, "mixed module gave a valuation ring")


# ============================
# HOMOLOGICAL CHECKS
# ============================

@register("cor-3.3", "A ∝ K: zero divisors are exactly (0, x) and (0:(0, x)) = 0 ∝ K is not finitely generated",
          "Zloc(2), Zloc(3), Floc(2) with E = K; seeded elements and candidate generator lists")
def _a_kq_annihilators(config: VerifyConfig, tally: Tally) -> None:
    draws = max(1, min(1000, config.samples // 10))
    for expression in DVR_BASES:
        base = ring_from_text(expression).descriptor
        ring = _triv(base, DvrFormalSum(base, (FractionField(),)))
        seed = derive_seed(config.seed, f"cor-3.3:{expression}")
        tally.seeds[expression] = seed
        rng = element_rng(seed)
        certificate = NonFinitelyGeneratedCertificate(ring)
        failures = []
        for _ in range(draws):
            x = _sample_triv_element(ring, rng, config.sample_bounds)
            if x == ring.zero:
                continue
            a = x[0]
            if ring.is_zero_divisor(x).holds != (a == ring.base.zero):
                failures.append(f"zero-divisor verdict of {ring.format_element(x)}")
            if a != ring.base.zero:
                continue
            ideal = annihilator_in_triv_ext(ring, x)
            if ideal.finitely_generated or ideal.key != "0 ∝ K":
                failures.append(f"annihilator of {ring.format_element(x)} is {ideal.describe()}")
                continue
            count = int(rng.integers(1, 5))
            candidates = [_sample_triv_element(ring, rng, config.sample_bounds, zero_base=True) for _ in range(count)]
            escaped = certificate.escape(candidates)
            if not certificate.verify(candidates) or escaped not in ideal:
                failures.append(f"certificate for {ring.format_element(x)}")
        tally.counterexamples.extend(f"{ring.label}: {f}" for f in failures)
        tally.checked += draws
        tally.passed += draws - len(failures)


def _chain_rings(config: VerifyConfig, fields: bool = False):
    for expression, ring in rings(chain_ring_catalog(config.max_order)):
        if fields or not ring.is_field():
            yield expression, ring


@register("thm-3.1.2", "A/aA has infinite projective dimension over a chain ring with zero divisors",
          "every finite chain ring of order <= max_order; a = pi^m for 0 <= m <= n")
def _chain_ring_cycles(config: VerifyConfig, tally: Tally) -> None:
    for expression, ring in _chain_rings(config):
        data = chain_ring_data(ring)
        for m in range(data.length + 1):
            a = ring.power(data.pi, m)
            verdict = projective_dimension_cyclic(ring, a, config.max_steps)
            if m == 0:
                expected = verdict.kind is PdKind.ZERO_MODULE
            elif m == data.length:
                expected = verdict.kind is PdKind.PROJECTIVE
            else:
                expected = verdict.kind is PdKind.INFINITE_BY_CYCLE and all(verdict.cycle_checks)
            tally.record(expected, f"{ring.label}, a = {ring.format_element(a)}", f"verdict {verdict.kind.value}")
        regular = [
            a for a in ring.elements(bound=ring.order)
            if a != ring.zero and ring.inverse(a) is None
            and projective_dimension_cyclic(ring, a, config.max_steps).kind is PdKind.AT_MOST_ONE
        ]
        tally.record(not regular, ring.label, "a regular non-unit exists")


@register("cor-3.4", "a coherent valuation ring with zero divisors is not a (2,d)-ring",
          "finite chain rings that are not fields")
def _coherent_chain_rings(config: VerifyConfig, tally: Tally) -> None:
    for expression, ring in _chain_rings(config):
        coherent = is_coherent(ring, max_order=config.max_order).holds
        verdict = projective_dimension_cyclic(ring, chain_ring_data(ring).pi, config.max_steps)
        tally.record(coherent and verdict.is_infinite, ring.label, f"coherent {coherent}, pd {verdict.kind.value}")


@register("lem-3.2", "finitely presented modules over chain rings split into cyclic modules",
          "min(200, samples) seeded matrices (2x2, 2x3, 3x3) over Z/8 and F2[x]/(x^3) against coset enumeration")
def _warfield_splitting(config: VerifyConfig, tally: Tally) -> None:
    for expression in ("Z/8", "F2[x]/(x^3)"):
        ring = ring_from_text(expression)
        seed = derive_seed(config.seed, f"lem-3.2:{expression}")
        tally.seeds[expression] = seed
        rng = element_rng(seed)
        for i in range(min(WARFIELD_MATRICES, config.samples)):
            rows, columns = WARFIELD_SHAPES[i % len(WARFIELD_SHAPES)]
            matrix = random_relation_matrix(ring, rng, rows, columns)
            decomposition = warfield_decompose(ring, matrix, columns)
            order, histogram = brute_force_profile(ring, matrix, columns)
            ok = decomposition.predicted_order == order and decomposition.predicted_histogram() == histogram
            shown = [[ring.format_element(e) for e in row] for row in matrix]
            tally.record(ok, f"{expression} {shown}", f"exponents {decomposition.exponents}")


@register("rem-3.5", "the maximal ideal of a chain ring that is not a field is not flat",
          "every finite chain ring of order <= max_order")
def _maximal_ideal_not_flat(config: VerifyConfig, tally: Tally) -> None:
    for expression, ring in _chain_rings(config, fields=True):
        classification = classify_2d(ring)
        if ring.is_field():
            tally.record(classification.kind is ChainClass.FIELD, ring.label, "field not classified as such")
            continue
        flat = is_free_principal_ideal(ring, chain_ring_data(ring).pi)
        tally.record(not flat and classification.kind is ChainClass.NOT_2D, ring.label, f"maximal ideal free: {flat}")


@register("ex-3.6", "Z/p^n is not a (2,d)-ring",
          "(p, n) in {(2,2), (2,3), (3,2), (3,3)} with a = p")
def _zmod_prime_powers(config: VerifyConfig, tally: Tally) -> None:
    for p, n in ((2, 2), (2, 3), (3, 2), (3, 3)):
        ring = ring_from_text(f"Z/{p ** n}")
        verdict = projective_dimension_cyclic(ring, p, config.max_steps)
        ok = (
            verdict.kind is PdKind.INFINITE_BY_CYCLE
            and verdict.b == p ** (n - 1)
            and verdict.c == p
            and all(verdict.cycle_checks)
        )
        tally.record(ok, f"{ring.label}, a = {p}", f"verdict {verdict}")
        resolution = minimal_free_resolution(ring, cyclic_module(ring, p), config.max_steps)
        ok = all(b == 1 for b in resolution.betti) and resolution.exact and resolution_periodicity(resolution) is not None
        tally.record(ok, f"resolution of {ring.label}/({p})", f"Betti {resolution.betti}")


@register("ex-3.7", "(0 : x^(n-1)) = (x) in F2[x]/(x^n)",
          "F2[x]/(x^n) for n = 2, 3, 4")
def _truncated_polynomials(config: VerifyConfig, tally: Tally) -> None:
    for n in (2, 3, 4):
        ring = ring_from_text(f"F2[x]/(x^{n})")
        x = ring.variables()["x"]
        ideal = annihilator_ideal(ring, ring.power(x, n - 1))
        expected = lattice_for(ring).principal_set(x)
        tally.record(ideal.elements == expected, ring.label, f"annihilator {ideal.describe()}")
        classification = classify_2d(ring)
        ok = classification.kind is ChainClass.NOT_2D and classification.witness == x
        tally.record(ok, ring.label, f"classification {classification.kind.value}")


@register("prop-3.8.2", "periodic free resolutions over decomposable rings",
          "Z/12 with a = 2, Z/4 x Z/3 with a = (2, 1), Z/18 with a = 3")
def _decomposable_rings(config: VerifyConfig, tally: Tally) -> None:
    for expression, literal in (("Z/12", "2"), ("Z/4 x Z/3", "(2, 1)"), ("Z/18", "3")):
        ring = ring_from_text(expression)
        a = element_from_text(ring, literal)
        resolution = minimal_free_resolution(ring, cyclic_module(ring, a), config.max_steps)
        periodicity = resolution_periodicity(resolution)
        verdict = projective_dimension_cyclic(ring, a, config.max_steps)
        ok = periodicity is not None and resolution.exact and verdict.is_infinite
        tally.record(ok, f"{ring.label}/({literal})", f"periodicity {periodicity}, verdict {verdict.kind.value}")


@register("arith-jensen", "a ring is arithmetical iff its local factors are valuation rings",
          "Z/n (2 <= n <= max_order) and further local rings and products of order <= max_order")
def _arithmetical_jensen(config: VerifyConfig, tally: Tally) -> None:
    for expression, ring in rings(arithmetical_catalog(min(config.max_order, 64))):
        check = is_arithmetical(ring, max_order=config.max_order, workers=config.workers)
        ok = check.agreement
        if check.witness:
            lattice = lattice_for(ring)
            ok = ok and not distributivity_holds(lattice, *(i.elements for i in check.witness))
        tally.record(ok, ring.label, f"methods {check.methods}")
    expectations = (("Z/12", True), ("F2[x,y]/(x^2,x*y,y^2)", False))
    for expression, expected in expectations:
        ring = ring_from_text(expression)
        if ring.order > config.max_order:
            continue
        check = is_arithmetical(ring, max_order=config.max_order)
        tally.record(check.holds == expected, ring.label, f"arithmetical {check.holds}")
