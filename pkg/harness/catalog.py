"""
catalog.py
Named ring collections and seeded random instances for the verification sweeps

Catalog entries are expression strings in the parser's canonical form, so
every instance a report mentions can be pasted back into the command line.
"""

from __future__ import annotations

import logging
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from harness.parser import (
    BinOp,
    FlocExpr,
    FracExpr,
    FracModExpr,
    FreeModExpr,
    GaloisExpr,
    Num,
    PolyExpr,
    Pow,
    ProductExpr,
    QuotientModExpr,
    RingAst,
    SumModExpr,
    TrivExpr,
    Var,
    ZlocExpr,
    ZModExpr,
    ring_from_text,
)
from rings.core import Ring

logger = logging.getLogger(__name__)

# ---------------------------
# Expression collections
# ---------------------------
GOLDEN_CORPUS: Tuple[str, ...] = (
    "Z/8",
    "Z/12",
    "F4",
    "F9",
    "F2[x]/(x^2+x+1)",
    "F2[x]/(x^3)",
    "F3[x]/(x^2)",
    "F2[x,y]/(x^2,x*y,y^2)",
    "Z/4 x Z/3",
    "(Z/2 x Z/2) x Z/3",
    "prod(Z/5)",
    "Zloc(2)",
    "Zloc(3)",
    "Floc(2)",
    "Floc(4)",
    "Frac(Zloc(2))",
    "triv(Z/4, Z/4/(2))",
    "triv(Zloc(2), Frac)",
    "triv(Zloc(2), free(1) + Zloc(2)/(2))",
    "triv(Z/4, free(2)/rel [[2, 0], [0, 2]])",
)

EXTRA_FINITE_RINGS: Tuple[str, ...] = (
    "F4",
    "F8",
    "F9",
    "F2[x]/(x^2)",
    "F2[x]/(x^3)",
    "F3[x]/(x^2)",
    "Z/4 x Z/3",
    "F2[x,y]/(x^2,x*y,y^2)",
)

# local rings and products up to order 64 beyond Z/n, for the lattice sweeps
ARITHMETICAL_EXTRAS: Tuple[str, ...] = EXTRA_FINITE_RINGS + (
    "F2[x]/(x^2) x Z/3",
    "Z/2 x Z/2 x Z/2",
    "F2[x,y]/(x^2,y^2)",
    "F2[x,y]/(x^2,x*y,y^3)",
    "F3[x,y]/(x^2,x*y,y^2)",
    "F2[x]/(x^4)",
    "Z/9 x Z/2",
)

CHAIN_RING_EXTRAS: Tuple[str, ...] = (
    "F4",
    "F8",
    "F9",
    "F2[x]/(x^2)",
    "F2[x]/(x^3)",
    "F2[x]/(x^4)",
    "F2[x]/(x^5)",
    "F2[x]/(x^6)",
    "F3[x]/(x^2)",
    "F3[x]/(x^3)",
    "F5[x]/(x^2)",
    "F7[x]/(x^2)",
)

DVR_BASES: Tuple[str, ...] = ("Zloc(2)", "Zloc(3)", "Floc(2)")


def zmod_range(low: int, high: int) -> List[str]:
    return [f"Z/{n}" for n in range(low, high + 1)]


def _bounded(expressions: Sequence[str], max_order: int) -> List[str]:
    return [e for e in expressions if ring_from_text(e).order <= max_order]


@lru_cache(maxsize=None)
def finite_catalog(max_order: int = 32) -> Tuple[str, ...]:
    """Z/n for 2 <= n <= max_order plus the extra finite rings of bounded order."""
    return tuple(zmod_range(2, max_order) + _bounded(EXTRA_FINITE_RINGS, max_order))


@lru_cache(maxsize=None)
def arithmetical_catalog(max_order: int = 64) -> Tuple[str, ...]:
    return tuple(zmod_range(2, max_order) + _bounded(ARITHMETICAL_EXTRAS, max_order))


def _is_prime_power(n: int) -> bool:
    from sympy import factorint

    return len(factorint(n)) == 1


@lru_cache(maxsize=None)
def chain_ring_catalog(max_order: int = 64) -> Tuple[str, ...]:
    """Finite chain rings: Z/p^n and truncated polynomial rings, fields included."""
    zmods = [f"Z/{n}" for n in range(2, max_order + 1) if _is_prime_power(n)]
    return tuple(zmods + _bounded(CHAIN_RING_EXTRAS, max_order))


def rings(expressions: Sequence[str]) -> List[Tuple[str, Ring]]:
    return [(e, ring_from_text(e)) for e in expressions]


# ============================
# RANDOM INSTANCES
# ============================

_PRIMES = (2, 3, 5, 7)
_FIELD_SIZES = (2, 3, 4, 5, 7, 8, 9)


def _monic_relation(rng: np.random.Generator, p: int) -> BinOp:
    degree = int(rng.integers(1, 4))
    node = Pow(Var("x"), degree) if degree > 1 else Var("x")
    for k in range(degree - 1, -1, -1):
        c = int(rng.integers(0, p))
        if not c:
            continue
        if k == 0:
            term = Num(c)
        else:
            power = Pow(Var("x"), k) if k > 1 else Var("x")
            term = power if c == 1 else BinOp("*", Num(c), power)
        node = BinOp("+", node, term)
    return node


def random_ring_ast(rng: np.random.Generator, depth: int = 2) -> RingAst:
    """Random well-formed ring tree; every tree it returns builds without error."""
    kinds = ["zmod", "galois", "poly", "zloc", "floc", "frac", "triv_finite", "triv_dvr"]
    if depth > 0:
        kinds.append("product")
    kind = kinds[int(rng.integers(0, len(kinds)))]
    if kind == "zmod":
        return ZModExpr(int(rng.integers(2, 31)))
    if kind == "galois":
        return GaloisExpr(int(rng.choice(_FIELD_SIZES)))
    if kind == "poly":
        p = int(rng.choice(_PRIMES[:2]))
        return PolyExpr(p, ("x",), (_monic_relation(rng, p),))
    if kind == "zloc":
        return ZlocExpr(int(rng.choice(_PRIMES)))
    if kind == "floc":
        return FlocExpr(int(rng.choice(_FIELD_SIZES)))
    if kind == "frac":
        inner = ZlocExpr(int(rng.choice(_PRIMES))) if rng.random() < 0.5 else FlocExpr(int(rng.choice(_FIELD_SIZES)))
        return FracExpr(inner)
    if kind == "triv_finite":
        n = int(rng.choice((4, 6, 8, 9, 12)))
        base = ZModExpr(n)
        if rng.random() < 0.5:
            divisor = next(d for d in range(2, n) if n % d == 0)
            return TrivExpr(base, QuotientModExpr(base, (Num(divisor),)))
        return TrivExpr(base, QuotientModExpr(base, ()))
    if kind == "triv_dvr":
        base = ZlocExpr(int(rng.choice(_PRIMES)))
        options = [FracModExpr(), FreeModExpr(1), QuotientModExpr(base, (Num(base.p),))]
        count = int(rng.integers(1, 3))
        parts = tuple(options[int(rng.integers(0, len(options)))] for _ in range(count))
        return TrivExpr(base, parts[0] if count == 1 else SumModExpr(parts))
    count = int(rng.integers(1, 4))
    return ProductExpr(tuple(random_ring_ast(rng, depth - 1) for _ in range(count)))


def random_relation_matrix(ring: Ring, rng: np.random.Generator, rows: int, columns: int) -> Tuple[Tuple, ...]:
    items = ring.elements(bound=ring.order)
    return tuple(
        tuple(items[int(rng.integers(0, len(items)))] for _ in range(columns))
        for _ in range(rows)
    )
