"""
polynomials.py
Dense univariate polynomials over a finite coefficient field

Polynomials are tuples of coefficients in ascending degree order with no
trailing zeros; the zero polynomial is ``()``. The coefficient field is
any finite ``Ring`` that is a field (Z/p or GF(p^k) as a polynomial
quotient). Used by the F_q[x]_(x) family, where coefficients may come
from a non-prime field and ``sympy.polys.galoistools`` does not apply.
"""

from __future__ import annotations

from typing import Callable, Sequence, Tuple

from rings.core import Element, Ring

Poly = Tuple[Element, ...]


def strip(F: Ring, coefficients: Sequence[Element]) -> Poly:
    coefficients = list(coefficients)
    while coefficients and coefficients[-1] == F.zero:
        coefficients.pop()
    return tuple(coefficients)


def degree(f: Poly) -> int:
    return len(f) - 1


def constant(F: Ring, c: Element) -> Poly:
    return strip(F, (c,))


def add(F: Ring, f: Poly, g: Poly) -> Poly:
    n = max(len(f), len(g))
    return strip(F, [
        F.add(f[i] if i < len(f) else F.zero, g[i] if i < len(g) else F.zero)
        for i in range(n)
    ])


def neg(F: Ring, f: Poly) -> Poly:
    return tuple(F.neg(c) for c in f)


def sub(F: Ring, f: Poly, g: Poly) -> Poly:
    return add(F, f, neg(F, g))


def scale(F: Ring, c: Element, f: Poly) -> Poly:
    return strip(F, [F.mul(c, a) for a in f])


def mul(F: Ring, f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return ()
    out = [F.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == F.zero:
            continue
        for j, b in enumerate(g):
            out[i + j] = F.add(out[i + j], F.mul(a, b))
    return strip(F, out)


def divmod_poly(F: Ring, f: Poly, g: Poly) -> Tuple[Poly, Poly]:
    """Euclidean division; ``g`` must be nonzero."""
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inverse = F.inverse(g[-1])
    remainder = list(f)
    quotient = [F.zero] * max(len(f) - len(g) + 1, 0)
    while len(remainder) >= len(g) and remainder:
        shift = len(remainder) - len(g)
        factor = F.mul(remainder[-1], lead_inverse)
        quotient[shift] = factor
        for i, b in enumerate(g):
            remainder[shift + i] = F.sub(remainder[shift + i], F.mul(factor, b))
        remainder = list(strip(F, remainder))
    return strip(F, quotient), strip(F, remainder)


def monic(F: Ring, f: Poly) -> Poly:
    if not f:
        return f
    return scale(F, F.inverse(f[-1]), f)


def gcd(F: Ring, f: Poly, g: Poly) -> Poly:
    """Monic greatest common divisor (``()`` only for gcd(0, 0))."""
    while g:
        f, g = g, divmod_poly(F, f, g)[1]
    return monic(F, f)


def valuation_at_zero(F: Ring, f: Poly) -> int:
    """Order of vanishing at x = 0; the zero polynomial is not accepted."""
    for i, c in enumerate(f):
        if c != F.zero:
            return i
    raise ValueError("the zero polynomial has infinite order at 0")


def truncate(F: Ring, f: Poly, k: int) -> Poly:
    return strip(F, f[:k])


def inverse_mod_power(F: Ring, f: Poly, k: int) -> Poly:
    """Power-series inverse of ``f`` modulo x^k; needs f(0) != 0."""
    inverse_constant = F.inverse(f[0])
    result = [F.zero] * k
    for n in range(k):
        total = F.one if n == 0 else F.zero
        for i in range(1, min(n, len(f) - 1) + 1):
            total = F.sub(total, F.mul(f[i], result[n - i]))
        result[n] = F.mul(total, inverse_constant)
    return strip(F, result)


def format_poly(
    coefficients: Sequence,
    var: str,
    is_zero: Callable[[object], bool],
    is_one: Callable[[object], bool],
    coefficient_str: Callable[[object], str] = str,
) -> str:
    """Render ``c_d*x^d + ... + c_0`` with unit coefficients and exponents elided."""
    terms = []
    for power in range(len(coefficients) - 1, -1, -1):
        c = coefficients[power]
        if is_zero(c):
            continue
        monomial = "" if power == 0 else (var if power == 1 else f"{var}^{power}")
        text = coefficient_str(c)
        if "+" in text or (" " in text):
            text = f"({text})"
        if not monomial:
            terms.append(text)
        elif is_one(c):
            terms.append(monomial)
        else:
            terms.append(f"{text}*{monomial}")
    return "+".join(terms) if terms else "0"
