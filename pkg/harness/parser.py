"""
parser.py
Ring, module and element expressions for the ringlab command line

Grammar (whitespace insignificant):

    ring    := factor { "x" factor }
    factor  := "Z/" int | "F" int | "F" int "[" vars "]" "/(" elems ")"
             | "Zloc(" int ")" | "Floc(" int ")" | "Frac(" ring ")"
             | "triv(" ring "," module ")" | "prod(" ring { "," ring } ")"
             | "(" ring ")"
    module  := term { "+" term }
    term    := "free(" int ")" [ "/rel" matrix ] | "Frac" | ring [ "/(" elems ")" ]
    matrix  := "[" "[" elems "]" { "," "[" elems "]" } "]"
    elem    := sum of products of powers over integers, variables and
               "(" elem "," elem ... ")" tuples

Parsing gives a syntax tree with source spans; ``build_ring`` and
``build_module`` turn trees into descriptors, reporting semantic problems
(bad modulus, non-monic polynomial, module over another base) against the
span of the offending node. ``format_ring`` prints the canonical text, and
parsing it again gives back an equal tree.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from modules.dvr_modules import DvrFormalSumModule
from modules.presented import FinitelyPresentedModule
from rings.core import ConstructionError, RepresentationError, Ring, RingLabError
from rings.descriptors import (
    CyclicTorsion,
    DvrFormalSum,
    DVR_DESCRIPTORS,
    FinitePresentation,
    FractionField,
    FractionFieldOf,
    Free,
    LocalizedIntegers,
    LocalizedPolynomials,
    MonomialQuotient,
    PolyQuotient,
    Product,
    TrivialExtension,
    ZMod,
    cyclic_quotient,
    direct_sum,
)
from rings.factory import construct_module, construct_ring
from rings.finite import galois_field

logger = logging.getLogger(__name__)

Span = Tuple[int, int]


# ============================
# ERRORS
# ============================

class ParseError(RingLabError):
    """Syntax error at a source span; ``render`` draws a caret line under it."""

    def __init__(self, message: str, text: str = "", span: Span = (0, 0)):
        super().__init__(message)
        self.message = message
        self.text = text
        self.span = span

    def render(self) -> str:
        start, end = self.span
        width = max(1, end - start)
        return f"error: {self.message}\n  {self.text}\n  {' ' * start}{'^' * width}"

    def __str__(self) -> str:
        return self.render() if self.text else self.message


class SemanticError(ParseError):
    """Well-formed text describing an invalid object."""


# ============================
# SYNTAX TREES
# ============================

# --- elements ---------------------------------------------------------

@dataclass(frozen=True)
class Num:
    value: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Var:
    name: str
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Neg:
    operand: "ElemAst"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "ElemAst"
    right: "ElemAst"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class Pow:
    base: "ElemAst"
    exponent: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class TupleLit:
    items: Tuple["ElemAst", ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


ElemAst = Union[Num, Var, Neg, BinOp, Pow, TupleLit]


# --- rings --------------------------------------------------------------

@dataclass(frozen=True)
class ZModExpr:
    n: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class GaloisExpr:
    q: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class PolyExpr:
    p: int
    variables: Tuple[str, ...]
    relations: Tuple[ElemAst, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class ProductExpr:
    factors: Tuple["RingAst", ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class ZlocExpr:
    p: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FlocExpr:
    q: int
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FracExpr:
    ring: "RingAst"
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class TrivExpr:
    base: "RingAst"
    module: "ModuleAst"
    span: Span = field(default=(0, 0), compare=False, repr=False)


RingAst = Union[ZModExpr, GaloisExpr, PolyExpr, ProductExpr, ZlocExpr, FlocExpr, FracExpr, TrivExpr]


# --- modules ------------------------------------------------------------

@dataclass(frozen=True)
class QuotientModExpr:
    """ring/(g1, ..., gk); no generators means the ring itself."""
    ring: RingAst
    generators: Tuple[ElemAst, ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FreeModExpr:
    rank: int
    relations: Optional[Tuple[Tuple[ElemAst, ...], ...]] = None
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class FracModExpr:
    span: Span = field(default=(0, 0), compare=False, repr=False)


@dataclass(frozen=True)
class SumModExpr:
    parts: Tuple["ModuleAst", ...]
    span: Span = field(default=(0, 0), compare=False, repr=False)


ModuleAst = Union[QuotientModExpr, FreeModExpr, FracModExpr, SumModExpr]


# ============================
# TOKENIZER
# ============================

@dataclass(frozen=True)
class Token:
    kind: str   # "int", "ident", "sym", "end"
    text: str
    start: int
    end: int


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")
_SYMBOLS = set("/()[],+-*^")


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_RE.match(text, position)
        if match is None or match.end() == position:
            break
        number, ident, symbol = match.groups()
        if number is not None:
            tokens.append(Token("int", number, match.start(1), match.end(1)))
        elif ident is not None:
            tokens.append(Token("ident", ident, match.start(2), match.end(2)))
        elif symbol is not None:
            if symbol not in _SYMBOLS:
                raise ParseError(f"unexpected character {symbol!r}", text, (match.start(3), match.end(3)))
            tokens.append(Token("sym", symbol, match.start(3), match.end(3)))
        position = match.end()
    tokens.append(Token("end", "", len(text), len(text)))
    return tokens


_FIELD_NAME = re.compile(r"F(\d+)$")


# ============================
# PARSER
# ============================

class Parser:
    """Recursive-descent parser over one token list."""

    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    # --- token helpers -----------------------------------------------
    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def peek(self, offset: int = 1) -> Token:
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def at(self, kind: str, text: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (text is None or token.text == text)

    def advance(self) -> Token:
        token = self.current
        self.index += 1
        return token

    def error(self, message: str, token: Optional[Token] = None) -> ParseError:
        token = token or self.current
        found = "end of input" if token.kind == "end" else repr(token.text)
        return ParseError(f"{message}, found {found}", self.text, (token.start, max(token.end, token.start + 1)))

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        if not self.at(kind, text):
            raise self.error(f"expected {text or kind}")
        return self.advance()

    def expect_int(self) -> int:
        return int(self.expect("int").text)

    def finish(self) -> None:
        if not self.at("end"):
            raise self.error("unexpected trailing input")

    def span_from(self, start: int) -> Span:
        return start, self.tokens[self.index - 1].end

    # --- rings -------------------------------------------------------
    def ring(self) -> RingAst:
        start = self.current.start
        factors = [self.ring_factor()]
        while self.at("ident", "x"):
            self.advance()
            factors.append(self.ring_factor())
        if len(factors) == 1:
            return factors[0]
        return ProductExpr(tuple(factors), self.span_from(start))

    def ring_factor(self) -> RingAst:
        token = self.current
        start = token.start
        if self.at("sym", "("):
            self.advance()
            inner = self.ring()
            self.expect("sym", ")")
            return inner
        if token.kind != "ident":
            raise self.error("expected a ring")
        name = token.text
        if name == "Z":
            self.advance()
            self.expect("sym", "/")
            return ZModExpr(self.expect_int(), self.span_from(start))
        if name in ("Zloc", "Floc"):
            self.advance()
            self.expect("sym", "(")
            value = self.expect_int()
            self.expect("sym", ")")
            node = ZlocExpr if name == "Zloc" else FlocExpr
            return node(value, self.span_from(start))
        if name == "Frac":
            self.advance()
            self.expect("sym", "(")
            inner = self.ring()
            self.expect("sym", ")")
            return FracExpr(inner, self.span_from(start))
        if name == "triv":
            self.advance()
            self.expect("sym", "(")
            base = self.ring()
            self.expect("sym", ",")
            module = self.module()
            self.expect("sym", ")")
            return TrivExpr(base, module, self.span_from(start))
        if name == "prod":
            self.advance()
            self.expect("sym", "(")
            factors = [self.ring()]
            while self.at("sym", ","):
                self.advance()
                factors.append(self.ring())
            self.expect("sym", ")")
            return ProductExpr(tuple(factors), self.span_from(start))
        match = _FIELD_NAME.match(name)
        if match:
            self.advance()
            q = int(match.group(1))
            if not self.at("sym", "["):
                return GaloisExpr(q, self.span_from(start))
            self.advance()
            variables = [self.expect("ident").text]
            while self.at("sym", ","):
                self.advance()
                variables.append(self.expect("ident").text)
            self.expect("sym", "]")
            self.expect("sym", "/")
            self.expect("sym", "(")
            relations = self.elements_until(")")
            return PolyExpr(q, tuple(variables), relations, self.span_from(start))
        raise self.error("expected a ring", token)

    # --- modules -----------------------------------------------------
    def module(self) -> ModuleAst:
        start = self.current.start
        parts = [self.module_term()]
        while self.at("sym", "+"):
            self.advance()
            parts.append(self.module_term())
        if len(parts) == 1:
            return parts[0]
        return SumModExpr(tuple(parts), self.span_from(start))

    def module_term(self) -> ModuleAst:
        token = self.current
        start = token.start
        if self.at("ident", "free"):
            self.advance()
            self.expect("sym", "(")
            rank = self.expect_int()
            self.expect("sym", ")")
            relations = None
            if self.at("sym", "/") and self.peek().kind == "ident" and self.peek().text == "rel":
                self.advance()
                self.advance()
                relations = self.matrix()
            return FreeModExpr(rank, relations, self.span_from(start))
        if self.at("ident", "Frac") and not (self.peek().kind == "sym" and self.peek().text == "("):
            self.advance()
            return FracModExpr(self.span_from(start))
        ring = self.ring()
        generators: Tuple[ElemAst, ...] = ()
        if self.at("sym", "/") and self.peek().kind == "sym" and self.peek().text == "(":
            self.advance()
            self.advance()
            generators = self.elements_until(")")
        return QuotientModExpr(ring, generators, self.span_from(start))

    def matrix(self) -> Tuple[Tuple[ElemAst, ...], ...]:
        self.expect("sym", "[")
        rows = []
        while True:
            self.expect("sym", "[")
            rows.append(self.elements_until("]"))
            if not self.at("sym", ","):
                break
            self.advance()
        self.expect("sym", "]")
        return tuple(rows)

    # --- elements ----------------------------------------------------
    def elements_until(self, closing: str) -> Tuple[ElemAst, ...]:
        items = [self.element()]
        while self.at("sym", ","):
            self.advance()
            items.append(self.element())
        self.expect("sym", closing)
        return tuple(items)

    def element(self) -> ElemAst:
        start = self.current.start
        node = self.term()
        while self.at("sym", "+") or self.at("sym", "-"):
            op = self.advance().text
            node = BinOp(op, node, self.term(), self.span_from(start))
        return node

    def term(self) -> ElemAst:
        start = self.current.start
        node = self.unary()
        while self.at("sym", "*") or self.at("sym", "/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary(), self.span_from(start))
        return node

    def unary(self) -> ElemAst:
        if self.at("sym", "-"):
            start = self.advance().start
            return Neg(self.unary(), self.span_from(start))
        return self.power()

    def power(self) -> ElemAst:
        start = self.current.start
        node = self.primary()
        while self.at("sym", "^"):
            self.advance()
            node = Pow(node, self.expect_int(), self.span_from(start))
        return node

    def primary(self) -> ElemAst:
        token = self.current
        if token.kind == "int":
            self.advance()
            return Num(int(token.text), (token.start, token.end))
        if token.kind == "ident":
            self.advance()
            return Var(token.text, (token.start, token.end))
        if self.at("sym", "("):
            self.advance()
            items = [self.element()]
            while self.at("sym", ","):
                self.advance()
                items.append(self.element())
            self.expect("sym", ")")
            if len(items) == 1:
                return items[0]
            return TupleLit(tuple(items), self.span_from(token.start))
        raise self.error("expected an element")


def parse_ring_syntax(text: str) -> RingAst:
    parser = Parser(text)
    ast = parser.ring()
    parser.finish()
    return ast


def parse_ring_expr(text: str) -> RingAst:
    """Syntax tree of a ring expression; semantic errors are raised here too."""
    ast = parse_ring_syntax(text)
    build_ring(ast, text)
    return ast


def parse_module_expr(text: str) -> ModuleAst:
    parser = Parser(text)
    ast = parser.module()
    parser.finish()
    return ast


def parse_element_expr(text: str) -> ElemAst:
    parser = Parser(text)
    ast = parser.element()
    parser.finish()
    return ast


# ============================
# PRINTER
# ============================

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}


def _precedence(node: ElemAst) -> int:
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def format_element_ast(node: ElemAst) -> str:
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, TupleLit):
        return "(" + ", ".join(format_element_ast(i) for i in node.items) + ")"
    if isinstance(node, Neg):
        inner = format_element_ast(node.operand)
        return f"-({inner})" if _precedence(node.operand) < 3 else f"-{inner}"
    if isinstance(node, Pow):
        base = format_element_ast(node.base)
        if _precedence(node.base) < 4:
            base = f"({base})"
        return f"{base}^{node.exponent}"
    level = _PRECEDENCE[node.op]
    left = format_element_ast(node.left)
    right = format_element_ast(node.right)
    if _precedence(node.left) < level:
        left = f"({left})"
    # operators are left-associative
    if _precedence(node.right) <= level:
        right = f"({right})"
    return f"{left}{node.op}{right}"


def _element_list(items) -> str:
    return ", ".join(format_element_ast(i) for i in items)


def format_ring(ast: RingAst) -> str:
    """Canonical text of a ring tree."""
    if isinstance(ast, ZModExpr):
        return f"Z/{ast.n}"
    if isinstance(ast, GaloisExpr):
        return f"F{ast.q}"
    if isinstance(ast, PolyExpr):
        relations = ",".join(format_element_ast(r) for r in ast.relations)
        return f"F{ast.p}[{','.join(ast.variables)}]/({relations})"
    if isinstance(ast, ProductExpr):
        if len(ast.factors) == 1:
            return f"prod({format_ring(ast.factors[0])})"
        return " x ".join(_grouped(f) for f in ast.factors)
    if isinstance(ast, ZlocExpr):
        return f"Zloc({ast.p})"
    if isinstance(ast, FlocExpr):
        return f"Floc({ast.q})"
    if isinstance(ast, FracExpr):
        return f"Frac({format_ring(ast.ring)})"
    if isinstance(ast, TrivExpr):
        return f"triv({format_ring(ast.base)}, {format_module(ast.module)})"
    raise TypeError(f"not a ring tree: {ast!r}")


def _grouped(ast: RingAst) -> str:
    text = format_ring(ast)
    if isinstance(ast, ProductExpr) and len(ast.factors) > 1:
        return f"({text})"
    return text


def format_module(ast: ModuleAst) -> str:
    if isinstance(ast, FracModExpr):
        return "Frac"
    if isinstance(ast, FreeModExpr):
        text = f"free({ast.rank})"
        if ast.relations is not None:
            rows = ", ".join(f"[{_element_list(row)}]" for row in ast.relations)
            text += f"/rel [{rows}]"
        return text
    if isinstance(ast, SumModExpr):
        return " + ".join(format_module(p) for p in ast.parts)
    if isinstance(ast, QuotientModExpr):
        ring = _grouped(ast.ring)
        if not ast.generators:
            return ring
        return f"{ring}/({_element_list(ast.generators)})"
    raise TypeError(f"not a module tree: {ast!r}")


# ============================
# SEMANTICS
# ============================

def _semantic(message: str, text: str, span: Span) -> SemanticError:
    return SemanticError(message, text, span)


def build_ring(ast: RingAst, text: str = ""):
    """Descriptor of a ring tree."""
    try:
        return _build_ring(ast, text)
    except SemanticError:
        raise
    except (ConstructionError, RepresentationError) as e:
        raise _semantic(str(e), text, ast.span) from e


def _build_ring(ast: RingAst, text: str):
    try:
        if isinstance(ast, ZModExpr):
            return ZMod(ast.n)
        if isinstance(ast, GaloisExpr):
            return galois_field(ast.q)
        if isinstance(ast, ZlocExpr):
            return LocalizedIntegers(ast.p)
        if isinstance(ast, FlocExpr):
            return LocalizedPolynomials(ast.q)
    except ConstructionError as e:
        raise _semantic(str(e), text, ast.span) from e
    if isinstance(ast, PolyExpr):
        return _build_polynomial_quotient(ast, text)
    if isinstance(ast, ProductExpr):
        return Product(tuple(build_ring(f, text) for f in ast.factors))
    if isinstance(ast, FracExpr):
        inner = build_ring(ast.ring, text)
        if not isinstance(inner, DVR_DESCRIPTORS):
            raise _semantic("Frac(...) needs Zloc(p) or Floc(q)", text, ast.span)
        return FractionFieldOf(inner)
    if isinstance(ast, TrivExpr):
        base = build_ring(ast.base, text)
        module = build_module(ast.module, base, text)
        try:
            descriptor = TrivialExtension(base, module)
            construct_ring(descriptor)
        except ConstructionError as e:
            raise _semantic(str(e), text, ast.span) from e
        return descriptor
    raise _semantic("unsupported ring expression", text, ast.span)


def _build_polynomial_quotient(ast: PolyExpr, text: str):
    from sympy import isprime

    if not isprime(ast.p):
        raise _semantic(f"polynomial quotients are supported over prime fields only, not F{ast.p}", text, ast.span)
    if len(set(ast.variables)) != len(ast.variables):
        raise _semantic("repeated variable name", text, ast.span)
    polys = [_poly_terms(r, ast.variables, ast.p, text) for r in ast.relations]
    try:
        if len(ast.variables) == 1 and len(polys) == 1:
            terms = polys[0]
            top = max((e[0] for e in terms), default=0)
            coefficients = tuple(terms.get((k,), 0) for k in range(top + 1))
            return PolyQuotient(ast.p, coefficients, ast.variables[0])
        monomials = []
        for relation, terms in zip(ast.relations, polys):
            if len(terms) != 1:
                raise _semantic("relations of a multivariate quotient must be monomials", text, relation.span)
            monomials.append(next(iter(terms)))
        return MonomialQuotient(ast.p, ast.variables, tuple(monomials))
    except ConstructionError as e:
        raise _semantic(str(e), text, ast.span) from e


def _poly_terms(node: ElemAst, variables: Tuple[str, ...], p: int, text: str) -> Dict[Tuple[int, ...], int]:
    """Sparse polynomial {exponents: coefficient mod p} of an element tree."""
    width = len(variables)

    def clean(terms):
        return {e: c % p for e, c in terms.items() if c % p}

    def times(s, t):
        out: Dict[Tuple[int, ...], int] = {}
        for e1, c1 in s.items():
            for e2, c2 in t.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return clean(out)

    if isinstance(node, Num):
        return clean({(0,) * width: node.value})
    if isinstance(node, Var):
        if node.name not in variables:
            raise _semantic(f"unknown variable {node.name!r}", text, node.span)
        return {tuple(1 if v == node.name else 0 for v in variables): 1}
    if isinstance(node, Neg):
        return clean({e: -c for e, c in _poly_terms(node.operand, variables, p, text).items()})
    if isinstance(node, Pow):
        base = _poly_terms(node.base, variables, p, text)
        result = clean({(0,) * width: 1})
        for _ in range(node.exponent):
            result = times(result, base)
        return result
    if isinstance(node, BinOp):
        left = _poly_terms(node.left, variables, p, text)
        right = _poly_terms(node.right, variables, p, text)
        if node.op == "*":
            return times(left, right)
        if node.op == "/":
            constant = right.get((0,) * width) if len(right) == 1 else None
            if not constant:
                raise _semantic("polynomials may only be divided by nonzero constants", text, node.span)
            return times(left, {(0,) * width: pow(constant, -1, p)})
        sign = 1 if node.op == "+" else -1
        out = dict(left)
        for e, c in right.items():
            out[e] = out.get(e, 0) + sign * c
        return clean(out)
    raise _semantic("tuples are not polynomials", text, node.span)


def build_module(ast: ModuleAst, base, text: str = ""):
    """Descriptor of a module tree over the ring descriptor ``base``."""
    if isinstance(base, DVR_DESCRIPTORS):
        return DvrFormalSum(base, tuple(_dvr_summands(ast, base, text)))
    if isinstance(base, FractionFieldOf):
        raise _semantic("modules over fraction fields are not supported", text, ast.span)
    parts = _finite_parts(ast, base, text)
    return parts[0] if len(parts) == 1 else direct_sum(*parts)


def _check_base(ast: QuotientModExpr, base, text: str) -> None:
    if build_ring(ast.ring, text) != base:
        raise _semantic(f"module over {format_ring(ast.ring)} does not match the base ring", text, ast.span)


def _finite_parts(ast: ModuleAst, base, text: str) -> List[FinitePresentation]:
    if isinstance(ast, SumModExpr):
        return [p for part in ast.parts for p in _finite_parts(part, base, text)]
    if isinstance(ast, FracModExpr):
        raise _semantic("Frac is a module over Zloc(p) or Floc(q) only", text, ast.span)
    ring = construct_ring(base)
    if isinstance(ast, FreeModExpr):
        if ast.relations is None:
            return [FinitePresentation(base, ast.rank, ())]
        rows = []
        for row in ast.relations:
            if len(row) != ast.rank:
                raise _semantic(f"relation rows must have {ast.rank} entries", text, ast.span)
            rows.append(tuple(evaluate_element(ring, e, text) for e in row))
        return [FinitePresentation(base, ast.rank, tuple(rows))]
    _check_base(ast, base, text)
    return [cyclic_quotient(base, *(evaluate_element(ring, g, text) for g in ast.generators))]


def _dvr_summands(ast: ModuleAst, base, text: str) -> list:
    if isinstance(ast, SumModExpr):
        return [s for part in ast.parts for s in _dvr_summands(part, base, text)]
    if isinstance(ast, FracModExpr):
        return [FractionField()]
    if isinstance(ast, FreeModExpr):
        if ast.relations is not None:
            raise _semantic("relation matrices are supported over finite rings only", text, ast.span)
        return [Free() for _ in range(ast.rank)]
    _check_base(ast, base, text)
    ring = construct_ring(base)
    values = [evaluate_element(ring, g, text) for g in ast.generators]
    nonzero = [ring.valuation(v) for v in values if v != ring.zero]
    if not nonzero:
        return [Free()]
    k = min(nonzero)
    if k == 0:
        raise _semantic("quotient by a unit is the zero module", text, ast.span)
    return [CyclicTorsion(int(k))]


# ============================
# ELEMENT EVALUATION
# ============================

def evaluate_element(target, node: ElemAst, text: str = ""):
    """Canonical payload of an element tree in a ring or a module."""
    if isinstance(target, (FinitelyPresentedModule, DvrFormalSumModule)):
        return _module_element(target, node, text)
    try:
        return _ring_element(target, node, text)
    except SemanticError:
        raise
    except RingLabError as e:
        raise _semantic(str(e), text, node.span) from e


def _ring_element(ring: Ring, node: ElemAst, text: str):
    if isinstance(node, Num):
        return ring.from_int(node.value)
    if isinstance(node, Var):
        names = ring.variables()
        if node.name not in names:
            known = ", ".join(sorted(names)) or "none"
            raise _semantic(f"unknown variable {node.name!r} in {ring.label} (known: {known})", text, node.span)
        return names[node.name]
    if isinstance(node, Neg):
        return ring.neg(_ring_element(ring, node.operand, text))
    if isinstance(node, Pow):
        return ring.power(_ring_element(ring, node.base, text), node.exponent)
    if isinstance(node, BinOp):
        left = _ring_element(ring, node.left, text)
        right = _ring_element(ring, node.right, text)
        if node.op == "+":
            return ring.add(left, right)
        if node.op == "-":
            return ring.sub(left, right)
        if node.op == "*":
            return ring.mul(left, right)
        return ring.divide_exact(left, right)
    return _tuple_element(ring, node, text)


def _tuple_element(ring: Ring, node: TupleLit, text: str):
    from extension.trivial import TrivialExtensionRing
    from rings.finite import ProductRing

    if isinstance(ring, ProductRing):
        if len(node.items) != len(ring.factors):
            raise _semantic(f"{ring.label} needs {len(ring.factors)} components", text, node.span)
        return tuple(evaluate_element(f, item, text) for f, item in zip(ring.factors, node.items))
    if isinstance(ring, TrivialExtensionRing):
        if len(node.items) != 2:
            raise _semantic("elements of a trivial extension are pairs (a, e)", text, node.span)
        return (
            evaluate_element(ring.base, node.items[0], text),
            evaluate_element(ring.module, node.items[1], text),
        )
    raise _semantic(f"tuple literal in {ring.label}", text, node.span)


def _module_element(module, node: ElemAst, text: str):
    if isinstance(module, DvrFormalSumModule):
        coordinate_rings = [module.field if isinstance(s, FractionField) else module.ring for s in module.summands]
    else:
        coordinate_rings = [module.ring] * module.rank
    if isinstance(node, TupleLit):
        items = node.items
    elif len(coordinate_rings) == 1:
        items = (node,)
    else:
        raise _semantic(f"elements of {module.label} are tuples of {len(coordinate_rings)} components", text, node.span)
    if len(items) != len(coordinate_rings):
        raise _semantic(f"{module.label} has {len(coordinate_rings)} components", text, node.span)
    vector = tuple(evaluate_element(r, item, text) for r, item in zip(coordinate_rings, items))
    try:
        return module.canonical(vector)
    except RingLabError as e:
        raise _semantic(str(e), text, node.span) from e


# ============================
# FRONT END
# ============================

def ring_from_text(text: str) -> Ring:
    return construct_ring(build_ring(parse_ring_syntax(text), text))


def module_from_text(text: str, ring: Ring):
    """Module over ``ring`` written in module syntax (``free(2)/rel [[2, 0]]``, ``Z/8/(2)``)."""
    ast = parse_module_expr(text)
    return construct_module(build_module(ast, ring.descriptor, text))


def element_from_text(target, text: str):
    return evaluate_element(target, parse_element_expr(text), text)


def matrix_from_text(ring: Ring, text: str) -> Tuple[Tuple, ...]:
    """Relation matrix ``[[2, 0], [0, 4]]`` with entries evaluated in ``ring``."""
    parser = Parser(text)
    rows = parser.matrix()
    parser.finish()
    if len({len(row) for row in rows}) > 1:
        raise ParseError("matrix rows have different lengths", text, (0, len(text)))
    return tuple(tuple(evaluate_element(ring, node, text) for node in row) for row in rows)
