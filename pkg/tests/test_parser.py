import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from harness.catalog import GOLDEN_CORPUS, random_ring_ast
from harness.parser import (
    ParseError,
    SemanticError,
    build_ring,
    element_from_text,
    format_ring,
    matrix_from_text,
    parse_ring_expr,
    parse_ring_syntax,
    ring_from_text,
)
from rings.descriptors import FinitePresentation, MonomialQuotient, PolyQuotient, Product, ZMod


@pytest.mark.parametrize("text", GOLDEN_CORPUS)
def test_golden_corpus_prints_back_unchanged(text):
    ast = parse_ring_syntax(text)
    assert format_ring(ast) == text
    assert parse_ring_syntax(format_ring(ast)) == ast
    build_ring(ast, text)


@settings(max_examples=500)
@given(st.integers(0, 2**32 - 1))
def test_random_trees_round_trip(seed):
    ast = random_ring_ast(np.random.default_rng(seed))
    text = format_ring(ast)
    assert parse_ring_syntax(text) == ast
    build_ring(ast, text)


def test_whitespace_is_insignificant():
    assert parse_ring_syntax("  Z / 4  x Z/3 ") == parse_ring_syntax("Z/4 x Z/3")


def test_descriptors():
    assert build_ring(parse_ring_syntax("Z/4 x Z/3")) == Product((ZMod(4), ZMod(3)))
    assert build_ring(parse_ring_syntax("F2[x]/(x^3)")) == PolyQuotient(2, (0, 0, 0, 1))
    assert build_ring(parse_ring_syntax("F2[x,y]/(x^2,x*y,y^2)")) == MonomialQuotient(
        2, ("x", "y"), ((2, 0), (1, 1), (0, 2))
    )


def test_triv_module_descriptor(ring):
    R = ring("triv(Z/4, free(2)/rel [[2, 0], [0, 2]])")
    assert R.descriptor.module == FinitePresentation(ZMod(4), 2, ((2, 0), (0, 2)))
    assert R.order == 16


def test_syntax_error_span():
    with pytest.raises(ParseError) as info:
        parse_ring_syntax("Z/")
    assert info.value.span == (2, 3)
    assert "expected int" in info.value.message
    assert info.value.render().splitlines()[-1] == "    ^"


def test_unexpected_character():
    with pytest.raises(ParseError, match="unexpected character"):
        parse_ring_syntax("Z/8 ? Z/3")


def test_trailing_input():
    with pytest.raises(ParseError, match="trailing"):
        parse_ring_syntax("Z/8 Z/3")


@pytest.mark.parametrize("text, fragment", [
    ("Z/1", "modulus"),
    ("F6", "prime power"),
    ("F3[x]/(2*x^2+1)", "monic"),
    ("F4[x]/(x^2)", "prime fields"),
    ("Frac(Z/4)", "Zloc"),
    ("triv(Z/4, Z/8/(2))", "does not match"),
    ("triv(Z/4, Z/4/(1))", "nonzero"),
])
def test_semantic_errors(text, fragment):
    with pytest.raises(SemanticError, match=fragment):
        parse_ring_expr(text)


def test_semantic_error_points_at_the_node():
    text = "Z/4 x Z/1"
    with pytest.raises(SemanticError) as info:
        parse_ring_expr(text)
    start, end = info.value.span
    assert text[start:end] == "Z/1"


def test_element_evaluation(ring):
    assert element_from_text(ring("Z/12"), "3*5 - 4") == 11
    assert element_from_text(ring("Z/4 x Z/3"), "(3, 2)") == (3, 2)
    f4 = ring("F4")
    assert element_from_text(f4, "x^2") == element_from_text(f4, "x + 1")


def test_unknown_variable(ring):
    with pytest.raises(SemanticError, match="unknown variable"):
        element_from_text(ring("Z/8"), "y")


def test_matrix_rows_must_agree(ring):
    R = ring("Z/8")
    assert matrix_from_text(R, "[[2, 4], [0, 12]]") == ((2, 4), (0, 4))
    with pytest.raises(ParseError, match="different lengths"):
        matrix_from_text(R, "[[2, 4], [0]]")


def test_ring_from_text_is_cached():
    assert ring_from_text("Z/12") is ring_from_text("Z / 12")
