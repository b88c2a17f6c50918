#!/usr/bin/env python3
"""
Tests for expression printing and parsing
"""

from fractions import Fraction

import pytest

from src.errors import GrammarError
from src.grammar import format_expr, parse_expr, parse_scalar, parse_scalar_list
from src.symalg import ExactScalar, ExpPoly, I, VarSet

PQ = VarSet(("p", "q"))
ETA_Q = VarSet(("eta", "q"))


@pytest.mark.fast
def test_canonical_text():
    f = ExpPoly.variable(PQ, "p") * ExpPoly.exponential(PQ, {"q": 1}) \
        + ExpPoly.exponential(PQ, {"q": 1}, coeff=ExactScalar(0, Fraction(-1, 2)))
    assert format_expr(f) == "p*exp(q) + (-1/2 i)*exp(q)"
    assert format_expr(ExpPoly.zero(PQ)) == "0"
    assert format_expr(ExpPoly.monomial(PQ, {"p": 2}, -3) + 1) == "-3*p^2 + 1"


@pytest.mark.fast
def test_exponent_with_imaginary_frequency():
    f = ExpPoly.exponential(ETA_Q, {"eta": ExactScalar(0, Fraction(-1, 2)), "q": 1})
    assert format_expr(f) == "exp(-1/2 i*eta + q)"
    assert parse_expr("exp(q - 1/2 i*eta)", ETA_Q) == f


@pytest.mark.fast
def test_parse_arithmetic():
    f = parse_expr("2*p^2 - q/3 + (p + 1)*(p - 1)", PQ)
    expected = ExpPoly.monomial(PQ, {"p": 2}, 3) - ExpPoly.monomial(PQ, {"q": 1}, Fraction(1, 3)) - 1
    assert f == expected
    assert parse_expr("i*i", PQ) == -1


@pytest.mark.fast
@pytest.mark.parametrize("text", [
    "p*exp(q) + (-1/2 i)*exp(q)",
    "(1/2 + 1/3 i)*p^2*q*exp(2*p - q + 1/4 i)",
    "-exp(-q) + 7",
])
def test_printed_text_parses_back(text):
    f = parse_expr(text, PQ)
    assert parse_expr(format_expr(f), PQ) == f


@pytest.mark.fast
@pytest.mark.parametrize("text", ["p +", "z*p", "exp(p^2)", "exp(exp(p))", "1/0", "p $ q", ""])
def test_malformed_text_is_rejected(text):
    with pytest.raises(GrammarError):
        parse_expr(text, PQ)


@pytest.mark.fast
def test_scalars():
    assert parse_scalar("-1/2") == Fraction(-1, 2)
    assert parse_scalar_list("1, -1/2, i") == [ExactScalar(1), ExactScalar(Fraction(-1, 2)), I]
    with pytest.raises(GrammarError):
        parse_scalar("p")
    with pytest.raises(GrammarError):
        parse_scalar_list("1,,2")
