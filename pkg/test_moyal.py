#!/usr/bin/env python3
"""
Tests for the Poisson bracket, the truncated Moyal product and left star operators
"""

from fractions import Fraction

import pytest

from src.diffop import apply
from src.errors import UnsupportedClassError, UsageError
from src.grammar import format_expr, parse_expr
from src.moyal import (FACTORIAL, RECIPROCAL, PoissonStructure, associator_coefficient, associator_coefficients,
                       exponential_star, left_star_operator, p_r, poisson, series_bound, star, star_coefficient,
                       star_commutator_check)
from src.orbits import make_orbit
from src.symalg import ExactScalar, ExpPoly, I, VarSet

PQ = VarSet(("p", "q"))
STD = PoissonStructure.standard(PQ)


def expr(text):
    return parse_expr(text, PQ)


@pytest.mark.fast
def test_poisson_sign_convention():
    assert poisson(expr("p"), expr("q"), STD) == 1
    assert poisson(expr("q"), expr("p"), STD) == -1
    assert poisson(expr("p"), expr("exp(q)"), STD) == expr("exp(q)")


@pytest.mark.fast
def test_star_of_momentum_and_exponential():
    result = star(expr("p"), expr("exp(q)"), STD)
    assert format_expr(result.value) == "p*exp(q) + (-1/2 i)*exp(q)"
    assert result.exact
    assert result.bound == 1


@pytest.mark.fast
def test_star_commutator_of_canonical_pair():
    h = ExactScalar(Fraction(1, 3))
    pq = star(expr("p"), expr("q"), STD, h).value
    qp = star(expr("q"), expr("p"), STD, h).value
    assert pq - qp == -I * h


@pytest.mark.fast
def test_series_bound():
    assert series_bound(expr("p^2"), expr("q^3"), STD) == 2
    assert series_bound(expr("exp(p)"), expr("exp(q)"), STD) is None
    assert p_r(expr("p^2"), expr("q^3"), STD, 3).is_zero()
    assert not star(expr("exp(p)"), expr("exp(q)"), STD, order=4).exact


@pytest.mark.fast
def test_exponential_coefficients():
    e_pq = ExpPoly.exponential(PQ, {"p": 1, "q": 1})
    assert star_coefficient(expr("exp(p)"), expr("exp(q)"), STD, 3) == e_pq.scale(ExactScalar(0, Fraction(1, 48)))
    closed = exponential_star((1, 0), (0, 1), STD)
    assert closed == ExpPoly.exponential(PQ, {"p": 1, "q": 1}, const=ExactScalar(0, Fraction(-1, 2)))


@pytest.mark.fast
def test_associativity_through_h3():
    f, g, u = expr("exp(p)"), expr("exp(q)"), expr("exp(p + q)")
    for k in range(4):
        assert associator_coefficient(f, g, u, STD, k).is_zero()
    assert associator_coefficient(expr("p^2*q"), expr("q^2 + p"), expr("p*q*exp(q)"), STD, 3).is_zero()
    assert not associator_coefficient(f, g, u, STD, 3, RECIPROCAL).is_zero()


@pytest.mark.fast
def test_batched_associator_matches_nested_coefficients():
    f, g, u = expr("p^2*exp(q)"), expr("q - i*p"), expr("p*q^2 + 3")
    for variant in (FACTORIAL, RECIPROCAL):
        batched = associator_coefficients(f, g, u, STD, 3, variant)
        assert len(batched) == 4
        for k, value in enumerate(batched):
            nested = ExpPoly.zero(PQ)
            for a in range(k + 1):
                nested = nested + star_coefficient(star_coefficient(f, g, STD, a, variant), u, STD, k - a, variant)
                nested = nested - star_coefficient(f, star_coefficient(g, u, STD, a, variant), STD, k - a, variant)
            assert value == nested
    with pytest.raises(UsageError):
        associator_coefficients(f, g, u, STD, -1)


@pytest.mark.fast
@pytest.mark.parametrize("f_text, u_text", [
    ("p^2 + q", "p*q^2"),
    ("p*exp(q)", "p^2 - 3*q"),
    ("exp(2*p - q)", "q^2"),
])
def test_left_star_operator_matches_product(f_text, u_text):
    f, u = expr(f_text), expr(u_text)
    h = ExactScalar(2)
    op = left_star_operator(f, STD, h)
    expected = star(f, u, STD, h, order=8)
    assert expected.exact
    assert apply(op, u) == expected.value.scale(I / h)


@pytest.mark.fast
def test_reciprocal_operator_needs_polynomial_symbol():
    assert not left_star_operator(expr("p^2"), STD, 1, RECIPROCAL).is_zero()
    with pytest.raises(UnsupportedClassError):
        left_star_operator(expr("exp(q)"), STD, 1, RECIPROCAL)


@pytest.mark.fast
@pytest.mark.parametrize("algebra, name, lam", [
    ("affR", "upper", None),
    ("affR", "lower", None),
    ("sl2R", "hyperboloid", "1/2"),
    ("sl2R", "twofold_upper", "1"),
])
def test_star_commutators_reproduce_brackets(algebra, name, lam):
    report = star_commutator_check(algebra, make_orbit(algebra, name, lam=lam), h="1/2")
    assert report.passed, [c.to_dict() for c in report.cases if c.failed]


@pytest.mark.fast
def test_invalid_structures():
    with pytest.raises(UsageError):
        PoissonStructure(PQ, ((0, 0), (0, 0)))
    with pytest.raises(UsageError):
        PoissonStructure(PQ, ((0, 1), (1, 0)))
    with pytest.raises(UsageError):
        star(expr("p"), expr("q"), STD, order=0)
