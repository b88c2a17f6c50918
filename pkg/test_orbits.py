#!/usr/bin/env python3
"""
Tests for orbit classification, Darboux charts and the Kirillov form
"""

import math
from fractions import Fraction

import pytest

from src.errors import UsageError
from src.grammar import format_expr
from src.liealg import get_algebra
from src.orbits import (base_point, classify_orbit, darboux_chart, hamiltonian, kirillov_form,
                        lambda_quantized, make_orbit, on_orbit, verify_darboux)
from src.symalg import ExactScalar


def classify(algebra, coords):
    return classify_orbit(algebra, get_algebra(algebra).dual(coords))


@pytest.mark.fast
@pytest.mark.parametrize("algebra, coords, family", [
    ("affR", (3, 1), "affR_upper"),
    ("affR", (3, Fraction(-1, 2)), "affR_lower"),
    ("affR", (3, 0), "affR_point"),
    ("affC", (1, 2, 0, 0), "affC_point"),
    ("affC", (0, 0, 0, 1), "affC_punctured"),
    ("sl2R", (0, 2, 0), "sl2_hyperboloid"),
    ("sl2R", (0, 0, -2), "sl2_twofold_upper"),
    ("sl2R", (0, 0, 2), "sl2_twofold_lower"),
    ("sl2R", (2, 0, -2), "sl2_upper_cone"),
    ("sl2R", (-2, 0, 2), "sl2_lower_cone"),
    ("sl2R", (0, 0, 0), "sl2_origin"),
])
def test_classification(algebra, coords, family):
    assert classify(algebra, coords).family == family


@pytest.mark.fast
def test_sl2_lambda():
    assert classify("sl2R", (0, 1, 0)).lam == ExactScalar(Fraction(1, 2))
    assert classify("sl2R", (0, 0, -6)).lam == ExactScalar(3)
    irrational = classify("sl2R", (2, 2, 0)).lam
    assert isinstance(irrational, float)
    assert irrational == pytest.approx(math.sqrt(2))
    assert classify("sl2R", (0.0, 2.0, 1e-12)).family == "sl2_hyperboloid"


@pytest.mark.fast
def test_make_orbit():
    assert make_orbit("affR", "upper").family == "affR_upper"
    assert make_orbit("sl2R", "hyperboloid", lam="-1/2").lam == ExactScalar(Fraction(1, 2))
    with pytest.raises(UsageError):
        make_orbit("sl2R", "hyperboloid")
    with pytest.raises(UsageError):
        make_orbit("affR", "hyperboloid")


@pytest.mark.fast
def test_base_points_lie_on_their_orbits():
    for orbit in (make_orbit("affR", "upper"), make_orbit("affR", "lower"), make_orbit("affC", "punctured"),
                  make_orbit("sl2R", "hyperboloid", lam=2), make_orbit("sl2R", "upper_cone"),
                  make_orbit("sl2R", "twofold_lower", lam="1/8")):
        assert on_orbit(orbit, base_point(orbit))


@pytest.mark.fast
@pytest.mark.parametrize("algebra, name, lam, branch", [
    ("affR", "upper", None, 0),
    ("affR", "lower", None, 0),
    ("affC", "punctured", None, 0),
    ("affC", "punctured", None, -1),
    ("sl2R", "hyperboloid", "1/2", 0),
    ("sl2R", "upper_cone", None, 0),
    ("sl2R", "lower_cone", None, 0),
    ("sl2R", "twofold_upper", "1", 0),
])
def test_darboux_charts_are_symplectic(algebra, name, lam, branch):
    report = verify_darboux(make_orbit(algebra, name, lam=lam), branch)
    assert report.passed, [c.to_dict() for c in report.cases if c.failed]


@pytest.mark.fast
def test_hamiltonians():
    upper = make_orbit("affR", "upper")
    X, Y = get_algebra("affR").basis_elements()
    assert format_expr(hamiltonian(upper, X)) == "p"
    assert format_expr(hamiltonian(upper, Y)) == "exp(q)"
    assert format_expr(hamiltonian(make_orbit("affR", "lower"), Y)) == "-exp(q)"
    with pytest.raises(UsageError):
        darboux_chart(make_orbit("affR", "point"))


@pytest.mark.fast
def test_kirillov_form():
    upper = make_orbit("affR", "upper")
    X, Y = get_algebra("affR").basis_elements()
    F = get_algebra("affR").dual((5, 2))
    assert kirillov_form(upper, F, X, Y) == 2
    assert kirillov_form(upper, F, Y, X) == -2
    with pytest.raises(UsageError):
        kirillov_form(upper, get_algebra("affR").dual((5, -2)), X, Y)


@pytest.mark.fast
def test_lambda_quantization():
    assert lambda_quantized(make_orbit("sl2R", "hyperboloid", lam="3/8")) is True
    assert lambda_quantized(make_orbit("sl2R", "hyperboloid", lam="1/3")) is False
    assert lambda_quantized(make_orbit("sl2R", "upper_cone")) is None
