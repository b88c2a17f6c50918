#!/usr/bin/env python3
"""
Tests for the exact scalar and expression algebra
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import UsageError
from src.symalg import ExactScalar, ExpPoly, I, VarSet

PQ = VarSet(("p", "q"))
P = ExpPoly.variable(PQ, "p")
Q = ExpPoly.variable(PQ, "q")
E_Q = ExpPoly.exponential(PQ, {"q": 1})


@pytest.mark.fast
def test_gaussian_rational_arithmetic():
    assert ExactScalar(1, 2) * ExactScalar(1, -2) == 5
    assert ExactScalar(1) / ExactScalar(0, 2) == ExactScalar(0, Fraction(-1, 2))
    assert I ** 2 == -1
    assert ExactScalar(2) ** -2 == Fraction(1, 4)
    with pytest.raises(TypeError):
        ExactScalar(1.5)
    with pytest.raises(ZeroDivisionError):
        ExactScalar(0).inverse()


@pytest.mark.fast
def test_canonical_form():
    assert (P - P).is_zero()
    assert (P + Q) ** 2 == P * P + (P * Q).scale(2) + Q * Q
    assert (P * E_Q).scale(Fraction(1, 3)).scale(3) == P * E_Q
    assert len(E_Q * ExpPoly.exponential(PQ, {"q": -1})) == 1
    assert (E_Q * ExpPoly.exponential(PQ, {"q": -1})).is_constant()


@pytest.mark.fast
def test_partial_derivatives():
    f = Q ** 2 * ExpPoly.exponential(PQ, {"q": 2})
    expected = (Q * ExpPoly.exponential(PQ, {"q": 2})).scale(2) + f.scale(2)
    assert f.partial("q") == expected
    assert f.partial("p").is_zero()
    assert (P ** 3).partial("p", 2) == P.scale(6)


@pytest.mark.fast
def test_shift_stays_exact():
    assert (P ** 2).shift("p", 1) == P ** 2 + P.scale(2) + 1
    moved = E_Q.shift("q", 1)
    assert len(moved) == 1
    assert abs(moved.evaluate({"p": 0, "q": 0}) - math.e) < 1e-12
    assert E_Q.shift("q", I).evaluate([0, 0]) == pytest.approx(complex(math.cos(1), math.sin(1)))


@pytest.mark.fast
def test_trigonometric_identity():
    cos_q = ExpPoly.cos(PQ, "q")
    sin_q = ExpPoly.sin(PQ, "q")
    assert cos_q * cos_q + sin_q * sin_q == 1
    assert cos_q.partial("q") == -sin_q


@pytest.mark.fast
def test_evaluate_broadcasts():
    f = P * E_Q + 1
    q = np.linspace(0, 1, 5)
    values = f.evaluate({"p": 2.0, "q": q})
    assert values.shape == (5,)
    assert np.allclose(values, 2 * np.exp(q) + 1)


@pytest.mark.fast
def test_variable_sets_are_checked():
    other = ExpPoly.variable(VarSet(("s",)), "s")
    with pytest.raises(UsageError):
        P + other
    with pytest.raises(UsageError):
        VarSet(("p", "p"))
    with pytest.raises(UsageError):
        VarSet(("exp",))
    with pytest.raises(UsageError):
        ExpPoly.variable(PQ, "z")
