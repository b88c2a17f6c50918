#!/usr/bin/env python3
"""
Tests for the Lie algebra presentations and exponentials
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.errors import UsageError
from src.liealg import (ALGEBRAS, affr_group_exp, affr_translation_entry, bracket, coadjoint,
                        exp_neg_ad, exp_neg_ad_checked, get_algebra, killing_form, matrix_exp, series_exp)
from src.orbits import sl2_invariant
from src.symalg import ExactScalar


def exact(value):
    return ExactScalar(Fraction(value))


@pytest.mark.fast
@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_structure_constants(name):
    alg = get_algebra(name)
    assert alg.antisymmetry_violations() == []
    assert alg.jacobi_violations() == []


@pytest.mark.fast
def test_brackets():
    affr = get_algebra("affR")
    X, Y = affr.basis_elements()
    assert bracket(X, Y) == Y
    assert bracket(Y, X) == Y * -1

    sl2 = get_algebra("sl2R")
    X, H, Y = sl2.basis_elements()
    assert bracket(H, X) == Y * 2
    assert bracket(H, Y) == X * 2
    assert bracket(X, Y) == H * -2


@pytest.mark.fast
def test_killing_form_signature():
    X, H, Y = get_algebra("sl2R").basis_elements()
    assert killing_form(H, H) == 8
    assert killing_form(X, X) == 8
    assert killing_form(Y, Y) == -8


@pytest.mark.fast
def test_exp_neg_ad_closed_form():
    alg = get_algebra("affR")
    alpha, beta = 0.75, -1.25
    E = exp_neg_ad(alg.element([exact(alpha), exact(beta)]))
    assert E[1, 0] == pytest.approx(affr_translation_entry(alpha, beta), abs=1e-13)
    assert E[1, 1] == pytest.approx(math.exp(-alpha), abs=1e-13)
    assert E[0, 1] == 0


@pytest.mark.fast
def test_scaling_and_squaring_matches_series():
    M = np.array([[0.3, -1.2, 0.0], [0.5, 0.1, 0.7], [-0.4, 0.0, -0.2]])
    assert np.allclose(matrix_exp(M), series_exp(M, 40), atol=1e-13)
    assert np.allclose(matrix_exp(np.zeros((2, 2))), np.identity(2))
    X, H, Y = get_algebra("sl2R").basis_elements()
    _, discrepancy = exp_neg_ad_checked(X * exact(0.25) + Y * exact(-0.5))
    assert discrepancy < 1e-12


@pytest.mark.fast
def test_coadjoint_action_preserves_casimir():
    sl2 = get_algebra("sl2R")
    F = sl2.dual([0, 2, 0])
    U = sl2.element([exact(0.5), exact(-0.25), exact(0.375)])
    moved = coadjoint(U, F)
    assert not moved.is_exact
    assert sl2_invariant(moved) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.fast
def test_group_exponential():
    assert affr_group_exp(0.0, 2.0, 1.5) == (1.0, 3.0)
    a, b = affr_group_exp(1.0, 1.0)
    assert a == pytest.approx(math.e)
    assert b == pytest.approx(math.e - 1)


@pytest.mark.fast
def test_misuse_raises():
    with pytest.raises(UsageError):
        get_algebra("so3")
    with pytest.raises(UsageError):
        get_algebra("affR").element([1, 2, 3])
    with pytest.raises(UsageError):
        bracket(get_algebra("affR").basis_element("X"), get_algebra("sl2R").basis_element("X"))
