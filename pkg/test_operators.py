#!/usr/bin/env python3
"""
Tests for differential operators with shifts, Fourier conjugation and the
quantized representations
"""

from fractions import Fraction

import pytest

from src.diffop import DiffOperator, apply, commutator, compose
from src.errors import UnsupportedClassError, UsageError
from src.grammar import parse_expr
from src.liealg import get_algebra
from src.operators import (compare_printed, fourier_conjugate, hat_ell, line_operator, printed_hat_ell,
                           reduce_to_line, verify_homomorphism)
from src.orbits import make_orbit
from src.reports import OVERRIDE, PASS
from src.symalg import ExactScalar, ExpPoly, I, VarSet

P_ONLY = VarSet(("p",))
ETA = VarSet(("eta",))
S = VarSet(("s",))


@pytest.mark.fast
def test_canonical_commutation():
    d = DiffOperator.derivative(P_ONLY, "p")
    x = DiffOperator.multiplication(ExpPoly.variable(P_ONLY, "p"))
    assert commutator(d, x) == DiffOperator.identity(P_ONLY)


@pytest.mark.fast
def test_shifts_compose_and_apply():
    t1 = DiffOperator.shift_operator(P_ONLY, "p", 1)
    t_half = DiffOperator.shift_operator(P_ONLY, "p", Fraction(1, 2))
    assert compose(t1, t_half) == DiffOperator.shift_operator(P_ONLY, "p", Fraction(3, 2))
    assert apply(t1, parse_expr("p^2", P_ONLY)) == parse_expr("p^2 + 2*p + 1", P_ONLY)
    # d o T_1 applied to p^3 is 3 (p + 1)^2
    op = compose(DiffOperator.derivative(P_ONLY, "p"), t1)
    assert apply(op, parse_expr("p^3", P_ONLY)) == parse_expr("3*(p + 1)^2", P_ONLY)


@pytest.mark.fast
def test_fourier_rules():
    p = DiffOperator.multiplication(ExpPoly.variable(P_ONLY, "p"))
    d_p = DiffOperator.derivative(P_ONLY, "p")
    shift = DiffOperator.shift_operator(P_ONLY, "p", 2)
    assert fourier_conjugate(p, "p", "eta") == DiffOperator.derivative(ETA, "eta").scale(I)
    assert fourier_conjugate(d_p, "p", "eta") == DiffOperator.multiplication(ExpPoly.variable(ETA, "eta").scale(I))
    assert fourier_conjugate(shift, "p", "eta") == \
        DiffOperator.multiplication(ExpPoly.exponential(ETA, {"eta": ExactScalar(0, 2)}))
    # conjugation is multiplicative
    a, b = p + d_p.scale(3), compose(p, p) + shift
    assert fourier_conjugate(compose(a, b), "p", "eta") == \
        compose(fourier_conjugate(a, "p", "eta"), fourier_conjugate(b, "p", "eta"))
    with pytest.raises(UnsupportedClassError):
        fourier_conjugate(DiffOperator.multiplication(ExpPoly.exponential(P_ONLY, {"p": 1})), "p", "eta")


@pytest.mark.fast
def test_affr_line_operators():
    upper = make_orbit("affR", "upper")
    X, Y = get_algebra("affR").basis_elements()
    e_s = ExpPoly.exponential(S, {"s": 1})
    assert line_operator("affR", upper, X, 1) == DiffOperator.derivative(S, "s")
    assert line_operator("affR", upper, Y, 1) == DiffOperator.multiplication(e_s.scale(I))
    assert line_operator("affR", upper, Y, 2) == DiffOperator.multiplication(e_s.scale(I / 2))
    with pytest.raises(UsageError):
        line_operator("affC", make_orbit("affC", "punctured"), get_algebra("affC").basis_element("X1"))


@pytest.mark.fast
def test_sl2_line_operator():
    lam = ExactScalar(Fraction(1, 2))
    orbit = make_orbit("sl2R", "hyperboloid", lam=lam)
    X = get_algebra("sl2R").basis_element("X")
    cos_s, sin_s = ExpPoly.cos(S, "s"), ExpPoly.sin(S, "s")
    expected = (DiffOperator.multiplication(cos_s.scale(2)) @ DiffOperator.derivative(S, "s")
                + DiffOperator.multiplication(sin_s.scale(-(1 + 2 * I * lam))))
    assert line_operator("sl2R", orbit, X, 1) == expected


@pytest.mark.fast
def test_line_reduction_rejects_foreign_coefficients():
    vs = VarSet(("eta", "q"))
    op = DiffOperator.multiplication(ExpPoly.variable(vs, "q"))
    with pytest.raises(UnsupportedClassError):
        reduce_to_line(op, 1)


@pytest.mark.fast
@pytest.mark.parametrize("algebra, name, lam, branch, h", [
    ("affR", "upper", None, 0, "1"),
    ("affR", "lower", None, 0, "1/3"),
    ("affC", "punctured", None, 0, "1"),
    ("affC", "punctured", None, 1, "2"),
    ("sl2R", "hyperboloid", "1/2", 0, "1"),
    ("sl2R", "upper_cone", None, 0, "1"),
])
def test_representations_are_homomorphisms(algebra, name, lam, branch, h):
    report = verify_homomorphism(algebra, make_orbit(algebra, name, lam=lam), h, branch)
    assert report.passed, [c.to_dict() for c in report.cases if c.failed]


@pytest.mark.fast
def test_printed_closed_forms():
    affr = [c.status for c in compare_printed("affR", make_orbit("affR", "upper"))]
    assert affr == [PASS, OVERRIDE]
    affc = [c.status for c in compare_printed("affC", make_orbit("affC", "punctured"))]
    assert affc == [PASS] * 4
    sl2 = compare_printed("sl2R", make_orbit("sl2R", "hyperboloid", lam=1))
    assert [c.status for c in sl2] == [OVERRIDE] * 3
    assert all(c.residual for c in sl2)


@pytest.mark.fast
def test_hat_ell_variables():
    orbit = make_orbit("affC", "punctured")
    op = hat_ell("affC", orbit, get_algebra("affC").basis_element("Y1"), 1)
    assert op.varset.names == ("xi1", "q1", "xi2", "q2")
    with pytest.raises(UsageError):
        printed_hat_ell("sl2R", get_algebra("sl2R").basis_element("H"))
