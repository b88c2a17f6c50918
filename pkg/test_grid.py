#!/usr/bin/env python3
"""
Tests for spectral grid application, the discrete Fourier oracle, the
closed-form group actions and RK4 evolution
"""

import math
from fractions import Fraction

import numpy as np
import pytest

from src.diffop import DiffOperator
from src.errors import EvolutionError, UsageError
from src.grid import (Axis, GridField, affc_axes, affc_generator, apply_on_grid, evolve, fourier_transform_grid,
                      gaussian_bump, line_axis, rep_action)
from src.liealg import get_algebra
from src.operators import line_operator
from src.orbits import make_orbit
from src.symalg import ExactScalar, ExpPoly, I, VarSet

S = VarSet(("s",))


@pytest.mark.fast
def test_axis_requires_power_of_two():
    with pytest.raises(UsageError):
        Axis("s", 0.0, 1.0, 1000)
    with pytest.raises(UsageError):
        Axis("s", 0.0, 0.0, 64)
    axis = line_axis(-3.0, 3.0, 64)
    assert axis.spacing == pytest.approx(6.0 / 64)
    assert axis.samples()[0] == -3.0


@pytest.mark.fast
def test_spectral_derivative_and_shift():
    circle = Axis("s", 0.0, 2 * math.pi, 64)
    field = GridField.sample((circle,), np.sin)
    d = apply_on_grid(DiffOperator.derivative(S, "s"), field)
    assert np.max(np.abs(d.values - np.cos(circle.samples()))) < 1e-10

    line = line_axis(-20.0, 20.0, 512)
    bump = gaussian_bump(0.0, 1.0)
    moved = apply_on_grid(DiffOperator.shift_operator(S, "s", 1), GridField.sample((line,), bump))
    assert np.max(np.abs(moved.values - bump(line.samples() + 1))) < 1e-8


@pytest.mark.fast
def test_fourier_transform_of_gaussian():
    axis = Axis("p", -20.0, 40.0, 256)
    u = GridField.sample((axis,), lambda p: np.exp(-p ** 2 / 2))
    transformed = fourier_transform_grid(u)
    eta = transformed.axes[0].samples()
    assert transformed.names == ("eta",)
    assert np.max(np.abs(transformed.values - np.exp(-eta ** 2 / 2) / math.sqrt(2 * math.pi))) < 1e-10


@pytest.mark.fast
def test_operator_must_match_grid():
    field = GridField.sample((line_axis(points=64),), gaussian_bump())
    with pytest.raises(UsageError):
        apply_on_grid(DiffOperator.derivative(VarSet(("q",)), "q"), field)


@pytest.mark.slow
@pytest.mark.parametrize("coords, t", [((1, 0), 0.5), ((0, 1), 0.5), ((1, 1), -0.25)])
def test_affr_evolution_matches_group_action(coords, t):
    axis = line_axis(-3.0, 3.0, 512)
    bump = gaussian_bump(0.0, 0.25)
    f0 = GridField.sample((axis,), bump)
    A = get_algebra("affR").element(coords)
    op = line_operator("affR", make_orbit("affR", "upper"), A, 1)
    result = evolve(op, f0, t)
    oracle = rep_action("affR", {"alpha": coords[0], "beta": coords[1], "t": t},
                        lambda y: bump(np.log(y)), (axis,))
    assert result.relative_error(oracle) < 1e-3
    assert abs(result.l2_norm() - f0.l2_norm()) / f0.l2_norm() < 1e-6


@pytest.mark.fast
def test_zero_time_and_growth():
    f0 = GridField.sample((line_axis(points=64),), gaussian_bump())
    same = evolve(DiffOperator.derivative(S, "s"), f0, 0.0)
    assert np.array_equal(same.values, f0.values)
    growth = DiffOperator.multiplication(ExpPoly.constant(S, 5))
    with pytest.raises(EvolutionError):
        evolve(growth, f0, 1.0)


@pytest.mark.fast
def test_affc_action_winding_phase():
    axes = (Axis("x1", -5.0, 10.0, 64), Axis("x2", 0.0, 2 * math.pi, 32))
    f = lambda x1, x2: np.exp(-x1 ** 2) * np.cos(x2)
    base = GridField.sample(axes, f)
    turned = rep_action("affC", {"z": 2j * math.pi, "theta": 0.5}, f, axes)
    assert np.max(np.abs(turned.values + base.values)) < 1e-12
    same = rep_action("affC", {"z": 2j * math.pi, "theta": 1.0}, f, axes)
    assert np.max(np.abs(same.values - base.values)) < 1e-12


@pytest.mark.fast
def test_affr_action_parameters():
    axis = line_axis(points=64)
    with pytest.raises(UsageError):
        rep_action("affR", {"a": -1.0}, gaussian_bump(), (axis,))
    with pytest.raises(UsageError):
        rep_action("so3", {}, gaussian_bump(), (axis,))
    identity = rep_action("affR", {"a": 1.0, "b": 0.0}, lambda y: gaussian_bump()(np.log(y)), (axis,))
    assert np.allclose(identity.values, gaussian_bump()(axis.samples()))


@pytest.mark.fast
def test_affc_generator_terms():
    x = VarSet(("x1", "x2"))
    translation = affc_generator(ExactScalar(1, 1), 0)
    assert translation == DiffOperator.derivative(x, "x1") + DiffOperator.derivative(x, "x2")
    phase = affc_generator(0, ExactScalar(Fraction(1, 2), 2), h=2)
    expected = (ExpPoly.variable(x, "x1").scale(Fraction(1, 4)) - ExpPoly.variable(x, "x2")).scale(I)
    assert phase == DiffOperator.multiplication(expected)
    with pytest.raises(UsageError):
        affc_generator(1, 0, h=0)


@pytest.mark.slow
@pytest.mark.parametrize("z, w, t", [
    (ExactScalar(1, 1), ExactScalar(0), 0.5),
    (ExactScalar(0, -2), ExactScalar(0), 1.0),
    (ExactScalar(0), ExactScalar(Fraction(1, 4), Fraction(-1, 8)), 0.5),
])
def test_affc_evolution_matches_group_action(z, w, t):
    axes = affc_axes((256, 64))
    assert axes[0].start == pytest.approx(-8 * math.pi)
    f = lambda x1, x2: np.exp(-x1 ** 2 / 2 + np.cos(x2))
    f0 = GridField.sample(axes, f)
    result = evolve(affc_generator(z, w), f0, t)
    oracle = rep_action("affC", {"z": complex(z) * t, "w": complex(w) * t}, f, axes)
    assert result.relative_error(oracle) < 1e-3
    assert abs(result.l2_norm() - f0.l2_norm()) / f0.l2_norm() < 1e-6
