"""
Numerical verification on uniform periodic grids: spectral application of
DiffOperators, the discrete Fourier oracle, the closed-form group actions and
RK4 evolution of the Cauchy problem d_t U = l U.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple, Union

import numpy as np

from .diffop import DiffOperator
from .errors import EvolutionError, UsageError
from .liealg import affr_group_exp
from .symalg import ExactScalar, ExpPoly, I, VarSet


GROWTH_LIMIT = 10.0
DEFAULT_CFL = 0.25
PHASE_STEP = 0.01


@dataclass(frozen=True)
class Axis:
    """Uniform periodic axis start + k * (length / points), k = 0..points-1"""

    name: str
    start: float
    length: float
    points: int

    def __post_init__(self):
        if self.points < 2 or self.points & (self.points - 1):
            raise UsageError(f"Grid point count must be a power of two, got {self.points}")
        if not (math.isfinite(self.start) and math.isfinite(self.length)) or self.length <= 0:
            raise UsageError(f"Grid range for {self.name} must be finite and non-empty")

    @property
    def spacing(self) -> float:
        return self.length / self.points

    def samples(self) -> np.ndarray:
        return self.start + self.spacing * np.arange(self.points)

    def wavenumbers(self) -> np.ndarray:
        return 2 * np.pi * np.fft.fftfreq(self.points, d=self.spacing)


@dataclass
class GridField:
    """Complex samples on a 1-D or 2-D product of periodic axes"""

    axes: Tuple[Axis, ...]
    values: np.ndarray

    def __post_init__(self):
        self.axes = tuple(self.axes)
        self.values = np.asarray(self.values, dtype=complex)
        shape = tuple(a.points for a in self.axes)
        if len(self.axes) not in (1, 2) or self.values.shape != shape:
            raise UsageError(f"Grid values of shape {self.values.shape} do not match axes {shape}")

    @classmethod
    def sample(cls, axes: Sequence[Axis], func: Callable) -> "GridField":
        """Evaluate func on the mesh; func receives one array per axis"""
        mesh = np.meshgrid(*[a.samples() for a in axes], indexing="ij")
        return cls(tuple(axes), np.asarray(func(*mesh), dtype=complex) * np.ones(mesh[0].shape))

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    def mesh(self):
        return np.meshgrid(*[a.samples() for a in self.axes], indexing="ij")

    def cell_volume(self) -> float:
        return float(np.prod([a.spacing for a in self.axes]))

    def l2_norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2) * self.cell_volume()))

    def with_values(self, values: np.ndarray) -> "GridField":
        return GridField(self.axes, values)

    def relative_error(self, other: "GridField") -> float:
        """||self - other|| / ||other|| in L2"""
        ref = other.l2_norm()
        diff = self.with_values(self.values - other.values).l2_norm()
        return diff / ref if ref > 0 else diff


def gaussian_bump(center: float = 0.0, width: float = 0.25) -> Callable:
    """Test function exp(-(x - center)^2 / (2 width^2))"""
    return lambda x: np.exp(-((x - center) ** 2) / (2 * width ** 2))


def line_axis(start: float = -3.0, stop: float = 3.0, points: int = 1024, name: str = "s") -> Axis:
    return Axis(name, start, stop - start, points)


def affc_axes(points: Sequence[int] = (256, 64), half_width: float = 8 * math.pi) -> Tuple[Axis, Axis]:
    """(Re x, Im x) axes: the window [-half_width, half_width) times the circle [0, 2pi)"""
    n1, n2 = (int(n) for n in points)
    return Axis("x1", -half_width, 2 * half_width, n1), Axis("x2", 0.0, 2 * math.pi, n2)


def _spectral(values: np.ndarray, axes: Tuple[Axis, ...], derivs: Sequence[int],
              shifts: Sequence[complex]) -> np.ndarray:
    """(d^derivs u)(x + shifts) by FFT along every affected axis"""
    out = values
    for dim, (axis, order, shift) in enumerate(zip(axes, derivs, shifts)):
        if order == 0 and shift == 0:
            continue
        k = axis.wavenumbers()
        symbol = (1j * k) ** order * np.exp(1j * k * shift)
        shape = [1] * values.ndim
        shape[dim] = axis.points
        out = np.fft.ifft(np.fft.fft(out, axis=dim) * symbol.reshape(shape), axis=dim)
    return out


def apply_on_grid(op: DiffOperator, field: GridField) -> GridField:
    """
    Apply an operator to sampled values

    Derivatives and shifts are spectral (exact for band-limited periodic data);
    coefficients are sampled on the mesh.

    Args:
        op: Operator whose variables are the field's axis names, in order
        field: Sampled function

    Returns:
        Sampled op(field)
    """
    if tuple(op.varset.names) != field.names:
        raise UsageError(f"Operator over {op.varset} applied to grid over {field.names}")
    mesh = field.mesh()
    total = np.zeros_like(field.values)
    for (derivs, shifts), coeff in op.terms():
        moved = _spectral(field.values, field.axes, derivs, [complex(s) for s in shifts])
        total = total + coeff.evaluate(mesh) * moved
    return field.with_values(total)


def fourier_transform_grid(field: GridField, dual_name: str = "eta") -> GridField:
    """
    Discrete approximation of F(u)(eta) = (1/2pi) int e^{-i p eta} u(p) dp

    The output axis is centered: eta_k = (k - N/2) * 2pi / L.

    Args:
        field: 1-D field over the p axis
        dual_name: Name of the output axis

    Returns:
        Field over the dual axis
    """
    if len(field.axes) != 1:
        raise UsageError("fourier_transform_grid expects a 1-D field")
    axis = field.axes[0]
    n = axis.points
    d_eta = 2 * np.pi / axis.length
    eta = np.fft.fftfreq(n, d=axis.spacing) * 2 * np.pi
    raw = np.fft.fft(field.values) * axis.spacing / (2 * np.pi) * np.exp(-1j * axis.start * eta)
    dual_axis = Axis(dual_name, -n / 2 * d_eta, n * d_eta, n)
    return GridField((dual_axis,), np.fft.fftshift(raw))


def _operator_rates(op: DiffOperator, field: GridField) -> Tuple[float, float]:
    """Largest transport speed per unit derivative order and largest zero-order rate"""
    mesh = field.mesh()
    speed = 0.0
    rate = 0.0
    min_dx = min(a.spacing for a in field.axes)
    for (derivs, _), coeff in op.terms():
        size = float(np.max(np.abs(coeff.evaluate(mesh))))
        order = sum(derivs)
        if order == 0:
            rate = max(rate, size)
        else:
            speed = max(speed, size * min_dx ** (1 - order))
    return speed, rate


def evolve(op: DiffOperator, f0: GridField, t: float, steps: Optional[int] = None,
           cfl: float = DEFAULT_CFL, logger=None) -> GridField:
    """
    Solve d_t U = op U, U(0) = f0 with spectral space derivatives and RK4 in time

    The step is bounded by cfl * dx / speed for derivative terms and by a
    fixed phase increment per step for zero-order terms.

    Args:
        op: Generator over the field's axis names
        f0: Initial data
        t: Final time (may be negative)
        steps: Minimum number of steps
        cfl: CFL factor
        logger: Optional AppLogger

    Returns:
        Field at time t

    Raises:
        EvolutionError: If the L2 norm grows beyond GROWTH_LIMIT times its initial value
    """
    if op.is_zero() or t == 0:
        return f0.with_values(f0.values.copy())
    speed, rate = _operator_rates(op, f0)
    min_dx = min(a.spacing for a in f0.axes)
    dt_max = math.inf
    if speed > 0:
        dt_max = min(dt_max, cfl * min_dx / speed)
    if rate > 0:
        dt_max = min(dt_max, PHASE_STEP / rate)
    n = max(steps or 1, int(math.ceil(abs(t) / dt_max)) if math.isfinite(dt_max) else 1)
    dt = t / n

    def rhs(values: np.ndarray) -> np.ndarray:
        return apply_on_grid(op, f0.with_values(values)).values

    u = f0.values.copy()
    norm0 = f0.l2_norm()
    for step in range(n):
        k1 = rhs(u)
        k2 = rhs(u + 0.5 * dt * k1)
        k3 = rhs(u + 0.5 * dt * k2)
        k4 = rhs(u + dt * k3)
        u = u + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        if norm0 > 0 and step % 16 == 0:
            norm = f0.with_values(u).l2_norm()
            if not np.isfinite(norm) or norm > GROWTH_LIMIT * norm0:
                raise EvolutionError(
                    f"Norm grew from {norm0:.3e} to {norm:.3e} after {step + 1} of {n} steps (dt={dt:.3e})")

    result = f0.with_values(u)
    if not np.all(np.isfinite(u)) or (norm0 > 0 and result.l2_norm() > GROWTH_LIMIT * norm0):
        raise EvolutionError("Evolution diverged")
    msg = f"[Grid] Evolved to t={t} in {n} RK4 steps (dt={dt:.3e})"
    if logger:
        logger.debug(msg)
    else:
        logging.debug(msg)
    return result


def _shift_field(field: GridField, shifts: Sequence[float]) -> np.ndarray:
    return _spectral(field.values, field.axes, [0] * len(field.axes), shifts)


def rep_action(group: str, params: dict, f: Union[GridField, Callable], grid: Optional[Sequence[Axis]] = None,
               h=1) -> GridField:
    """
    Closed-form unitary action of a group element on a sampled function

    affR: (T(g) f)(y) = e^{(i/h) b y} f(a y) on the line y = e^s, params a > 0, b
      (or alpha, beta, t for g = exp(t(alpha X + beta Y))).
    affC: (T(z, w) f)(x) = exp((i/h) Re(w x) + 2 pi i theta [Im(x + z) / 2pi]) f(x (+) z)
      on R x S^1 with x (+) z = Re(x + z) + i (Im(x + z) mod 2pi), params z, w, theta.

    Args:
        group: affR or affC
        params: Group parameters
        f: Sampled field, or a callable evaluated exactly (f(y) for affR, f(x1, x2) for affC)
        grid: Axes when f is a callable
        h: Planck parameter

    Returns:
        Transformed field
    """
    hv = complex(ExactScalar.coerce(h)) if not isinstance(h, (float, complex)) else complex(h)
    axes = f.axes if isinstance(f, GridField) else tuple(grid or ())
    if not axes:
        raise UsageError("rep_action needs a grid")
    mesh = np.meshgrid(*[a.samples() for a in axes], indexing="ij")

    if group == "affR":
        if "a" in params:
            a, b = float(params["a"]), float(params.get("b", 0.0))
        else:
            a, b = affr_group_exp(float(params.get("alpha", 0.0)), float(params.get("beta", 0.0)),
                                  float(params.get("t", 1.0)))
        if a <= 0:
            raise UsageError(f"affR action needs a > 0, got {a}")
        if len(axes) != 1:
            raise UsageError("affR action acts on a 1-D grid over s = log y")
        s = mesh[0]
        y = np.exp(s)
        if isinstance(f, GridField):
            moved = _shift_field(f, [math.log(a)])
        else:
            moved = np.asarray(f(a * y), dtype=complex)
        return GridField(axes, np.exp(1j / hv * b * y) * moved)

    if group == "affC":
        z = complex(params.get("z", 0))
        w = complex(params.get("w", 0))
        theta = float(params.get("theta", 0.0))
        if len(axes) != 2:
            raise UsageError("affC action acts on a 2-D grid over (Re x, Im x)")
        x1, x2 = mesh
        wrapped = x2 + z.imag
        winding = np.floor(wrapped / (2 * np.pi))
        phase = np.exp(1j / hv * (w.real * x1 - w.imag * x2) + 2j * np.pi * theta * winding)
        if isinstance(f, GridField):
            moved = _shift_field(f, [z.real, z.imag])
        else:
            moved = np.asarray(f(x1 + z.real, wrapped - 2 * np.pi * winding), dtype=complex)
        return GridField(axes, phase * moved)

    raise UsageError(f"Unknown group {group!r} (expected affR or affC)")


def affc_generator(z, w, h=1) -> DiffOperator:
    """
    Generator of t -> rep_action("affC", {z: t z, w: t w}) at t = 0

        Re z d_x1 + Im z d_x2 + (i/h)(Re w x1 - Im w x2)

    When z = 0 or w = 0 its flow is exactly the action along that ray (theta = 0).

    Args:
        z: Exact translation rate (Gaussian rational)
        w: Exact phase rate (Gaussian rational)
        h: Planck parameter

    Returns:
        Operator over (x1, x2)
    """
    vs = VarSet(("x1", "x2"))
    z, w, hp = (ExactScalar.coerce(v) for v in (z, w, h))
    if hp.is_zero():
        raise UsageError("h must be nonzero")
    translation = (DiffOperator.term(ExpPoly.constant(vs, z.re), (1, 0))
                   + DiffOperator.term(ExpPoly.constant(vs, z.im), (0, 1)))
    phase = ExpPoly.variable(vs, "x1").scale(w.re) - ExpPoly.variable(vs, "x2").scale(w.im)
    return translation + DiffOperator.multiplication(phase.scale(I / hp))
