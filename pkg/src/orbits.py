"""
Coadjoint orbits of Aff0(R), Aff(C) and SL(2,R): classification, Darboux
charts, Hamiltonian pullbacks and the Kirillov form.

Each chart embeds an orbit through the dual-basis coordinates of F, so the
Hamiltonian of A is the exact pairing sum_i F_i(chart) * A_i.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import UsageError
from .liealg import AlgElement, DualVector, LieAlgebra, bracket, get_algebra
from .reports import CaseResult, PASS, FAIL, SuiteReport, exact_case
from .symalg import ExactScalar, ExpPoly, VarSet, ZERO


FLOAT_TOLERANCE = 1e-7

FAMILY_DIMS = {
    "affR_point": 0,
    "affR_upper": 2,
    "affR_lower": 2,
    "affC_point": 0,
    "affC_punctured": 4,
    "sl2_hyperboloid": 2,
    "sl2_upper_cone": 2,
    "sl2_lower_cone": 2,
    "sl2_origin": 0,
    "sl2_twofold_upper": 2,
    "sl2_twofold_lower": 2,
}

FAMILY_ALGEBRA = {family: family.split("_")[0].replace("sl2", "sl2R") for family in FAMILY_DIMS}

LAMBDA_FAMILIES = ("sl2_hyperboloid", "sl2_twofold_upper", "sl2_twofold_lower")

# Short names accepted on the command line
ORBIT_ALIASES = {
    "affR": {"point": "affR_point", "upper": "affR_upper", "lower": "affR_lower"},
    "affC": {"point": "affC_point", "punctured": "affC_punctured"},
    "sl2R": {
        "hyperboloid": "sl2_hyperboloid",
        "upper_cone": "sl2_upper_cone",
        "lower_cone": "sl2_lower_cone",
        "origin": "sl2_origin",
        "twofold_upper": "sl2_twofold_upper",
        "twofold_lower": "sl2_twofold_lower",
    },
}

# Base points and polarizations of the sl(2,R) families (metadata only)
SL2_POLARIZATIONS = {
    "sl2_hyperboloid": ("2 lam H*", "CH + C(X+Y)", "principal series"),
    "sl2_upper_cone": ("X* - Y*", "CH + C(X+Y)", "limit of discrete series"),
    "sl2_lower_cone": ("X* - Y*", "CH + C(X+Y)", "limit of discrete series"),
    "sl2_twofold_upper": ("2H*", "CH + C(X+iH)", "discrete series"),
    "sl2_twofold_lower": ("2H*", "CH + C(X+iH)", "discrete series"),
    "sl2_origin": ("0", "sl(2,C)", "trivial representation"),
}


@dataclass(frozen=True)
class OrbitDescriptor:
    """Classified coadjoint orbit"""

    algebra: str
    family: str
    params: Dict[str, Any] = field(default_factory=dict, hash=False, compare=True)
    dim: int = -1

    def __post_init__(self):
        if self.family not in FAMILY_DIMS:
            raise UsageError(f"Unknown orbit family {self.family!r}")
        if FAMILY_ALGEBRA[self.family] != self.algebra:
            raise UsageError(f"Orbit family {self.family} does not belong to {self.algebra}")
        expected = FAMILY_DIMS[self.family]
        if self.dim == -1:
            object.__setattr__(self, "dim", expected)
        elif self.dim != expected:
            raise UsageError(f"{self.family} has dimension {expected}, not {self.dim}")
        if self.family in LAMBDA_FAMILIES:
            lam = self.params.get("lambda")
            if lam is None or lam == 0:
                raise UsageError(f"{self.family} requires a nonzero lambda")

    @property
    def lam(self):
        return self.params.get("lambda")

    def summary(self) -> Dict[str, Any]:
        """JSON-friendly description"""
        params = {}
        for key, value in self.params.items():
            if isinstance(value, (tuple, list)):
                params[key] = [str(v) if isinstance(v, ExactScalar) else v for v in value]
            else:
                params[key] = str(value) if isinstance(value, ExactScalar) else value
        return {"algebra": self.algebra, "family": self.family, "params": params, "dim": self.dim}

    def __str__(self):
        lam = self.lam
        return f"{self.family}(lambda={lam})" if lam is not None else self.family


def make_orbit(algebra: str, name: str, lam=None, point=None) -> OrbitDescriptor:
    """
    Build a descriptor from an algebra and a family name or CLI alias

    Args:
        algebra: affR, affC or sl2R
        name: Family name (affR_upper) or alias (upper)
        lam: Orbit parameter for the sl2 families with lambda
        point: Coordinates of a 0-dimensional orbit

    Returns:
        OrbitDescriptor
    """
    get_algebra(algebra)
    family = ORBIT_ALIASES[algebra].get(name, name)
    if family not in FAMILY_DIMS or FAMILY_ALGEBRA[family] != algebra:
        raise UsageError(f"Unknown orbit {name!r} for {algebra} "
                         f"(expected one of: {', '.join(ORBIT_ALIASES[algebra])})")
    params: Dict[str, Any] = {}
    if family in LAMBDA_FAMILIES:
        if lam is None:
            raise UsageError(f"{family} requires --lambda")
        lam = ExactScalar.coerce(lam) if not isinstance(lam, float) else lam
        if isinstance(lam, ExactScalar):
            if not lam.is_real():
                raise UsageError("lambda must be real")
            if lam.re < 0:
                lam = -lam
        elif lam < 0:
            lam = -lam
        params["lambda"] = lam
    if family == "sl2_origin":
        params["point"] = (ZERO, ZERO, ZERO)
    elif FAMILY_DIMS[family] == 0:
        n = get_algebra(algebra).dim
        params["point"] = tuple(point) if point is not None else (ZERO,) * n
    return OrbitDescriptor(algebra, family, params)


# Classification

def _sign(value, exact: bool) -> int:
    if exact:
        return (value > 0) - (value < 0)
    if abs(value) <= FLOAT_TOLERANCE:
        return 0
    return 1 if value > 0 else -1


def _sqrt_exact(value: Fraction):
    """Exact square root when value is a rational square, else a float"""
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return ExactScalar(Fraction(rn, rd))
    return math.sqrt(value)


def _real_coords(F: DualVector) -> Tuple[List, bool]:
    if F.is_exact:
        for c in F.coords:
            if not c.is_real():
                raise UsageError("Functional coordinates must be real")
        return [c.re for c in F.coords], True
    return [float(v) for v in F.as_floats()], False


def sl2_invariant(F: DualVector):
    """x^2 + h^2 - y^2 in the orbit coordinates x = F_X/2, h = F_H/2, y = -F_Y/2"""
    coords, _ = _real_coords(F)
    x, h, y = coords[0] / 2, coords[1] / 2, -coords[2] / 2
    return x * x + h * h - y * y


def classify_orbit(algebra: str, F: DualVector) -> OrbitDescriptor:
    """
    Classify the coadjoint orbit through F

    Exact coordinates are classified exactly; float coordinates use an
    absolute tolerance on the invariant quantities.

    Args:
        algebra: affR, affC or sl2R
        F: Functional in dual-basis coordinates

    Returns:
        OrbitDescriptor for the orbit containing F
    """
    alg = get_algebra(algebra)
    if F.algebra.name != alg.name:
        raise UsageError(f"Functional belongs to {F.algebra.name}, not {algebra}")
    coords, exact = _real_coords(F)

    if algebra == "affR":
        lam, mu = coords
        s = _sign(mu, exact)
        if s == 0:
            return OrbitDescriptor("affR", "affR_point", {"point": tuple(F.coords)})
        return OrbitDescriptor("affR", "affR_upper" if s > 0 else "affR_lower", {})

    if algebra == "affC":
        if _sign(coords[2], exact) == 0 and _sign(coords[3], exact) == 0:
            return OrbitDescriptor("affC", "affC_point", {"point": tuple(F.coords)})
        return OrbitDescriptor("affC", "affC_punctured", {})

    x, h, y = coords[0] / 2, coords[1] / 2, -coords[2] / 2
    inv = x * x + h * h - y * y
    s = _sign(inv, exact)
    ys = _sign(y, exact)
    if s > 0:
        lam = _sqrt_exact(inv) if exact else math.sqrt(inv)
        return OrbitDescriptor("sl2R", "sl2_hyperboloid", {"lambda": lam})
    if s < 0:
        lam = _sqrt_exact(-inv) if exact else math.sqrt(-inv)
        family = "sl2_twofold_upper" if ys > 0 else "sl2_twofold_lower"
        return OrbitDescriptor("sl2R", family, {"lambda": lam})
    if ys == 0 and _sign(x, exact) == 0 and _sign(h, exact) == 0:
        return OrbitDescriptor("sl2R", "sl2_origin", {"point": tuple(F.coords)})
    return OrbitDescriptor("sl2R", "sl2_upper_cone" if ys > 0 else "sl2_lower_cone", {})


def _same_lambda(a, b) -> bool:
    if isinstance(a, ExactScalar) and isinstance(b, ExactScalar):
        return a == b
    fa = float(a.re) if isinstance(a, ExactScalar) else float(a)
    fb = float(b.re) if isinstance(b, ExactScalar) else float(b)
    return abs(fa - fb) <= 1e-9 * max(1.0, abs(fa))


def on_orbit(orbit: OrbitDescriptor, F: DualVector) -> bool:
    """Whether F lies on the orbit (exact for rational F, tolerance 1e-9 otherwise)"""
    found = classify_orbit(orbit.algebra, F)
    if found.family != orbit.family:
        return False
    if orbit.family in LAMBDA_FAMILIES:
        return _same_lambda(found.lam, orbit.lam)
    if orbit.dim == 0:
        mine = [complex(c).real if isinstance(c, ExactScalar) else float(c) for c in orbit.params["point"]]
        other = [complex(c).real if isinstance(c, ExactScalar) else float(c) for c in F.coords]
        if F.is_exact and all(isinstance(c, ExactScalar) for c in orbit.params["point"]):
            return list(orbit.params["point"]) == list(F.coords)
        return bool(np.allclose(mine, other, atol=1e-9))
    return True


def base_point(orbit: OrbitDescriptor) -> DualVector:
    """Distinguished point of the orbit (the image of the chart origin when it lies on the orbit)"""
    alg = get_algebra(orbit.algebra)
    family = orbit.family
    if orbit.dim == 0:
        return alg.dual(orbit.params["point"])
    if family == "affR_upper":
        return alg.dual((0, 1))
    if family == "affR_lower":
        return alg.dual((0, -1))
    if family == "affC_punctured":
        return alg.dual((0, 0, 1, 0))
    lam = orbit.lam
    if family == "sl2_hyperboloid":
        return alg.dual((0, 2 * lam, 0))
    if family == "sl2_upper_cone":
        return alg.dual((2, 0, -2))
    if family == "sl2_lower_cone":
        return alg.dual((-2, 0, 2))
    sign = -1 if family == "sl2_twofold_upper" else 1
    return alg.dual((0, 0, 2 * sign * lam))


def lambda_quantized(orbit: OrbitDescriptor) -> Optional[bool]:
    """For sl2 families with lambda: whether lambda = k/8 for an integer k"""
    if orbit.family not in LAMBDA_FAMILIES:
        return None
    lam = orbit.lam
    if not isinstance(lam, ExactScalar):
        return False
    return (lam.re * 8).denominator == 1


# Charts

@dataclass(frozen=True)
class DarbouxChart:
    """Chart of an orbit: dual-basis coordinates of F as exact functions of chart variables"""

    orbit: OrbitDescriptor
    chart_vars: VarSet
    embed: Tuple[ExpPoly, ...]
    poisson_tensor: Tuple[Tuple[ExactScalar, ...], ...]
    branch: int = 0
    domain: str = ""

    @property
    def algebra(self) -> LieAlgebra:
        return get_algebra(self.orbit.algebra)

    def evaluate(self, point) -> np.ndarray:
        """Float dual coordinates of the image of a chart point"""
        return np.array([e.evaluate(point) for e in self.embed])

    def summary(self) -> Dict[str, Any]:
        return {
            "variables": list(self.chart_vars.names),
            "embedding": {b: str(e) for b, e in zip(self.algebra.dual_basis, self.embed)},
            "branch": self.branch,
            "domain": self.domain,
        }


def _standard_tensor(pairs: List[Tuple[int, int, int]], n: int):
    lam = [[ZERO] * n for _ in range(n)]
    for i, j, sign in pairs:
        lam[i][j] = ExactScalar(sign)
        lam[j][i] = ExactScalar(-sign)
    return tuple(tuple(row) for row in lam)


PQ = VarSet(("p", "q"))
AFFC_VARS = VarSet(("p1", "q1", "p2", "q2"))


def _sl2_embedding(lam: ExactScalar) -> Tuple[ExpPoly, ...]:
    p = ExpPoly.variable(PQ, "p")
    cos_q = ExpPoly.cos(PQ, "q")
    sin_q = ExpPoly.sin(PQ, "q")
    x = p * cos_q - sin_q.scale(lam)
    h = p * sin_q + cos_q.scale(lam)
    y = p
    return (x * 2, h * 2, y * (-2))


def darboux_chart(orbit: OrbitDescriptor, branch: int = 0) -> DarbouxChart:
    """
    Darboux chart of a positive-dimensional orbit

    Args:
        orbit: Orbit descriptor
        branch: Strip index k of the aff(C) chart family (ignored elsewhere)

    Returns:
        DarbouxChart whose pullback of the Kirillov form is standard
    """
    if orbit.dim == 0:
        raise UsageError(f"{orbit.family} is zero-dimensional and has no Darboux chart")
    family = orbit.family

    if family in ("affR_upper", "affR_lower"):
        sign = 1 if family == "affR_upper" else -1
        embed = (ExpPoly.variable(PQ, "p"), ExpPoly.exponential(PQ, {"q": 1}, coeff=sign))
        domain = "(p, q) in R^2, y = %se^q" % ("" if sign > 0 else "-")
        return DarbouxChart(orbit, PQ, embed, _standard_tensor([(0, 1, 1)], 2), 0, domain)

    if family == "affC_punctured":
        v = AFFC_VARS
        e_q1 = ExpPoly.exponential(v, {"q1": 1})
        embed = (
            ExpPoly.variable(v, "p1"),
            -ExpPoly.variable(v, "p2"),
            e_q1 * ExpPoly.cos(v, "q2"),
            -(e_q1 * ExpPoly.sin(v, "q2")),
        )
        tensor = _standard_tensor([(0, 1, 1), (2, 3, -1)], 4)
        domain = f"z = p1 + i p2 in C, w = q1 + i q2 with {2 * branch}pi < q2 < {2 * (branch + 1)}pi"
        return DarbouxChart(orbit, v, embed, tensor, branch, domain)

    # sl2 families
    if family in ("sl2_upper_cone", "sl2_lower_cone"):
        lam = ZERO
        domain = "p > 0" if family == "sl2_upper_cone" else "p < 0"
    else:
        lam = orbit.lam
        if not isinstance(lam, ExactScalar):
            raise UsageError(f"Chart of {family} requires a rational lambda, got {lam}")
        if family != "sl2_hyperboloid":
            lam = lam * ExactScalar(0, 1)
            domain = "complexified chart, lambda -> i lambda"
        else:
            domain = "(p, q) in R x (0, 2pi)"
    return DarbouxChart(orbit, PQ, _sl2_embedding(lam), _standard_tensor([(0, 1, 1)], 2), 0, domain)


def hamiltonian(orbit: OrbitDescriptor, A: AlgElement, branch: int = 0) -> ExpPoly:
    """
    Pullback of the linear function A~ = <F, A> through the chart

    Args:
        orbit: Positive-dimensional orbit
        A: Algebra element
        branch: aff(C) chart branch

    Returns:
        Exact ExpPoly over the chart variables
    """
    chart = darboux_chart(orbit, branch)
    return chart_hamiltonian(chart, A)


def chart_hamiltonian(chart: DarbouxChart, A: AlgElement) -> ExpPoly:
    if A.algebra.name != chart.orbit.algebra:
        raise UsageError(f"Element of {A.algebra.name} on a {chart.orbit.algebra} orbit")
    total = ExpPoly.zero(chart.chart_vars)
    for f, a in zip(chart.embed, A.coords):
        if not a.is_zero():
            total = total + f.scale(a)
    return total


def chart_poisson(chart: DarbouxChart, f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Lambda^{ij} d_i f d_j g for the chart tensor"""
    names = chart.chart_vars.names
    total = ExpPoly.zero(chart.chart_vars)
    for i, row in enumerate(chart.poisson_tensor):
        for j, c in enumerate(row):
            if not c.is_zero():
                total = total + (f.partial(names[i]) * g.partial(names[j])).scale(c)
    return total


def kirillov_form(orbit: OrbitDescriptor, F: DualVector, Z: AlgElement, T: AlgElement):
    """
    Kirillov form omega_F(xi_Z, xi_T) = <F, [Z, T]>

    Args:
        orbit: Orbit that must contain F
        F: Point of the orbit
        Z: First algebra element
        T: Second algebra element

    Returns:
        Exact scalar for rational F, float otherwise
    """
    if not on_orbit(orbit, F):
        raise UsageError(f"{F} does not lie on {orbit}")
    return F.pair(bracket(Z, T))


def verify_darboux(orbit: OrbitDescriptor, branch: int = 0, logger=None) -> SuiteReport:
    """
    Check that the chart is symplectic for the Kirillov form

    For each basis pair (Z, T) the chart pairing <F(x), [Z, T]> must equal the
    standard-form evaluation {Z~, T~}. The suite also checks the orbit
    invariant identically in the chart and that the chart is immersive at a
    sample point.

    Args:
        orbit: Positive-dimensional orbit
        branch: aff(C) chart branch
        logger: Optional AppLogger

    Returns:
        SuiteReport with one case per basis pair
    """
    chart = darboux_chart(orbit, branch)
    alg = chart.algebra
    label = f"{orbit}" + (f"[k={branch}]" if orbit.algebra == "affC" else "")
    report = SuiteReport("darboux", config={"orbit": label})
    elems = alg.basis_elements()
    for i, Z in enumerate(elems):
        for j, T in enumerate(elems):
            if j <= i:
                continue
            lhs = chart_hamiltonian(chart, bracket(Z, T))
            rhs = chart_poisson(chart, chart_hamiltonian(chart, Z), chart_hamiltonian(chart, T))
            report.add(exact_case(f"{label}:omega({alg.basis[i]},{alg.basis[j]})", lhs - rhs))

    if orbit.algebra == "sl2R":
        x, h, y = chart.embed[0].scale(Fraction(1, 2)), chart.embed[1].scale(Fraction(1, 2)), \
            chart.embed[2].scale(Fraction(-1, 2))
        expected = ZERO if orbit.lam is None else ExactScalar.coerce(orbit.lam) ** 2
        if orbit.family.startswith("sl2_twofold"):
            expected = -expected
        report.add(exact_case(f"{label}:casimir", x * x + h * h - y * y - expected))

    sample = [0.3 + 0.1 * k for k in range(len(chart.chart_vars))]
    jac = np.array([[e.partial(name).evaluate(sample) for name in chart.chart_vars.names]
                    for e in chart.embed])
    rank = int(np.linalg.matrix_rank(jac, tol=1e-9))
    status = PASS if rank == orbit.dim else FAIL
    report.add(CaseResult(f"{label}:immersion", status, None, 0.0,
                          f"Jacobian rank {rank} at {sample}, orbit dim {orbit.dim}"))

    msg = f"[Orbits] Darboux check {label}: {'pass' if report.passed else 'FAIL'}"
    if logger:
        logger.info(msg)
    else:
        logging.info(msg)
    return report
