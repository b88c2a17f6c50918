"""
Structure-constant presentations of aff(R), aff(C) and sl(2,R).

Brackets and ad-matrices are exact; exponentials of ad-matrices are floats,
computed by scaling and squaring and checked against a truncated series.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from .errors import UsageError
from .symalg import ExactScalar, ZERO


Coord = Union[ExactScalar, float]


@dataclass(frozen=True)
class LieAlgebra:
    """Real Lie algebra given by structure constants [e_i, e_j] = sum_k c[i][j][k] e_k"""

    name: str
    basis: Tuple[str, ...]
    structure: Tuple[Tuple[Tuple[ExactScalar, ...], ...], ...]
    group_dim: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def dual_basis(self) -> Tuple[str, ...]:
        return tuple(f"{b}*" for b in self.basis)

    def index(self, symbol: str) -> int:
        try:
            return self.basis.index(symbol)
        except ValueError:
            raise UsageError(f"{self.name} has no basis element {symbol!r}") from None

    def element(self, coords: Sequence) -> "AlgElement":
        return AlgElement(self, tuple(coords))

    def basis_element(self, symbol: Union[str, int]) -> "AlgElement":
        pos = symbol if isinstance(symbol, int) else self.index(symbol)
        coords = [0] * self.dim
        coords[pos] = 1
        return AlgElement(self, tuple(coords))

    def basis_elements(self) -> List["AlgElement"]:
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "AlgElement":
        return AlgElement(self, (0,) * self.dim)

    def dual(self, coords: Sequence) -> "DualVector":
        return DualVector(self, tuple(coords))

    def antisymmetry_violations(self) -> List[Tuple[int, int, int]]:
        """Index triples where c[i][j][k] != -c[j][i][k]"""
        bad = []
        n = self.dim
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.structure[i][j][k] != -self.structure[j][i][k]:
                        bad.append((i, j, k))
        return bad

    def jacobi_violations(self) -> List[Tuple[int, int, int]]:
        """Basis triples whose Jacobi sum is nonzero"""
        bad = []
        elems = self.basis_elements()
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                for k, c in enumerate(elems):
                    total = bracket(a, bracket(b, c)) + bracket(b, bracket(c, a)) + bracket(c, bracket(a, b))
                    if not total.is_zero():
                        bad.append((i, j, k))
        return bad


def _structure(basis: Sequence[str], table: Dict[Tuple[str, str], Dict[str, int]]):
    n = len(basis)
    pos = {b: i for i, b in enumerate(basis)}
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for (a, b), image in table.items():
        for target, value in image.items():
            c[pos[a]][pos[b]][pos[target]] = ExactScalar(value)
            c[pos[b]][pos[a]][pos[target]] = ExactScalar(-value)
    return tuple(tuple(tuple(row) for row in plane) for plane in c)


def aff_r() -> LieAlgebra:
    """aff(R): the only nonzero bracket is [X, Y] = Y"""
    basis = ("X", "Y")
    return LieAlgebra("affR", basis, _structure(basis, {("X", "Y"): {"Y": 1}}), 2)


def aff_c() -> LieAlgebra:
    """aff(C) as a 4-dimensional real algebra"""
    basis = ("X1", "X2", "Y1", "Y2")
    table = {
        ("X1", "Y1"): {"Y1": 1},
        ("X1", "Y2"): {"Y2": 1},
        ("X2", "Y1"): {"Y2": 1},
        ("X2", "Y2"): {"Y1": -1},
    }
    return LieAlgebra("affC", basis, _structure(basis, table), 4)


def sl2_r() -> LieAlgebra:
    """sl(2,R) in the basis (X, H, Y)"""
    basis = ("X", "H", "Y")
    table = {
        ("H", "X"): {"Y": 2},
        ("H", "Y"): {"X": 2},
        ("X", "Y"): {"H": -2},
    }
    return LieAlgebra("sl2R", basis, _structure(basis, table), 3)


ALGEBRAS = {"affR": aff_r(), "affC": aff_c(), "sl2R": sl2_r()}


def get_algebra(name: str) -> LieAlgebra:
    """
    Look up one of the supported algebras

    Args:
        name: affR, affC or sl2R

    Returns:
        LieAlgebra instance
    """
    try:
        return ALGEBRAS[name]
    except KeyError:
        raise UsageError(f"Unknown algebra {name!r} (expected one of: {', '.join(ALGEBRAS)})") from None


def _coerce_coord(value) -> Coord:
    if isinstance(value, (ExactScalar, int, Fraction)) and not isinstance(value, bool):
        return ExactScalar.coerce(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, str):
        return ExactScalar.coerce(value)
    raise TypeError(f"Unsupported coordinate type {type(value).__name__}")


def _format_combination(coords, symbols) -> str:
    parts = []
    for c, sym in zip(coords, symbols):
        if isinstance(c, ExactScalar):
            if c.is_zero():
                continue
            parts.append(f"{sym}" if c == 1 else f"({c})*{sym}")
        elif c != 0.0:
            parts.append(f"{c:g}*{sym}")
    return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class AlgElement:
    """Element of a Lie algebra in basis coordinates"""

    algebra: LieAlgebra
    coords: Tuple[ExactScalar, ...]

    def __post_init__(self):
        coords = tuple(ExactScalar.coerce(c) for c in self.coords)
        if len(coords) != self.algebra.dim:
            raise UsageError(
                f"{self.algebra.name} elements have {self.algebra.dim} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    def _check(self, other: "AlgElement") -> None:
        if other.algebra.name != self.algebra.name:
            raise UsageError(f"Algebra mismatch: {self.algebra.name} vs {other.algebra.name}")

    def __add__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "AlgElement") -> "AlgElement":
        self._check(other)
        return AlgElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "AlgElement":
        return AlgElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, scalar) -> "AlgElement":
        s = ExactScalar.coerce(scalar)
        return AlgElement(self.algebra, tuple(a * s for a in self.coords))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def __str__(self):
        return _format_combination(self.coords, self.algebra.basis)


@dataclass(frozen=True)
class DualVector:
    """Linear functional in dual-basis coordinates (exact or float)"""

    algebra: LieAlgebra
    coords: Tuple[Coord, ...]

    def __post_init__(self):
        coords = tuple(_coerce_coord(c) for c in self.coords)
        if len(coords) != self.algebra.dim:
            raise UsageError(
                f"{self.algebra.name} functionals have {self.algebra.dim} coordinates, got {len(coords)}")
        object.__setattr__(self, "coords", coords)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, ExactScalar) for c in self.coords)

    def as_floats(self) -> np.ndarray:
        return np.array([complex(c).real if isinstance(c, ExactScalar) else c for c in self.coords])

    def pair(self, A: AlgElement):
        """<F, A>: exact when F is exact, float otherwise"""
        if A.algebra.name != self.algebra.name:
            raise UsageError(f"Algebra mismatch: {self.algebra.name} vs {A.algebra.name}")
        if self.is_exact:
            total = ZERO
            for f, a in zip(self.coords, A.coords):
                total = total + f * a
            return total
        return float(np.dot(self.as_floats(), [float(a.re) for a in A.coords]))

    def __str__(self):
        return _format_combination(self.coords, self.algebra.dual_basis)


def bracket(A: AlgElement, B: AlgElement) -> AlgElement:
    """
    Lie bracket by bilinear extension of the structure constants

    Args:
        A: First element
        B: Second element (same algebra)

    Returns:
        [A, B]
    """
    A._check(B)
    alg = A.algebra
    n = alg.dim
    out = [ZERO] * n
    for i, a in enumerate(A.coords):
        if a.is_zero():
            continue
        for j, b in enumerate(B.coords):
            if b.is_zero():
                continue
            ab = a * b
            for k in range(n):
                c = alg.structure[i][j][k]
                if not c.is_zero():
                    out[k] = out[k] + ab * c
    return AlgElement(alg, tuple(out))


def ad_matrix(U: AlgElement) -> List[List[ExactScalar]]:
    """Exact matrix of ad_U; column j holds the coordinates of [U, e_j]"""
    alg = U.algebra
    n = alg.dim
    M = [[ZERO] * n for _ in range(n)]
    for j, e in enumerate(alg.basis_elements()):
        image = bracket(U, e)
        for k in range(n):
            M[k][j] = image.coords[k]
    return M


def killing_form(A: AlgElement, B: AlgElement) -> ExactScalar:
    """tr(ad_A ad_B), exact"""
    A._check(B)
    a = ad_matrix(A)
    b = ad_matrix(B)
    n = A.algebra.dim
    total = ZERO
    for i in range(n):
        for k in range(n):
            total = total + a[i][k] * b[k][i]
    return total


def to_float_matrix(M: Sequence[Sequence[ExactScalar]]) -> np.ndarray:
    return np.array([[float(c.re) for c in row] for row in M], dtype=float)


def matrix_exp(M: np.ndarray, ntaylor: int = 16) -> np.ndarray:
    """
    Matrix exponential by scaling and squaring

    The scaling exponent is chosen so the scaled matrix has norm at most 1/2;
    the Taylor polynomial is evaluated in Horner form.

    Args:
        M: Square matrix
        ntaylor: Taylor order for the scaled matrix

    Returns:
        exp(M)
    """
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    norm = np.linalg.norm(M, 1)
    nsquare = max(0, int(math.ceil(math.log2(norm))) + 1) if norm > 0 else 0
    SM = M / 2.0 ** nsquare

    tc = np.zeros(ntaylor + 1)
    tc[0] = 1.0
    for i in range(ntaylor):
        tc[i + 1] = tc[i] / (i + 1)

    EM = np.identity(n) * tc[ntaylor]
    for i in range(ntaylor - 1, -1, -1):
        EM = SM @ EM
        EM += np.identity(n) * tc[i]

    for _ in range(nsquare):
        EM = EM @ EM
    return EM


def series_exp(M: np.ndarray, terms: int = 30) -> np.ndarray:
    """Truncated power series sum_{n<terms} M^n / n!"""
    M = np.asarray(M, dtype=float)
    n = M.shape[0]
    total = np.identity(n)
    power = np.identity(n)
    for k in range(1, terms):
        power = power @ M / k
        total = total + power
    return total


def relative_discrepancy(A: np.ndarray, B: np.ndarray) -> float:
    scale = max(np.linalg.norm(B), 1e-300)
    return float(np.linalg.norm(A - B) / scale)


def exp_neg_ad(U: AlgElement) -> np.ndarray:
    """
    exp(-ad_U) as a float matrix

    Args:
        U: Algebra element

    Returns:
        Matrix whose column j is the image of e_j
    """
    return matrix_exp(-to_float_matrix(ad_matrix(U)))


def exp_neg_ad_checked(U: AlgElement, terms: int = 30) -> Tuple[np.ndarray, float]:
    """exp(-ad_U) together with its relative discrepancy from the series oracle"""
    M = -to_float_matrix(ad_matrix(U))
    squared = matrix_exp(M)
    return squared, relative_discrepancy(squared, series_exp(M, terms))


def coadjoint(U: AlgElement, F: DualVector) -> DualVector:
    """
    Coadjoint action K(exp U)F with <K(exp U)F, Z> = <F, exp(-ad_U) Z>

    Args:
        U: Algebra element
        F: Functional (same algebra)

    Returns:
        Image functional with float coordinates
    """
    if U.algebra.name != F.algebra.name:
        raise UsageError(f"Algebra mismatch: {U.algebra.name} vs {F.algebra.name}")
    E = exp_neg_ad(U)
    return DualVector(F.algebra, tuple(float(v) for v in E.T @ F.as_floats()))


# aff(R) closed forms

def affr_translation_entry(alpha: float, beta: float) -> float:
    """Entry (2,1) of exp(-ad_U) for U = alpha X + beta Y: beta (1 - e^{-alpha}) / alpha"""
    if alpha == 0:
        return beta
    return beta * (-math.expm1(-alpha)) / alpha


def affr_printed_translation_entry(alpha: float, beta: float) -> float:
    """Printed closed form alpha + beta + (alpha/beta)(1 - e^beta), kept for comparison"""
    if beta == 0:
        return float("nan")
    return alpha + beta + (alpha / beta) * (1 - math.exp(beta))


def affr_group_exp(alpha: float, beta: float, t: float = 1.0) -> Tuple[float, float]:
    """
    Group element exp(t(alpha X + beta Y)) of Aff0(R) as (a, b) acting by y -> a y + b

    Args:
        alpha: X coefficient
        beta: Y coefficient
        t: Time parameter

    Returns:
        (a, b) with a > 0
    """
    a = math.exp(alpha * t)
    if alpha == 0:
        return a, beta * t
    return a, beta * math.expm1(alpha * t) / alpha
