"""
Poisson structures, the bidifferential operators P^r, the Moyal star product
and left star-multiplication operators.

    u *_h v = u v + sum_{r >= 1} c_r (h/2i)^r P^r(u, v)

with c_r = 1/r! (factorial variant, the default) or c_r = 1/r (reciprocal
compatibility variant).
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Dict, List, Optional, Sequence, Tuple

from .diffop import DiffOperator
from .errors import UnsupportedClassError, UsageError
from .liealg import bracket, get_algebra
from .orbits import OrbitDescriptor, chart_hamiltonian, darboux_chart
from .reports import CaseResult, PASS, FAIL, SuiteReport, exact_case
from .symalg import ExactScalar, ExpPoly, VarSet, ONE, ZERO, I


FACTORIAL = "factorial"
RECIPROCAL = "reciprocal"
VARIANTS = (FACTORIAL, RECIPROCAL)

DEFAULT_ORDER = 6


def _determinant(rows: List[List[ExactScalar]]) -> ExactScalar:
    """Exact determinant by Gaussian elimination"""
    m = [list(r) for r in rows]
    n = len(m)
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if not m[r][col].is_zero()), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            det = -det
        det = det * m[col][col]
        inv = m[col][col].inverse()
        for r in range(col + 1, n):
            factor = m[r][col] * inv
            if factor.is_zero():
                continue
            for c in range(col, n):
                m[r][c] = m[r][c] - factor * m[col][c]
    return det


@dataclass(frozen=True)
class PoissonStructure:
    """Constant antisymmetric invertible tensor Lambda over an even number of variables"""

    varset: VarSet
    tensor: Tuple[Tuple[ExactScalar, ...], ...]

    def __post_init__(self):
        n = len(self.varset)
        tensor = tuple(tuple(ExactScalar.coerce(c) for c in row) for row in self.tensor)
        object.__setattr__(self, "tensor", tensor)
        if n % 2 or len(tensor) != n or any(len(row) != n for row in tensor):
            raise UsageError(f"Poisson tensor must be {n}x{n} with {n} even")
        for i in range(n):
            for j in range(n):
                if tensor[i][j] != -tensor[j][i]:
                    raise UsageError("Poisson tensor is not antisymmetric")
        if _determinant([list(r) for r in tensor]).is_zero():
            raise UsageError("Poisson tensor is degenerate")

    @classmethod
    def standard(cls, varset: VarSet = VarSet(("p", "q"))) -> "PoissonStructure":
        """Lambda^{pq} = 1, Lambda^{qp} = -1 for each (p, q) pair in variable order"""
        n = len(varset)
        rows = [[ZERO] * n for _ in range(n)]
        for k in range(0, n, 2):
            rows[k][k + 1] = ONE
            rows[k + 1][k] = -ONE
        return cls(varset, tuple(tuple(r) for r in rows))

    @classmethod
    def from_chart(cls, chart) -> "PoissonStructure":
        return cls(chart.chart_vars, chart.poisson_tensor)

    @property
    def pairs(self) -> List[Tuple[int, int, ExactScalar]]:
        """Nonzero entries (i, j, Lambda^{ij})"""
        return [(i, j, c) for i, row in enumerate(self.tensor) for j, c in enumerate(row) if not c.is_zero()]

    def partner(self, i: int) -> Optional[int]:
        """The unique j with Lambda^{ij} != 0, or None when row i is not a Darboux pairing"""
        cols = [j for j, c in enumerate(self.tensor[i]) if not c.is_zero()]
        return cols[0] if len(cols) == 1 else None

    def paired_variables(self) -> List[str]:
        return [self.varset.names[i] for i, row in enumerate(self.tensor) if any(not c.is_zero() for c in row)]


@dataclass(frozen=True)
class PlanckParam:
    """Deformation parameter h, exact and nonzero"""

    h: ExactScalar = ONE

    def __post_init__(self):
        h = ExactScalar.coerce(self.h)
        if h.is_zero():
            raise UsageError("Planck parameter h must be nonzero")
        object.__setattr__(self, "h", h)

    def __str__(self):
        return str(self.h)


def as_planck(h) -> PlanckParam:
    if isinstance(h, PlanckParam):
        return h
    return PlanckParam(ExactScalar.coerce(h if h is not None else 1))


def series_coefficient(r: int, variant: str = FACTORIAL) -> ExactScalar:
    """h-independent factor a_r with c_r (h/2i)^r = a_r h^r"""
    if variant not in VARIANTS:
        raise UsageError(f"Unknown star variant {variant!r} (expected one of: {', '.join(VARIANTS)})")
    if r == 0:
        return ONE
    weight = math.factorial(r) if variant == FACTORIAL else r
    return (ExactScalar(2) * I) ** (-r) / weight


def _check(f: ExpPoly, g: ExpPoly, P: PoissonStructure) -> None:
    if f.varset != P.varset or g.varset != P.varset:
        raise UsageError(f"Variable mismatch: {f.varset}, {g.varset} vs Poisson structure over {P.varset}")


def poisson(f: ExpPoly, g: ExpPoly, P: PoissonStructure) -> ExpPoly:
    """
    Poisson bracket Lambda^{ij} d_i f d_j g

    Args:
        f: First function
        g: Second function
        P: Poisson structure over the same variables

    Returns:
        {f, g}
    """
    _check(f, g, P)
    names = P.varset.names
    total = ExpPoly.zero(P.varset)
    for i, j, c in P.pairs:
        total = total + (f.partial(names[i]) * g.partial(names[j])).scale(c)
    return total


def _multinomial(r: int, counts) -> int:
    result = math.factorial(r)
    for k in counts:
        result //= math.factorial(k)
    return result


def _derivative(f: ExpPoly, orders: Tuple[int, ...], cache: Dict) -> ExpPoly:
    if orders not in cache:
        cache[orders] = f.partial_multi(orders)
    return cache[orders]


def _index_patterns(P: PoissonStructure, r: int):
    """Yield (f orders, g orders, weight) summing Lambda^{i1 j1}...Lambda^{ir jr} over index tuples"""
    pairs = P.pairs
    n = len(P.varset)
    for combo in combinations_with_replacement(range(len(pairs)), r):
        counts = Counter(combo)
        df = [0] * n
        dg = [0] * n
        weight = ExactScalar(_multinomial(r, counts.values()))
        for m, k in counts.items():
            i, j, c = pairs[m]
            df[i] += k
            dg[j] += k
            weight = weight * c ** k
        yield tuple(df), tuple(dg), weight


def p_r(f: ExpPoly, g: ExpPoly, P: PoissonStructure, r: int) -> ExpPoly:
    """
    P^r(f, g) = Lambda^{i1 j1}...Lambda^{ir jr} d_{i1..ir} f d_{j1..jr} g

    Ordered index tuples are grouped into multisets with multinomial weights,
    which is exact because partial derivatives commute.

    Args:
        f: First argument
        g: Second argument
        P: Poisson structure
        r: Order (r = 0 gives the product f g)

    Returns:
        Exact P^r(f, g)
    """
    _check(f, g, P)
    if r < 0:
        raise UsageError("r must be non-negative")
    return _p_r(f, g, P, r, {}, {})


def _p_r(f: ExpPoly, g: ExpPoly, P: PoissonStructure, r: int, fcache: Dict, gcache: Dict) -> ExpPoly:
    # fcache and gcache hold derivatives of f and g and may be shared across calls
    if r == 0:
        return f * g
    out: Dict = {}
    for df, dg, weight in _index_patterns(P, r):
        a = _derivative(f, df, fcache)
        if a.is_zero():
            continue
        b = _derivative(g, dg, gcache)
        if b.is_zero():
            continue
        for key, c in (a * b).term_map().items():
            s = out.get(key, ZERO) + c * weight
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
    return ExpPoly._raw(P.varset, out)


def series_bound(f: ExpPoly, g: ExpPoly, P: PoissonStructure) -> Optional[int]:
    """
    Provable bound R with P^r(f, g) = 0 for all r > R, or None if none is known

    Requires Lambda to pair each variable with exactly one partner. Each pair
    (i, j) can be used at most min(deg_f x_i, deg_g x_j) times, where the
    degree of a variable carrying a frequency is unbounded.
    """
    _check(f, g, P)
    names = P.varset.names
    total = 0
    for i, j, _ in P.pairs:
        if P.partner(i) is None:
            return None
        df = f.polynomial_degree(names[i])
        dg = g.polynomial_degree(names[j])
        if df is None and dg is None:
            return None
        total += min(d for d in (df, dg) if d is not None)
    return total


@dataclass(frozen=True)
class StarResult:
    """Truncated star product with its exactness flag"""

    value: ExpPoly
    order: int
    exact: bool
    bound: Optional[int]
    next_term_zero: bool

    def __str__(self):
        return str(self.value)


def star(f: ExpPoly, g: ExpPoly, P: PoissonStructure, h=None, order: int = DEFAULT_ORDER,
         variant: str = FACTORIAL) -> StarResult:
    """
    Truncated Moyal product f *_h g through order h^order

    Args:
        f: Left factor
        g: Right factor
        P: Poisson structure
        h: Planck parameter (default 1)
        order: Highest r kept
        variant: factorial (1/r!) or reciprocal (1/r)

    Returns:
        StarResult; exact is True when the series provably terminates within order
    """
    if order < 1:
        raise UsageError("order must be at least 1")
    hp = as_planck(h)
    total = f * g
    for r in range(1, order + 1):
        term = p_r(f, g, P, r)
        if not term.is_zero():
            total = total + term.scale(series_coefficient(r, variant) * hp.h ** r)
    bound = series_bound(f, g, P)
    next_zero = p_r(f, g, P, order + 1).is_zero()
    return StarResult(total, order, bound is not None and bound <= order, bound, next_zero)


def star_coefficient(f: ExpPoly, g: ExpPoly, P: PoissonStructure, k: int,
                     variant: str = FACTORIAL) -> ExpPoly:
    """Exact coefficient of h^k in f * g"""
    return p_r(f, g, P, k).scale(series_coefficient(k, variant))


def associator_coefficients(f: ExpPoly, g: ExpPoly, u: ExpPoly, P: PoissonStructure, max_k: int,
                            variant: str = FACTORIAL) -> List[ExpPoly]:
    """
    Exact coefficients of h^0 .. h^max_k in (f * g) * u - f * (g * u)

    The inner coefficients of f * g and g * u are expanded once and shared
    across every k, as are the derivatives of each factor.

    Args:
        f, g, u: Factors
        P: Poisson structure
        max_k: Highest power of h
        variant: Series coefficient variant

    Returns:
        List whose k-th entry is the h^k coefficient of the associator
    """
    _check(f, g, P)
    _check(g, u, P)
    if max_k < 0:
        raise UsageError("max_k must be non-negative")
    coeffs = [series_coefficient(k, variant) for k in range(max_k + 1)]
    fcache: Dict = {}
    gcache: Dict = {}
    ucache: Dict = {}
    fg = [_p_r(f, g, P, a, fcache, gcache).scale(coeffs[a]) for a in range(max_k + 1)]
    gu = [_p_r(g, u, P, a, gcache, ucache).scale(coeffs[a]) for a in range(max_k + 1)]
    fg_caches: List[Dict] = [{} for _ in fg]
    gu_caches: List[Dict] = [{} for _ in gu]

    result = []
    for k in range(max_k + 1):
        total = ExpPoly.zero(P.varset)
        for a in range(k + 1):
            b = k - a
            left = _p_r(fg[a], u, P, b, fg_caches[a], ucache)
            right = _p_r(f, gu[a], P, b, fcache, gu_caches[a])
            total = total + (left - right).scale(coeffs[b])
        result.append(total)
    return result


def associator_coefficient(f: ExpPoly, g: ExpPoly, u: ExpPoly, P: PoissonStructure, k: int,
                           variant: str = FACTORIAL) -> ExpPoly:
    """Exact coefficient of h^k in (f * g) * u - f * (g * u)"""
    return associator_coefficients(f, g, u, P, k, variant)[k]


def exponential_star(a: Sequence, b: Sequence, P: PoissonStructure, h=None) -> ExpPoly:
    """
    Closed form e^{a.x} * e^{b.x} = exp((h/2i) a Lambda b) e^{(a+b).x} of the factorial product

    Args:
        a: Frequency vector of the left exponential
        b: Frequency vector of the right exponential
        P: Poisson structure
        h: Planck parameter

    Returns:
        Single-term ExpPoly carrying the scalar factor as exponent constant
    """
    hp = as_planck(h)
    a = [ExactScalar.coerce(x) for x in a]
    b = [ExactScalar.coerce(x) for x in b]
    pairing = ZERO
    for i, j, c in P.pairs:
        pairing = pairing + a[i] * c * b[j]
    const = hp.h / (ExactScalar(2) * I) * pairing
    freqs = {name: x + y for name, x, y in zip(P.varset.names, a, b)}
    return ExpPoly.exponential(P.varset, freqs, const=const)


def _bopp_symbol(f: ExpPoly, P: PoissonStructure, eps: ExactScalar) -> Dict:
    """f(x + eps Lambda d) as a map (derivs, shifts) -> coefficient"""
    names = P.varset.names
    n = len(names)
    vs = P.varset
    out: Dict = {}
    for (exps, freqs, const), c in f.terms():
        shifts = [ZERO] * n
        for i, j, lam_ij in P.pairs:
            if not freqs[i].is_zero():
                shifts[j] = shifts[j] + eps * freqs[i] * lam_ij
        exp_part = ExpPoly(vs, {((0,) * n, freqs, const): c})
        symbol = {(0,) * n: exp_part}
        for i, power in enumerate(exps):
            x_i = ExpPoly.variable(vs, names[i])
            for _ in range(power):
                nxt: Dict = {}
                for derivs, coeff in symbol.items():
                    key = derivs
                    nxt[key] = nxt[key] + coeff * x_i if key in nxt else coeff * x_i
                    for j, lam_ij in enumerate(P.tensor[i]):
                        if lam_ij.is_zero():
                            continue
                        raised = derivs[:j] + (derivs[j] + 1,) + derivs[j + 1:]
                        add = coeff.scale(eps * lam_ij)
                        nxt[raised] = nxt[raised] + add if raised in nxt else add
                symbol = nxt
        for derivs, coeff in symbol.items():
            key = (derivs, tuple(shifts))
            out[key] = out[key] + coeff if key in out else coeff
    return out


def left_star_operator(f: ExpPoly, P: PoissonStructure, h=None, variant: str = FACTORIAL) -> DiffOperator:
    """
    Left star multiplication u -> (i/h) f *_h u as an exact operator

    For the factorial product this is the Bopp shift f(x + (h/2i) Lambda d):
    polynomial factors expand into finitely many derivatives and each
    exponential e^{lam.x} becomes the shift by (h/2i) lam Lambda. For the
    reciprocal variant the series is summed term by term, which is finite
    only when f is polynomial in every Lambda-paired variable.

    Args:
        f: Symbol
        P: Poisson structure
        h: Planck parameter
        variant: factorial or reciprocal

    Returns:
        DiffOperator over the variables of P

    Raises:
        UnsupportedClassError: reciprocal variant with exponential dependence on paired variables
    """
    if f.varset != P.varset:
        raise UsageError(f"Symbol over {f.varset}, Poisson structure over {P.varset}")
    hp = as_planck(h)
    prefactor = I / hp.h
    if variant == FACTORIAL:
        eps = hp.h / (ExactScalar(2) * I)
        return DiffOperator(P.varset, _bopp_symbol(f, P, eps)).scale(prefactor)

    if variant not in VARIANTS:
        raise UsageError(f"Unknown star variant {variant!r} (expected one of: {', '.join(VARIANTS)})")
    paired = P.paired_variables()
    if any(f.has_frequency_in(name) for name in paired):
        raise UnsupportedClassError(
            "Reciprocal star variant has no finite left operator for symbols exponential in "
            + ", ".join(name for name in paired if f.has_frequency_in(name)))
    max_r = sum(f.degree_in(name) for name in paired)
    n = len(P.varset)
    out: Dict = {}
    fcache: Dict = {}
    zero_shift = (ZERO,) * n
    for r in range(0, max_r + 1):
        weight_r = series_coefficient(r, variant) * hp.h ** r
        patterns = [((0,) * n, (0,) * n, ONE)] if r == 0 else _index_patterns(P, r)
        for df, dg, weight in patterns:
            a = _derivative(f, df, fcache)
            if a.is_zero():
                continue
            key = (dg, zero_shift)
            add = a.scale(weight * weight_r)
            out[key] = out[key] + add if key in out else add
    return DiffOperator(P.varset, out).scale(prefactor)


def _vanishing_case(label: str, A_t: ExpPoly, B_t: ExpPoly, P: PoissonStructure, algebra: str,
                    max_r: int) -> CaseResult:
    """P^r(A~, B~) = 0 for 2 <= r <= max_r; for sl2R P^2 need only be symmetric"""
    for r in range(2, max_r + 1):
        value = p_r(A_t, B_t, P, r)
        if algebra == "sl2R" and r == 2:
            asym = value - p_r(B_t, A_t, P, 2)
            if not asym.is_zero():
                return CaseResult(label, FAIL, str(asym), 1.0, "P^2 not symmetric")
            continue
        if not value.is_zero():
            return CaseResult(label, FAIL, str(value), 1.0, f"P^{r} does not vanish")
    note = f"P^r = 0 for 2 <= r <= {max_r}"
    if algebra == "sl2R":
        note = f"P^2 symmetric, P^r = 0 for 3 <= r <= {max_r}"
    return CaseResult(label, PASS, None, 0.0, note)


def star_commutator_check(algebra: str, orbit: OrbitDescriptor, order: int = DEFAULT_ORDER, h=None,
                          variant: str = FACTORIAL, branch: int = 0, max_r: int = 8,
                          logger=None) -> SuiteReport:
    """
    Check (i/h)A~ * (i/h)B~ - (i/h)B~ * (i/h)A~ = (i/h)[A,B]~ for every ordered basis pair

    Args:
        algebra: affR, affC or sl2R
        orbit: Positive-dimensional orbit of that algebra
        order: Truncation order of the star product
        h: Planck parameter
        variant: Series coefficient variant
        branch: aff(C) chart branch
        max_r: Highest r for the P^r vanishing checks (at least order + 2)
        logger: Optional AppLogger

    Returns:
        SuiteReport with a residual case and a vanishing case per pair
    """
    alg = get_algebra(algebra)
    if orbit.algebra != algebra:
        raise UsageError(f"Orbit {orbit} does not belong to {algebra}")
    hp = as_planck(h)
    chart = darboux_chart(orbit, branch)
    P = PoissonStructure.from_chart(chart)
    scale = I / hp.h
    label = f"{orbit}" + (f"[k={branch}]" if algebra == "affC" else "")
    report = SuiteReport("star", config={"orbit": label, "order": order, "h": str(hp.h), "variant": variant})
    max_r = max(max_r, order + 2)
    elems = alg.basis_elements()
    for i, A in enumerate(elems):
        for j, B in enumerate(elems):
            A_t = chart_hamiltonian(chart, A)
            B_t = chart_hamiltonian(chart, B)
            AB = star(A_t, B_t, P, hp, order, variant)
            BA = star(B_t, A_t, P, hp, order, variant)
            target = chart_hamiltonian(chart, bracket(A, B))
            residual = (AB.value - BA.value).scale(scale * scale) - target.scale(scale)
            pair = f"{alg.basis[i]},{alg.basis[j]}"
            exact = AB.exact and BA.exact
            report.add(exact_case(f"{label}:commutator({pair})", residual,
                                  "series exact" if exact else "truncated series"))
            report.add(_vanishing_case(f"{label}:vanishing({pair})", A_t, B_t, P, algebra, max_r))

    msg = f"[Moyal] Star commutator check {label}: {'pass' if report.passed else 'FAIL'}"
    if logger:
        logger.info(msg)
    else:
        logging.info(msg)
    return report
