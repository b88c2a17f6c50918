"""
Differential operators with shifts over ExpPoly coefficients.

A term (coeff, derivs, shifts) acts as

    u  ->  coeff(x) * (d^derivs u)(x + shifts)

Derivatives and shifts commute, so this normal form is closed under
composition: moving a derivative past a coefficient uses the Leibniz rule,
moving a shift past a coefficient shifts the coefficient.
"""

import math
from typing import Dict, Iterator, Optional, Sequence, Tuple

from .errors import UsageError
from .symalg import ExactScalar, ExpPoly, VarSet, ZERO


OpKey = Tuple[Tuple[int, ...], Tuple[ExactScalar, ...]]


def _multi_binomial(top: Sequence[int], bottom: Sequence[int]) -> int:
    result = 1
    for t, b in zip(top, bottom):
        result *= math.comb(t, b)
    return result


def _sub_indices(beta: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """All multi-indices gamma <= beta"""
    if not beta:
        yield ()
        return
    for head in range(beta[0] + 1):
        for tail in _sub_indices(beta[1:]):
            yield (head,) + tail


class DiffOperator:
    """Immutable finite sum of coeff * derivative * shift terms"""

    __slots__ = ("varset", "_terms")

    def __init__(self, varset: VarSet, terms: Optional[Dict[OpKey, ExpPoly]] = None):
        """
        Initialize operator in canonical form

        Args:
            varset: Variables of the coefficients and of the functions acted on
            terms: Map from (derivs, shifts) to coefficient
        """
        n = len(varset)
        canon: Dict[OpKey, ExpPoly] = {}
        for (derivs, shifts), coeff in (terms or {}).items():
            derivs = tuple(int(d) for d in derivs)
            shifts = tuple(ExactScalar.coerce(s) for s in shifts)
            if len(derivs) != n or len(shifts) != n or any(d < 0 for d in derivs):
                raise UsageError(f"Operator term {derivs}, {shifts} does not match {varset}")
            if coeff.varset != varset:
                raise UsageError(f"Coefficient over {coeff.varset}, operator over {varset}")
            key = (derivs, shifts)
            total = canon[key] + coeff if key in canon else coeff
            if total.is_zero():
                canon.pop(key, None)
            else:
                canon[key] = total
        object.__setattr__(self, "varset", varset)
        object.__setattr__(self, "_terms", canon)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    # Constructors

    @classmethod
    def zero(cls, varset: VarSet) -> "DiffOperator":
        return cls(varset)

    @classmethod
    def multiplication(cls, f: ExpPoly) -> "DiffOperator":
        n = len(f.varset)
        return cls(f.varset, {((0,) * n, (ZERO,) * n): f})

    @classmethod
    def identity(cls, varset: VarSet) -> "DiffOperator":
        return cls.multiplication(ExpPoly.constant(varset, 1))

    @classmethod
    def derivative(cls, varset: VarSet, name: str, order: int = 1) -> "DiffOperator":
        derivs = [0] * len(varset)
        derivs[varset.index(name)] = order
        return cls(varset, {(tuple(derivs), (ZERO,) * len(varset)): ExpPoly.constant(varset, 1)})

    @classmethod
    def shift_operator(cls, varset: VarSet, name: str, amount) -> "DiffOperator":
        shifts = [ZERO] * len(varset)
        shifts[varset.index(name)] = ExactScalar.coerce(amount)
        return cls(varset, {((0,) * len(varset), tuple(shifts)): ExpPoly.constant(varset, 1)})

    @classmethod
    def term(cls, coeff: ExpPoly, derivs: Sequence[int], shifts: Optional[Sequence] = None) -> "DiffOperator":
        n = len(coeff.varset)
        return cls(coeff.varset, {(tuple(derivs), tuple(shifts) if shifts else (ZERO,) * n): coeff})

    # Accessors

    def terms(self) -> Iterator[Tuple[OpKey, ExpPoly]]:
        for key in sorted(self._terms, key=lambda k: (sum(k[0]), k[0], [s.sort_key() for s in k[1]])):
            yield key, self._terms[key]

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def order(self) -> int:
        return max((sum(d) for d, _ in self._terms), default=0)

    def has_shifts(self) -> bool:
        return any(not s.is_zero() for _, shifts in self._terms for s in shifts)

    # Linear structure

    def _check(self, other: "DiffOperator") -> None:
        if self.varset != other.varset:
            raise UsageError(f"Operator variable mismatch: {self.varset} vs {other.varset}")

    def __add__(self, other: "DiffOperator") -> "DiffOperator":
        self._check(other)
        merged = dict(self._terms)
        for key, coeff in other._terms.items():
            merged[key] = merged[key] + coeff if key in merged else coeff
        return DiffOperator(self.varset, merged)

    def __neg__(self) -> "DiffOperator":
        return DiffOperator(self.varset, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: "DiffOperator") -> "DiffOperator":
        return self + (-other)

    def scale(self, factor) -> "DiffOperator":
        if isinstance(factor, ExpPoly):
            return DiffOperator.multiplication(factor) @ self
        return DiffOperator(self.varset, {k: c.scale(factor) for k, c in self._terms.items()})

    def __matmul__(self, other: "DiffOperator") -> "DiffOperator":
        return compose(self, other)

    def __call__(self, f: ExpPoly) -> ExpPoly:
        return apply(self, f)

    def rename(self, varset: VarSet) -> "DiffOperator":
        return DiffOperator(varset, {k: c.rename(varset) for k, c in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.varset == other.varset and self._terms == other._terms

    def __hash__(self):
        return hash((self.varset, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return "0"
        names = self.varset.names
        parts = []
        for (derivs, shifts), coeff in self.terms():
            text = f"[{coeff}]"
            for name, d in zip(names, derivs):
                if d == 1:
                    text += f" d_{name}"
                elif d > 1:
                    text += f" d_{name}^{d}"
            moved = [f"{name} -> {name} + {s}" for name, s in zip(names, shifts) if not s.is_zero()]
            if moved:
                text += " T(" + ", ".join(moved) + ")"
            parts.append(text)
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self.varset}, {self})"


def apply(op: DiffOperator, f: ExpPoly) -> ExpPoly:
    """
    Apply an operator to an expression exactly

    Args:
        op: Operator
        f: Expression over the same variables

    Returns:
        sum coeff * shift(d^derivs f, shifts)
    """
    if op.varset != f.varset:
        raise UsageError(f"Operator over {op.varset} applied to expression over {f.varset}")
    total = ExpPoly.zero(f.varset)
    for (derivs, shifts), coeff in op._terms.items():
        moved = f.partial_multi(derivs).shift_all(shifts)
        if not moved.is_zero():
            total = total + coeff * moved
    return total


def compose(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """
    Exact composition a o b

    For terms c1 d^b1 T_s1 and c2 d^b2 T_s2 the product is
    sum_g C(b1, g) c1 * T_s1(d^g c2) d^(b1 - g + b2) T_(s1 + s2).

    Args:
        a: Left operator (applied last)
        b: Right operator (applied first)

    Returns:
        Canonical composite operator
    """
    a._check(b)
    out: Dict[OpKey, ExpPoly] = {}
    for (b1, s1), c1 in a._terms.items():
        for (b2, s2), c2 in b._terms.items():
            shifts = tuple(x + y for x, y in zip(s1, s2))
            for gamma in _sub_indices(b1):
                dc2 = c2.partial_multi(gamma)
                if dc2.is_zero():
                    continue
                coeff = (c1 * dc2.shift_all(s1)).scale(_multi_binomial(b1, gamma))
                derivs = tuple(x - g + y for x, g, y in zip(b1, gamma, b2))
                key = (derivs, shifts)
                out[key] = out[key] + coeff if key in out else coeff
    return DiffOperator(a.varset, out)


def commutator(a: DiffOperator, b: DiffOperator) -> DiffOperator:
    """[a, b] = a o b - b o a"""
    return compose(a, b) - compose(b, a)
