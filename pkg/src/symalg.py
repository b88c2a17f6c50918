"""
Exact expression algebra for the orbitquant toolkit.

Every symbolic quantity in the toolkit is an ExpPoly: a finite sum of
Gaussian-rational coefficients times monomials in real chart variables times
exponentials of affine forms,

    sum  c * x1^a1 * ... * xn^an * exp(l1*x1 + ... + ln*xn + k)

with c, li, k Gaussian rationals. The class is closed under ring operations,
partial derivatives and complex shifts of a variable. The constant k stores
shift factors e^{l*a} that are not themselves Gaussian rationals, so shifting
never leaves the exact class.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .errors import UsageError


Rational = Union[int, Fraction]
_FRACTION_ZERO = Fraction(0)


class ExactScalar:
    """Gaussian rational a + b*i with exact Fraction parts"""

    __slots__ = ("re", "im")

    def __init__(self, re: Rational = 0, im: Rational = 0):
        """
        Initialize scalar

        Args:
            re: Real part (int or Fraction)
            im: Imaginary part (int or Fraction)
        """
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("ExactScalar accepts only integers and Fractions")
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @classmethod
    def _of(cls, re: Fraction, im: Fraction) -> "ExactScalar":
        # re and im must already be Fractions
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def coerce(cls, value) -> "ExactScalar":
        """Convert int, Fraction, ExactScalar or rational text to ExactScalar"""
        if isinstance(value, ExactScalar):
            return value
        if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
            return cls(value)
        if isinstance(value, str):
            from .grammar import parse_scalar
            return parse_scalar(value)
        raise TypeError(f"Cannot convert {type(value).__name__} to an exact scalar")

    # Arithmetic

    def __add__(self, other):
        if type(other) is ExactScalar:
            o = other
        else:
            try:
                o = ExactScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not (o.re or o.im):
            return self
        if not (self.re or self.im):
            return o
        return ExactScalar._of(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactScalar._of(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if type(other) is ExactScalar:
            o = other
        else:
            try:
                o = ExactScalar.coerce(other)
            except TypeError:
                return NotImplemented
        if not (self.im or o.im):
            return ExactScalar._of(self.re * o.re, _FRACTION_ZERO)
        return ExactScalar._of(self.re * o.re - self.im * o.im,
                               self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return ExactScalar._of(-self.re, -self.im)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "ExactScalar":
        norm = self.re * self.re + self.im * self.im
        if norm == 0:
            raise ZeroDivisionError("inverse of exact zero")
        return ExactScalar(self.re / norm, -self.im / norm)

    def conjugate(self) -> "ExactScalar":
        return ExactScalar(self.re, -self.im)

    # Predicates and conversions

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __eq__(self, other):
        try:
            o = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def sort_key(self) -> Tuple[Fraction, Fraction]:
        return (self.re, self.im)

    def __repr__(self):
        return f"ExactScalar({self.re}, {self.im})"

    def __str__(self):
        from .grammar import format_scalar
        return format_scalar(self)


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
I = ExactScalar(0, 1)


@dataclass(frozen=True)
class VarSet:
    """Ordered, fixed list of real chart variable names"""

    names: Tuple[str, ...]

    RESERVED = ("i", "exp")

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise UsageError(f"Variable names must be unique: {names}")
        for name in names:
            if not name.isidentifier() or name in self.RESERVED:
                raise UsageError(f"Invalid variable name: {name!r}")

    def index(self, name: str) -> int:
        """
        Position of a variable

        Args:
            name: Variable name

        Returns:
            Index in the ordered variable list
        """
        try:
            return self.names.index(name)
        except ValueError:
            raise UsageError(f"Unknown variable {name!r} (known: {', '.join(self.names)})") from None

    def renamed(self, old: str, new: str) -> "VarSet":
        """Same slots with one variable renamed (Fourier dual variables)"""
        pos = self.index(old)
        names = list(self.names)
        names[pos] = new
        return VarSet(tuple(names))

    def __len__(self):
        return len(self.names)

    def __iter__(self):
        return iter(self.names)

    def __contains__(self, name):
        return name in self.names

    def __str__(self):
        return "(" + ", ".join(self.names) + ")"


# Term key: (exponent vector, frequency vector, exponent constant)
TermKey = Tuple[Tuple[int, ...], Tuple[ExactScalar, ...], ExactScalar]


def _key_sort(key: TermKey):
    exps, freqs, const = key
    return (-sum(exps), tuple(-e for e in exps),
            tuple(f.sort_key() for f in freqs), const.sort_key())


class ExpPoly:
    """Immutable finite sum of coefficient * monomial * exp(affine form)"""

    __slots__ = ("varset", "_terms", "_hash")

    def __init__(self, varset: VarSet, terms: Optional[Mapping[TermKey, object]] = None):
        """
        Initialize expression in canonical form

        Args:
            varset: Variables the expression is built over
            terms: Map from (exponents, frequencies, constant) to coefficient
        """
        n = len(varset)
        canon: Dict[TermKey, ExactScalar] = {}
        for key, coeff in (terms or {}).items():
            exps, freqs, const = key
            exps = tuple(int(e) for e in exps)
            freqs = tuple(ExactScalar.coerce(f) for f in freqs)
            const = ExactScalar.coerce(const)
            if len(exps) != n or len(freqs) != n:
                raise UsageError(f"Term {key} does not match variables {varset}")
            if any(e < 0 for e in exps):
                raise UsageError(f"Negative exponent in term {key}")
            k = (exps, freqs, const)
            c = canon.get(k, ZERO) + ExactScalar.coerce(coeff)
            if c.is_zero():
                canon.pop(k, None)
            else:
                canon[k] = c
        object.__setattr__(self, "varset", varset)
        object.__setattr__(self, "_terms", canon)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, varset: VarSet, terms: Dict[TermKey, ExactScalar]) -> "ExpPoly":
        # terms must already be canonical: validated keys, no zero coefficients
        obj = cls.__new__(cls)
        object.__setattr__(obj, "varset", varset)
        object.__setattr__(obj, "_terms", terms)
        object.__setattr__(obj, "_hash", None)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExpPoly is immutable")

    # Constructors

    @classmethod
    def zero(cls, varset: VarSet) -> "ExpPoly":
        return cls._raw(varset, {})

    @classmethod
    def constant(cls, varset: VarSet, value=1) -> "ExpPoly":
        c = ExactScalar.coerce(value)
        if c.is_zero():
            return cls.zero(varset)
        n = len(varset)
        return cls._raw(varset, {((0,) * n, (ZERO,) * n, ZERO): c})

    @classmethod
    def variable(cls, varset: VarSet, name: str) -> "ExpPoly":
        return cls.monomial(varset, {name: 1})

    @classmethod
    def monomial(cls, varset: VarSet, powers: Mapping[str, int], coeff=1) -> "ExpPoly":
        """
        Build coeff * prod x^power

        Args:
            varset: Variables
            powers: Exponent per variable name (missing names get 0)
            coeff: Exact coefficient

        Returns:
            Single-term expression
        """
        exps = [0] * len(varset)
        for name, power in powers.items():
            exps[varset.index(name)] = int(power)
        n = len(varset)
        return cls(varset, {(tuple(exps), (ZERO,) * n, ZERO): coeff})

    @classmethod
    def exponential(cls, varset: VarSet, freqs: Mapping[str, object],
                    const=0, coeff=1) -> "ExpPoly":
        """
        Build coeff * exp(sum freq*x + const)

        Args:
            varset: Variables
            freqs: Frequency per variable name (Gaussian rationals)
            const: Exponent constant
            coeff: Exact coefficient

        Returns:
            Single-term expression
        """
        lam = [ZERO] * len(varset)
        for name, f in freqs.items():
            lam[varset.index(name)] = ExactScalar.coerce(f)
        n = len(varset)
        return cls(varset, {((0,) * n, tuple(lam), const): coeff})

    @classmethod
    def cos(cls, varset: VarSet, name: str, scale=1) -> "ExpPoly":
        """cos(scale*x) as (e^{i scale x} + e^{-i scale x}) / 2"""
        w = I * ExactScalar.coerce(scale)
        half = Fraction(1, 2)
        return (cls.exponential(varset, {name: w}, coeff=half)
                + cls.exponential(varset, {name: -w}, coeff=half))

    @classmethod
    def sin(cls, varset: VarSet, name: str, scale=1) -> "ExpPoly":
        """sin(scale*x) as (e^{i scale x} - e^{-i scale x}) / 2i"""
        w = I * ExactScalar.coerce(scale)
        c = ExactScalar(0, Fraction(-1, 2))
        return (cls.exponential(varset, {name: w}, coeff=c)
                + cls.exponential(varset, {name: -w}, coeff=-c))

    # Accessors

    def terms(self) -> Iterator[Tuple[TermKey, ExactScalar]]:
        """Iterate terms in canonical print order"""
        for key in sorted(self._terms, key=_key_sort):
            yield key, self._terms[key]

    def term_map(self) -> Dict[TermKey, ExactScalar]:
        return dict(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        n = len(self.varset)
        flat = ((0,) * n, (ZERO,) * n, ZERO)
        return all(key == flat for key in self._terms)

    def constant_value(self) -> ExactScalar:
        """Coefficient of the pure constant term"""
        n = len(self.varset)
        return self._terms.get(((0,) * n, (ZERO,) * n, ZERO), ZERO)

    def degree_in(self, name: str) -> int:
        pos = self.varset.index(name)
        return max((key[0][pos] for key in self._terms), default=0)

    def depends_on(self, name: str) -> bool:
        pos = self.varset.index(name)
        return any(key[0][pos] or not key[1][pos].is_zero() for key in self._terms)

    def has_frequency_in(self, name: str) -> bool:
        pos = self.varset.index(name)
        return any(not key[1][pos].is_zero() for key in self._terms)

    def polynomial_degree(self, name: str) -> Optional[int]:
        """Degree in a variable, or None when some term is exponential in it"""
        if self.has_frequency_in(name):
            return None
        return self.degree_in(name)

    # Ring operations

    def _check(self, other: "ExpPoly") -> None:
        if self.varset != other.varset:
            raise UsageError(f"Variable set mismatch: {self.varset} vs {other.varset}")

    def _promote(self, other) -> "ExpPoly":
        if isinstance(other, ExpPoly):
            self._check(other)
            return other
        return ExpPoly.constant(self.varset, ExactScalar.coerce(other))

    def __add__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for key, c in o._terms.items():
            s = out.get(key, ZERO) + c
            if s.is_zero():
                out.pop(key, None)
            else:
                out[key] = s
        return ExpPoly._raw(self.varset, out)

    __radd__ = __add__

    def __neg__(self):
        return ExpPoly._raw(self.varset, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        try:
            o = self._promote(other)
        except TypeError:
            return NotImplemented
        return o + (-self)

    def scale(self, factor) -> "ExpPoly":
        c = ExactScalar.coerce(factor)
        if c.is_zero():
            return ExpPoly.zero(self.varset)
        return ExpPoly._raw(self.varset, {k: v * c for k, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, ExpPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        out: Dict[TermKey, ExactScalar] = {}
        for (e1, f1, k1), c1 in self._terms.items():
            for (e2, f2, k2), c2 in other._terms.items():
                key = (tuple(a + b for a, b in zip(e1, e2)),
                       tuple(a + b for a, b in zip(f1, f2)),
                       k1 + k2)
                s = out.get(key, ZERO) + c1 * c2
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return ExpPoly._raw(self.varset, out)

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = ExpPoly.constant(self.varset, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # Calculus

    def partial(self, name: str, order: int = 1) -> "ExpPoly":
        """
        Exact partial derivative

        Args:
            name: Variable to differentiate in
            order: Number of derivatives

        Returns:
            d^order/dx^order of the expression
        """
        pos = self.varset.index(name)
        result = self
        for _ in range(order):
            out: Dict[TermKey, ExactScalar] = {}
            for (exps, freqs, const), c in result._terms.items():
                a = exps[pos]
                lam = freqs[pos]
                if a:
                    lowered = exps[:pos] + (a - 1,) + exps[pos + 1:]
                    key = (lowered, freqs, const)
                    s = out.get(key, ZERO) + c * a
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
                if not lam.is_zero():
                    key = (exps, freqs, const)
                    s = out.get(key, ZERO) + c * lam
                    if s.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = s
            result = ExpPoly._raw(self.varset, out)
        return result

    def partial_multi(self, orders: Sequence[int]) -> "ExpPoly":
        """Mixed partial derivative for a multi-index in varset order"""
        result = self
        for name, k in zip(self.varset.names, orders):
            if k:
                result = result.partial(name, k)
        return result

    def shift(self, name: str, amount) -> "ExpPoly":
        """
        Substitute x -> x + amount exactly

        Monomials expand binomially; the exponential factor e^{lambda*amount}
        is absorbed into the exponent constant.

        Args:
            name: Variable to shift
            amount: Exact shift (Gaussian rational)

        Returns:
            Shifted expression
        """
        pos = self.varset.index(name)
        a = ExactScalar.coerce(amount)
        if a.is_zero():
            return self
        out: Dict[TermKey, ExactScalar] = {}
        for (exps, freqs, const), c in self._terms.items():
            n = exps[pos]
            new_const = const + freqs[pos] * a
            for k in range(n + 1):
                coeff = c * math.comb(n, k) * (a ** (n - k))
                key = (exps[:pos] + (k,) + exps[pos + 1:], freqs, new_const)
                s = out.get(key, ZERO) + coeff
                if s.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = s
        return ExpPoly._raw(self.varset, out)

    def shift_all(self, offsets: Sequence) -> "ExpPoly":
        """Shift every variable by the matching entry of offsets"""
        result = self
        for name, a in zip(self.varset.names, offsets):
            if not ExactScalar.coerce(a).is_zero():
                result = result.shift(name, a)
        return result

    def rename(self, varset: VarSet) -> "ExpPoly":
        """Reinterpret the same slots under another variable list of equal length"""
        if len(varset) != len(self.varset):
            raise UsageError(f"Cannot rename {self.varset} to {varset}")
        return ExpPoly._raw(varset, dict(self._terms))

    def conjugate(self) -> "ExpPoly":
        """Complex conjugate, treating all variables as real"""
        return ExpPoly(self.varset, {
            (e, tuple(f.conjugate() for f in fr), k.conjugate()): c.conjugate()
            for (e, fr, k), c in self._terms.items()
        })

    # Numerics

    def evaluate(self, point: Union[Mapping[str, object], Sequence[object]]):
        """
        Numeric value at a point

        Args:
            point: Mapping name -> value or sequence in varset order; values may be
                complex scalars or numpy arrays (broadcast)

        Returns:
            complex for scalar input, numpy array for array input
        """
        if isinstance(point, Mapping):
            values = [np.asarray(point[name], dtype=complex) for name in self.varset.names]
        else:
            if len(point) != len(self.varset):
                raise UsageError(f"Point has {len(point)} coordinates, expected {len(self.varset)}")
            values = [np.asarray(v, dtype=complex) for v in point]
        total = np.complex128(0)
        for (exps, freqs, const), c in self._terms.items():
            term = complex(c)
            for x, a in zip(values, exps):
                if a:
                    term = term * x ** a
            lin = complex(const)
            for x, lam in zip(values, freqs):
                if not lam.is_zero():
                    lin = lin + complex(lam) * x
            if np.any(lin != 0):
                term = term * np.exp(lin)
            total = total + term
        shape = np.broadcast_shapes(*(v.shape for v in values)) if values else ()
        if shape == ():
            return complex(total)
        return np.broadcast_to(total, shape).astype(complex)

    # Identity

    def __eq__(self, other):
        if isinstance(other, ExpPoly):
            return self.varset == other.varset and self._terms == other._terms
        try:
            c = ExactScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self == ExpPoly.constant(self.varset, c)

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash((self.varset, frozenset(self._terms.items()))))
        return self._hash

    def __repr__(self):
        return f"ExpPoly({self.varset}, {self})"

    def __str__(self):
        from .grammar import format_expr
        return format_expr(self)


# Module-level operation names

def add(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Pointwise sum (same variable set required)"""
    f._check(g)
    return f + g


def mul(f: ExpPoly, g: ExpPoly) -> ExpPoly:
    """Pointwise product (same variable set required)"""
    f._check(g)
    return f * g


def partial(f: ExpPoly, name: str) -> ExpPoly:
    """First partial derivative in one variable"""
    return f.partial(name)


def shift(f: ExpPoly, name: str, amount) -> ExpPoly:
    """Substitute name -> name + amount"""
    return f.shift(name, amount)


def evaluate(f: ExpPoly, point):
    """Numeric evaluation in double precision"""
    return f.evaluate(point)


def linear_combination(items: Iterable[Tuple[object, ExpPoly]], varset: VarSet) -> ExpPoly:
    """Sum of scalar * expression pairs over one variable set"""
    total = ExpPoly.zero(varset)
    for coeff, expr in items:
        total = total + expr.scale(coeff)
    return total
