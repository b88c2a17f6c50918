"""
Text grammar for exact expressions.

Printing produces the canonical form used in CLI output and JSON reports, e.g.

    p*exp(q) + (-1/2 i)*exp(q)
    (1/2 i)*p^2*exp(-1/2 i*eta + q)

Parsing accepts that form plus ordinary arithmetic (+, -, *, /, ^ and
parentheses) over rationals, the imaginary unit i, chart variables and exp of
affine forms. parse(format(f)) == f holds for every expression.
"""

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import GrammarError
from .symalg import ExactScalar, ExpPoly, VarSet, ZERO


_TOKEN_RE = re.compile(
    r"(?P<num>\d+)|(?P<name>[^\W\d]\w*)|(?P<op>[-+*/^()])|(?P<ws>\s+)|(?P<bad>.)"
)

EMPTY = VarSet(())


# Printing

def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "i"
    if im == -1:
        return "-i"
    return f"{im} i"


def format_scalar(c: ExactScalar) -> str:
    """Standalone text of a Gaussian rational: 3, -1/2, 1/2 i, 1/2 - 1/3 i"""
    if c.im == 0:
        return str(c.re)
    if c.re == 0:
        return _imag_text(c.im)
    if c.im > 0:
        return f"{c.re} + {_imag_text(c.im)}"
    return f"{c.re} - {_imag_text(-c.im)}"


def _signed(c: ExactScalar, body: str, inline_imag: bool) -> Tuple[bool, str]:
    """Split a coefficient*body item into (negative, unsigned text)"""
    tail = "*" + body if body else ""
    if c.im == 0:
        mag = abs(c.re)
        if mag == 1 and body:
            return c.re < 0, body
        return c.re < 0, f"{mag}{tail}"
    if c.re == 0 and inline_imag:
        mag = abs(c.im)
        unit = "i" if mag == 1 else f"{mag} i"
        return c.im < 0, f"{unit}{tail}"
    return False, f"({format_scalar(c)}){tail}"


def _join(items: List[Tuple[bool, str]]) -> str:
    out = []
    for idx, (negative, text) in enumerate(items):
        if idx == 0:
            out.append(("-" if negative else "") + text)
        else:
            out.append((" - " if negative else " + ") + text)
    return "".join(out)


def _format_exponent(names, freqs, const: ExactScalar) -> str:
    items = [_signed(lam, name, True) for name, lam in zip(names, freqs) if not lam.is_zero()]
    if not const.is_zero():
        items.append(_signed(const, "", True))
    return _join(items)


def format_expr(f: ExpPoly) -> str:
    """
    Canonical text of an expression

    Args:
        f: Expression to print

    Returns:
        Text in the expression grammar ("0" for the zero expression)
    """
    if f.is_zero():
        return "0"
    names = f.varset.names
    items = []
    for (exps, freqs, const), coeff in f.terms():
        factors = []
        for name, power in zip(names, exps):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        if any(not lam.is_zero() for lam in freqs) or not const.is_zero():
            factors.append(f"exp({_format_exponent(names, freqs, const)})")
        items.append(_signed(coeff, "*".join(factors), False))
    return _join(items)


# Parsing

class _Parser:
    """Recursive-descent parser building ExpPoly values directly"""

    def __init__(self, text: str, varset: VarSet):
        self.text = text
        self.varset = varset
        self.tokens: List[Tuple[str, str, int]] = []
        for m in _TOKEN_RE.finditer(text):
            kind = m.lastgroup
            if kind == "ws":
                continue
            if kind == "bad":
                raise GrammarError(f"Unexpected character {m.group()!r}", text, m.start())
            self.tokens.append((kind, m.group(), m.start()))
        self.pos = 0

    # token helpers

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _offset(self) -> int:
        tok = self._peek()
        return tok[2] if tok else len(self.text)

    def _fail(self, message: str):
        raise GrammarError(message, self.text, self._offset())

    def _accept(self, value: str) -> bool:
        tok = self._peek()
        if tok and tok[0] == "op" and tok[1] == value:
            self.pos += 1
            return True
        return False

    def _expect(self, value: str) -> None:
        if not self._accept(value):
            self._fail(f"Expected {value!r}")

    def _number(self) -> int:
        tok = self._peek()
        if not tok or tok[0] != "num":
            self._fail("Expected a number")
        self.pos += 1
        return int(tok[1])

    # grammar

    def parse(self) -> ExpPoly:
        if not self.tokens:
            self._fail("Empty expression")
        result = self.expr()
        if self._peek() is not None:
            self._fail("Unexpected trailing input")
        return result

    def expr(self) -> ExpPoly:
        negative = False
        if self._accept("-"):
            negative = True
        else:
            self._accept("+")
        result = self.term()
        if negative:
            result = -result
        while True:
            if self._accept("+"):
                result = result + self.term()
            elif self._accept("-"):
                result = result - self.term()
            else:
                return result

    def term(self) -> ExpPoly:
        result = self.power()
        while True:
            tok = self._peek()
            if tok is None:
                return result
            if tok[0] == "op" and tok[1] == "*":
                self.pos += 1
                result = result * self.power()
            elif tok[0] == "op" and tok[1] == "/":
                self.pos += 1
                divisor = self._number()
                if divisor == 0:
                    self._fail("Division by zero")
                result = result.scale(Fraction(1, divisor))
            elif tok[0] == "name" and tok[1] == "i":
                # juxtaposed imaginary unit: "1/2 i"
                result = result * self.power()
            else:
                return result

    def power(self) -> ExpPoly:
        base = self.atom()
        if self._accept("^"):
            base = base ** self._number()
        return base

    def atom(self) -> ExpPoly:
        tok = self._peek()
        if tok is None:
            self._fail("Unexpected end of expression")
        kind, value, _ = tok
        if kind == "num":
            self.pos += 1
            return ExpPoly.constant(self.varset, int(value))
        if kind == "op" and value == "(":
            self.pos += 1
            inner = self.expr()
            self._expect(")")
            return inner
        if kind == "name":
            self.pos += 1
            if value == "i":
                return ExpPoly.constant(self.varset, ExactScalar(0, 1))
            if value == "exp":
                self._expect("(")
                start = self._offset()
                inner = self.expr()
                self._expect(")")
                return self._exponential(inner, start)
            if value not in self.varset:
                self.pos -= 1
                self._fail(f"Unknown variable {value!r}")
            return ExpPoly.variable(self.varset, value)
        self._fail(f"Unexpected token {value!r}")

    def _exponential(self, inner: ExpPoly, start: int) -> ExpPoly:
        n = len(self.varset)
        freqs = [ZERO] * n
        const = ZERO
        for (exps, lams, kappa), coeff in inner.terms():
            if any(not lam.is_zero() for lam in lams) or not kappa.is_zero():
                raise GrammarError("Nested exp is not supported", self.text, start)
            degree = sum(exps)
            if degree == 0:
                const = const + coeff
            elif degree == 1:
                freqs[exps.index(1)] = freqs[exps.index(1)] + coeff
            else:
                raise GrammarError("exp argument must be affine", self.text, start)
        return ExpPoly(self.varset, {((0,) * n, tuple(freqs), const): 1})


def parse_expr(text: str, varset: VarSet) -> ExpPoly:
    """
    Parse expression text over a variable set

    Args:
        text: Expression in the grammar
        varset: Variables the text may reference

    Returns:
        Parsed expression

    Raises:
        GrammarError: If the text is malformed or names an unknown variable
    """
    return _Parser(text, varset).parse()


def parse_scalar(text: str) -> ExactScalar:
    """Parse a Gaussian rational such as '3', '-1/2', '1/2 + 1/3 i'"""
    value = parse_expr(text, EMPTY)
    if not value.is_constant():
        raise GrammarError("Expected a constant", text, 0)
    return value.constant_value()


def parse_scalar_list(text: str) -> List[ExactScalar]:
    """Parse comma-separated Gaussian rationals ('1,0,-1/2')"""
    parts = [part.strip() for part in text.split(",")]
    if not parts or any(not part for part in parts):
        raise GrammarError("Expected a comma-separated list of numbers", text, 0)
    return [parse_scalar(part) for part in parts]
