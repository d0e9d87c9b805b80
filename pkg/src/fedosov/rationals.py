"""Exact scalar arithmetic: multivariate polynomials over Q and their quotient field.

Coefficients are `fractions.Fraction` (arbitrary precision, always in lowest
terms with a positive denominator).  A polynomial stores an ordered tuple of
variable names plus a sparse map from exponent tuples to nonzero
coefficients; the zero polynomial has an empty map.  Binary operations align
the two variable tuples by taking their sorted union, so polynomials over
different variable sets combine transparently.

Rational functions are numerator/denominator pairs and are *not* reduced to
lowest terms (there is no multivariate gcd engine): equality and zero tests
use cross multiplication, which is exact.  A cheap normalization pass --
common monomial factor, denominator content and sign, a single
exact-division attempt -- keeps representations from growing during long
computations such as curvature expansions.

The text syntax accepted by `parse_ratfun` covers integer literals, `+`,
`-`, `*`, `/`, `^` with positive integer exponents, parentheses and
variable identifiers, e.g. ``-4/(3*x)``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping

Rational = Fraction


class PoleError(ArithmeticError):
    """Raised when a rational function is evaluated at a zero of its denominator."""


class ParseError(ValueError):
    """Raised on malformed scalar text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class Polynomial:
    """Sparse multivariate polynomial with exact rational coefficients.

    Instances are treated as immutable: no method mutates `self`, and the
    term map must not be modified after construction.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], Fraction]):
        self.variables: tuple[str, ...] = tuple(variables)
        self.terms: dict[tuple[int, ...], Fraction] = {
            exp: Fraction(c) for exp, c in terms.items() if c != 0
        }

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> Polynomial:
        variables = tuple(variables)
        c = Fraction(value)
        if c == 0:
            return cls(variables, {})
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def variable(cls, name: str) -> Polynomial:
        return cls((name,), {(1,): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0,) * len(self.variables)) == 1

    def is_constant(self) -> bool:
        return all(all(e == 0 for e in exp) for exp in self.terms)

    def constant_value(self) -> Fraction:
        """Value of a constant polynomial (zero polynomial gives 0)."""
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return next(iter(self.terms.values()), Fraction(0))

    def embed(self, variables: Iterable[str]) -> Polynomial:
        """Reindex onto a superset of variables (order taken from `variables`)."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        positions = []
        for v in self.variables:
            if v not in variables:
                raise ValueError(f"cannot drop variable {v!r}")
            positions.append(variables.index(v))
        terms: dict[tuple[int, ...], Fraction] = {}
        width = len(variables)
        for exp, c in self.terms.items():
            new = [0] * width
            for pos, e in zip(positions, exp):
                new[pos] = e
            terms[tuple(new)] = c
        return Polynomial(variables, terms)

    @staticmethod
    def _aligned(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
        if a.variables == b.variables:
            return a, b
        merged = tuple(sorted(set(a.variables) | set(b.variables)))
        return a.embed(merged), b.embed(merged)

    def _coerced(self, other) -> Polynomial | None:
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables)
        return None

    def __add__(self, other) -> Polynomial:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = Polynomial._aligned(self, other)
        terms = dict(a.terms)
        for exp, c in b.terms.items():
            value = terms.get(exp, Fraction(0)) + c
            if value:
                terms[exp] = value
            else:
                terms.pop(exp, None)
        return Polynomial(a.variables, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(self.variables, {exp: -c for exp, c in self.terms.items()})

    def __sub__(self, other) -> Polynomial:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> Polynomial:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = Polynomial._aligned(self, other)
        terms: dict[tuple[int, ...], Fraction] = {}
        for ea, ca in a.terms.items():
            for eb, cb in b.terms.items():
                exp = tuple(x + y for x, y in zip(ea, eb))
                value = terms.get(exp, Fraction(0)) + ca * cb
                if value:
                    terms[exp] = value
                else:
                    terms.pop(exp, None)
        return Polynomial(a.variables, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        if not isinstance(k, int) or k < 0:
            raise ValueError("polynomial powers must be nonnegative integers")
        result = Polynomial.constant(1, self.variables)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        a, b = Polynomial._aligned(self, other)
        return a.terms == b.terms

    __hash__ = None

    def partial(self, var: str) -> Polynomial:
        """Exact partial derivative; `var` must be one of the variables."""
        if var not in self.variables:
            raise ValueError(f"unknown variable {var!r}")
        i = self.variables.index(var)
        terms: dict[tuple[int, ...], Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i] == 0:
                continue
            new = list(exp)
            new[i] -= 1
            terms[tuple(new)] = c * exp[i]
        return Polynomial(self.variables, terms)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        missing = [v for v in self.variables if v not in point]
        if missing:
            raise ValueError(f"unassigned variables: {missing}")
        total = Fraction(0)
        values = [Fraction(point[v]) for v in self.variables]
        for exp, c in self.terms.items():
            term = c
            for v, e in zip(values, exp):
                if e:
                    term *= v ** e
            total += term
        return total

    def content(self) -> Fraction:
        """Positive rational content: gcd of coefficient numerators over lcm of denominators."""
        if not self.terms:
            return Fraction(1)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, abs(c.numerator))
            den = den * c.denominator // math.gcd(den, c.denominator)
        return Fraction(num, den)

    def _leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Lex-maximal term (exponent tuple compared left to right)."""
        exp = max(self.terms)
        return exp, self.terms[exp]

    def min_exponents(self) -> tuple[int, ...]:
        """Per-variable minimum exponent over all terms (the common monomial factor)."""
        if not self.terms:
            return (0,) * len(self.variables)
        mins = None
        for exp in self.terms:
            if mins is None:
                mins = list(exp)
            else:
                mins = [min(a, b) for a, b in zip(mins, exp)]
        return tuple(mins)

    def shift_down(self, shift: tuple[int, ...]) -> Polynomial:
        """Divide by the monomial with the given exponents (must divide every term)."""
        if all(s == 0 for s in shift):
            return self
        terms = {}
        for exp, c in self.terms.items():
            new = tuple(e - s for e, s in zip(exp, shift))
            if any(e < 0 for e in new):
                raise ValueError("monomial does not divide polynomial")
            terms[new] = c
        return Polynomial(self.variables, terms)

    def try_exact_div(self, den: Polynomial) -> Polynomial | None:
        """Quotient self/den if the division is exact (lex order), else None."""
        a, b = Polynomial._aligned(self, den)
        if b.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        if a.is_zero():
            return a
        lead_exp, lead_c = b._leading()
        quotient: dict[tuple[int, ...], Fraction] = {}
        rest = dict(a.terms)
        while rest:
            exp = max(rest)
            diff = tuple(x - y for x, y in zip(exp, lead_exp))
            if any(d < 0 for d in diff):
                return None
            qc = rest[exp] / lead_c
            quotient[diff] = quotient.get(diff, Fraction(0)) + qc
            for eb, cb in b.terms.items():
                e = tuple(x + y for x, y in zip(diff, eb))
                value = rest.get(e, Fraction(0)) - qc * cb
                if value:
                    rest[e] = value
                else:
                    rest.pop(e, None)
        return Polynomial(a.variables, quotient)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        # Deterministic order: total degree then lex, descending.
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        pieces = []
        for exp in keys:
            c = self.terms[exp]
            factors = []
            for v, e in zip(self.variables, exp):
                if e == 1:
                    factors.append(v)
                elif e > 1:
                    factors.append(f"{v}^{e}")
            mono = "*".join(factors)
            if not mono:
                text = str(abs(c))
            elif abs(c) == 1:
                text = mono
            else:
                text = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            pieces.append((sign, text))
        first_sign, first_text = pieces[0]
        out = ("-" if first_sign == "-" else "") + first_text
        for sign, text in pieces[1:]:
            out += f" {sign} {text}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({self})"


class RationalFunction:
    """Element of the quotient field Q(x1, ..., xm), stored as num/den.

    The pair is normalized (common monomial stripped, denominator primitive
    with positive leading coefficient, collapsed to a polynomial when the
    division happens to be exact) but *not* reduced to lowest terms in
    general.  Equality is decided by cross multiplication and is therefore
    exact regardless of representation.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Polynomial, den: Polynomial | None = None):
        if den is None:
            den = Polynomial.constant(1, num.variables)
        num, den = Polynomial._aligned(num, den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            den = Polynomial.constant(1, num.variables)
        else:
            shift = tuple(
                min(a, b) for a, b in zip(num.min_exponents(), den.min_exponents())
            )
            if any(shift):
                num = num.shift_down(shift)
                den = den.shift_down(shift)
            scale = den.content()
            if den._leading()[1] < 0:
                scale = -scale
            if scale != 1:
                inv = 1 / scale
                num = num * inv
                den = den * inv
            if not den.is_one():
                quotient = num.try_exact_div(den)
                if quotient is not None:
                    num = quotient
                    den = Polynomial.constant(1, num.variables)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, value, variables: Iterable[str] = ()) -> RationalFunction:
        return cls(Polynomial.constant(value, variables))

    @classmethod
    def variable(cls, name: str) -> RationalFunction:
        return cls(Polynomial.variable(name))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.num.variables

    def with_variables(self, variables: Iterable[str]) -> RationalFunction:
        variables = tuple(variables)
        return RationalFunction(self.num.embed(variables), self.den.embed(variables))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def _coerced(self, other) -> RationalFunction | None:
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFunction.constant(other, self.variables)
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        return None

    def __add__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self) -> RationalFunction:
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other) -> RationalFunction:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int) -> RationalFunction:
        if not isinstance(k, int):
            raise ValueError("exponent must be an integer")
        if k < 0:
            return RationalFunction(self.den, self.num) ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __eq__(self, other) -> bool:
        other = self._coerced(other)
        if other is None:
            return NotImplemented
        return (self.num * other.den - other.num * self.den).is_zero()

    __hash__ = None

    def partial(self, var: str) -> RationalFunction:
        """Exact partial derivative via the quotient rule."""
        if var not in self.variables:
            raise ValueError(f"unknown variable {var!r}")
        dn = self.num.partial(var)
        if self.den.is_one():
            return RationalFunction(dn, self.den)
        dd = self.den.partial(var)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def evaluate(self, point: Mapping[str, Fraction]) -> Fraction:
        den = self.den.evaluate(point)
        if den == 0:
            raise PoleError(f"denominator vanishes at {dict(point)}")
        return self.num.evaluate(point) / den

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"


_TOKEN_RE = re.compile(r"\s+|(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()])")


def _tokenize(text: str) -> list[tuple[str, str, int, int]]:
    tokens = []
    line, col = 1, 1
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        chunk = m.group(0)
        if m.lastgroup is not None:
            tokens.append((m.lastgroup, chunk, line, col))
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    return tokens


class _Parser:
    """Recursive-descent parser for rational-function literals.

    Grammar (standard precedence, `^` binds tightest, then unary minus,
    then `*`/`/`, then `+`/`-`; `*` and `/` associate left):

        expr   := term (('+' | '-') term)*
        term   := unary (('*' | '/') unary)*
        unary  := '-' unary | power
        power  := atom ('^' INT)?
        atom   := INT | IDENT | '(' expr ')'
    """

    def __init__(self, text: str, variables: tuple[str, ...] | None):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.variables = variables
        self.text = text

    def _peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _next(self):
        tok = self._peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else ("", "", 1, 1)
            raise ParseError("unexpected end of input", last[2], last[3] + len(last[1]))
        self.pos += 1
        return tok

    def _expect_op(self, op: str):
        tok = self._next()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}, found {tok[1]!r}", tok[2], tok[3])

    def parse(self) -> RationalFunction:
        value = self.expr()
        tok = self._peek()
        if tok is not None:
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], tok[3])
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return value
            self._next()
            rhs = self.term()
            value = value + rhs if tok[1] == "+" else value - rhs

    def term(self) -> RationalFunction:
        value = self.unary()
        while True:
            tok = self._peek()
            if tok is None or tok[0] != "op" or tok[1] not in "*/":
                return value
            self._next()
            rhs = self.unary()
            if tok[1] == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", tok[2], tok[3])
                value = value / rhs

    def unary(self) -> RationalFunction:
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self._next()
            return -self.unary()
        return self.power()

    def power(self) -> RationalFunction:
        base = self.atom()
        tok = self._peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self._next()
            exp_tok = self._next()
            if exp_tok[0] != "int":
                raise ParseError("exponent must be a positive integer", exp_tok[2], exp_tok[3])
            exponent = int(exp_tok[1])
            if exponent < 1:
                raise ParseError("exponent must be a positive integer", exp_tok[2], exp_tok[3])
            return base ** exponent
        return base

    def atom(self) -> RationalFunction:
        tok = self._next()
        kind, chunk, line, col = tok
        if kind == "int":
            return RationalFunction.constant(int(chunk))
        if kind == "ident":
            if self.variables is not None and chunk not in self.variables:
                raise ParseError(f"unknown variable {chunk!r}", line, col)
            return RationalFunction.variable(chunk)
        if kind == "op" and chunk == "(":
            value = self.expr()
            self._expect_op(")")
            return value
        raise ParseError(f"unexpected token {chunk!r}", line, col)


def parse_ratfun(text: str, variables: Iterable[str] | None = None) -> RationalFunction:
    """Parse a rational-function literal.

    When `variables` is given, identifiers outside the list raise
    `ParseError` and the result is embedded over exactly those variables
    (so partial derivatives with respect to any of them are defined).
    """
    variables = tuple(variables) if variables is not None else None
    value = _Parser(text, variables).parse()
    if variables is not None:
        value = value.with_variables(variables)
    return value
