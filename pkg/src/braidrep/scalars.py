"""Exact scalars: Laurent polynomials in ``t`` over the Gaussian rationals.

Every matrix entry in the library is a :class:`Scalar`.  The variable ``t``
is treated as a real parameter, so conjugation fixes ``t`` and only negates
the imaginary parts of the coefficients.

Canonical text form lists terms by ascending exponent, joined by ``" + "``::

    (3/2)*t^-1 + 1 + (0+1i)*t^2

The same grammar (plus ordinary ``-``, ``*``, ``/`` and parentheses) is
accepted by :func:`parse_scalar`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Iterable, Iterator, Mapping, Tuple, Union

from .errors import EvalAtZero, NonInvertibleScale, ScalarParseError

__all__ = [
    "GaussianRational",
    "Scalar",
    "ScalarLike",
    "as_scalar",
    "as_gaussian",
    "parse_scalar",
    "parse_gaussian",
    "format_rational",
    "ZERO",
    "ONE",
    "T",
    "I",
]

# exponents must fit a signed 64-bit machine integer
EXP_MIN = -(2**63)
EXP_MAX = 2**63 - 1


def _check_exp(e: int) -> int:
    if not EXP_MIN <= e <= EXP_MAX:
        raise OverflowError(f"exponent {e} of t overflows a 64-bit integer")
    return e


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, value) -> "GaussianRational":
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, _RationalABC)):
            return cls(Fraction(value))
        if isinstance(value, str):
            return parse_gaussian(value)
        raise TypeError(f"cannot convert {type(value).__name__} to GaussianRational")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return GaussianRational.coerce(other) - self

    def __mul__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, other.re, other.im
        return GaussianRational(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        try:
            other = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        result = GaussianRational(1)
        for _ in range(abs(e)):
            result = result * base
        return result

    def conj(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        im = format_rational(self.im)
        sign = "" if im.startswith("-") else "+"
        return f"({format_rational(self.re)}{sign}{im}i)"

    def __repr__(self):
        return f"GaussianRational({self})"


GaussianLike = Union[GaussianRational, int, Fraction]
ScalarLike = Union["Scalar", GaussianRational, int, Fraction]


def as_gaussian(value) -> GaussianRational:
    return GaussianRational.coerce(value)


class Scalar:
    """Laurent polynomial ``sum c_e * t**e`` with Gaussian-rational ``c_e``.

    Instances are immutable and hashable; zero coefficients are never stored,
    so two scalars are equal exactly when their coefficient maps are equal.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, coeffs: Union[Mapping[int, GaussianLike], Iterable[Tuple[int, GaussianLike]], None] = None):
        items = coeffs.items() if isinstance(coeffs, Mapping) else (coeffs or ())
        acc = {}
        for e, c in items:
            e = _check_exp(int(e))
            c = GaussianRational.coerce(c)
            acc[e] = acc.get(e, GaussianRational(0)) + c
        terms = tuple(sorted((e, c) for e, c in acc.items() if not c.is_zero()))
        object.__setattr__(self, "_terms", terms)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    @classmethod
    def _from_sorted(cls, terms):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_terms", tuple(terms))
        object.__setattr__(obj, "_hash", None)
        return obj

    @classmethod
    def const(cls, c: GaussianLike) -> "Scalar":
        return cls({0: c})

    @classmethod
    def monomial(cls, c: GaussianLike, e: int) -> "Scalar":
        return cls({e: c})

    @classmethod
    def coerce(cls, value) -> "Scalar":
        if isinstance(value, Scalar):
            return value
        if isinstance(value, str):
            return parse_scalar(value)
        return cls.const(GaussianRational.coerce(value))

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        """Exponent -> coefficient map (a fresh dict)."""
        return dict(self._terms)

    def terms(self) -> Iterator[Tuple[int, GaussianRational]]:
        return iter(self._terms)

    def coeff(self, e: int) -> GaussianRational:
        for exp, c in self._terms:
            if exp == e:
                return c
        return GaussianRational(0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_unit(self) -> bool:
        """Units of the Laurent ring are exactly the nonzero monomials."""
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and self._terms[0][0] == 0)

    def min_exp(self) -> int:
        return self._terms[0][0] if self._terms else 0

    def max_exp(self) -> int:
        return self._terms[-1][0] if self._terms else 0

    # -- equality ---------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except (TypeError, ScalarParseError):
                return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        h = self._hash
        if h is None:
            if not self._terms:
                h = 0
            elif self.is_constant():
                h = hash(self._terms[0][1])
            else:
                h = hash(self._terms)
            object.__setattr__(self, "_hash", h)
        return h

    # -- ring operations --------------------------------------------------
    def __neg__(self):
        return Scalar._from_sorted((e, -c) for e, c in self._terms)

    def __add__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not other._terms:
            return self
        if not self._terms:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            s = acc.get(e)
            acc[e] = c if s is None else s + c
        return Scalar._from_sorted(sorted((e, c) for e, c in acc.items() if not c.is_zero()))

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self._terms or not other._terms:
            return ZERO
        acc = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = _check_exp(e1 + e2)
                p = c1 * c2
                s = acc.get(e)
                acc[e] = p if s is None else s + p
        return Scalar._from_sorted(sorted((e, c) for e, c in acc.items() if not c.is_zero()))

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.is_unit():
            raise NonInvertibleScale(f"{self} is not a unit of the Laurent ring")
        (e, c), = self._terms
        return Scalar._from_sorted([(_check_exp(-e), c.inverse())])

    def __truediv__(self, other):
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        result = ONE
        for _ in range(abs(e)):
            result = result * base
        return result

    # -- involution and specialization ------------------------------------
    def conj(self) -> "Scalar":
        return Scalar._from_sorted((e, c.conj()) for e, c in self._terms)

    def abs_sq(self) -> "Scalar":
        return self * self.conj()

    def eval(self, p: GaussianLike) -> GaussianRational:
        """Substitute ``t := p`` exactly."""
        p = GaussianRational.coerce(p)
        if p.is_zero():
            if self._terms and self._terms[0][0] < 0:
                raise EvalAtZero(f"cannot evaluate {self} at t=0")
            return self.coeff(0)
        total = GaussianRational(0)
        inv = None
        for e, c in self._terms:
            if e < 0:
                inv = inv or p.inverse()
                total = total + c * inv ** (-e)
            else:
                total = total + c * p ** e
        return total

    def substitute_power(self, d: int) -> "Scalar":
        """Substitute ``t := t**d``."""
        return Scalar((e * d, c) for e, c in self._terms)

    # -- rendering --------------------------------------------------------
    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(_render_term(e, c) for e, c in self._terms)

    def __repr__(self):
        return f"Scalar({str(self)!r})"


def _render_coeff(c: GaussianRational) -> str:
    if c.is_real():
        s = format_rational(c.re)
        return f"({s})" if c.re.denominator != 1 else s
    return str(c)


def _render_term(e: int, c: GaussianRational) -> str:
    if e == 0:
        return _render_coeff(c)
    power = "t" if e == 1 else f"t^{e}"
    if c == 1:
        return power
    if c == -1:
        return "-" + power
    return f"{_render_coeff(c)}*{power}"


ZERO = Scalar()
ONE = Scalar({0: 1})
T = Scalar({1: 1})
I = Scalar({0: GaussianRational(0, 1)})


def as_scalar(value: ScalarLike) -> Scalar:
    return Scalar.coerce(value)


# -- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?i?)|(?P<sym>[ti])|(?P<op>[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    text_len = len(text)
    while True:
        while pos < text_len and text[pos].isspace():
            pos += 1
        if pos == text_len:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ScalarParseError("unexpected character", text, pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", text_len))
    return tokens


class _ScalarParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ScalarParseError(message, self.text, tok[2])

    def parse(self) -> Scalar:
        if self.peek()[0] == "end":
            self.fail("empty scalar")
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return value

    def expr(self) -> Scalar:
        value = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Scalar:
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", "/"):
            tok = self.take()
            rhs = self.factor()
            if tok[1] == "*":
                value = value * rhs
            else:
                if not rhs.is_unit():
                    self.fail("division by a non-monomial", tok)
                value = value / rhs
        return value

    def factor(self) -> Scalar:
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("-", "+"):
            self.take()
            inner = self.factor()
            return -inner if tok[1] == "-" else inner
        return self.power()

    def power(self) -> Scalar:
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            caret = self.take()
            sign = 1
            if self.peek()[0] == "op" and self.peek()[1] in ("-", "+"):
                sign = -1 if self.take()[1] == "-" else 1
            tok = self.take()
            if tok[0] != "num" or not tok[1].isdigit():
                self.fail("expected integer exponent", tok)
            e = sign * int(tok[1])
            if e < 0 and not base.is_unit():
                self.fail("negative power of a non-monomial", caret)
            return base ** e
        return base

    def atom(self) -> Scalar:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            imag = val.endswith("i")
            q = Fraction(val[:-1] if imag else val)
            return Scalar.const(GaussianRational(0, q) if imag else GaussianRational(q))
        if kind == "sym":
            return T if val == "t" else I
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return inner
        self.fail(f"unexpected {val!r}" if val else "unexpected end of input", tok)


def parse_scalar(text: str) -> Scalar:
    """Parse the canonical scalar grammar (see module docstring)."""
    try:
        return _ScalarParser(text).parse()
    except ZeroDivisionError as exc:
        raise ScalarParseError(f"division by zero ({exc})", text) from None


def parse_gaussian(text: str) -> GaussianRational:
    """Parse a constant such as ``5/2``, ``-3`` or ``(1/2-3i)``."""
    s = parse_scalar(text)
    if not s.is_constant():
        raise ScalarParseError("expected a constant, got a polynomial in t", text)
    return s.coeff(0)
