"""Exact scalars: rationals and Gaussian rationals Q(sqrt(-1)).

Rationals are :class:`fractions.Fraction` instances.  ``GaussRational`` is a
small immutable pair of fractions that interoperates with ``int`` and
``Fraction`` operands, so engine code can be written once and run over either
coefficient field.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

__all__ = [
    "Rational",
    "GaussRational",
    "I",
    "normalize",
    "gauss_arith",
    "to_gauss",
    "format_rational",
    "parse_rational",
    "format_gauss",
    "parse_gauss",
]


def normalize(num: int, den: int) -> Fraction:
    """Reduce ``num/den`` to lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    return Fraction(num, den)


def _as_fraction(x) -> Fraction | None:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    return None


class GaussRational:
    """An element ``re + im*I`` of Q(sqrt(-1)) with ``I**2 == -1``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        r = _as_fraction(re)
        i = _as_fraction(im)
        if r is None or i is None:
            raise TypeError(f"GaussRational components must be rational, got {re!r}, {im!r}")
        object.__setattr__(self, "re", r)
        object.__setattr__(self, "im", i)

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @staticmethod
    def _coerce(other) -> GaussRational | None:
        if isinstance(other, GaussRational):
            return other
        f = _as_fraction(other)
        if f is None:
            return None
        return GaussRational(f, 0)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, GaussRational):
            return GaussRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        f = _as_fraction(other)
        if f is None:
            return NotImplemented
        return GaussRational(self.re * f, self.im * f)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(-1))")
        num = self * o.conjugate()
        return GaussRational(num.re / n, num.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussRational(1) / (self ** (-n))
        result = GaussRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> GaussRational:
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        """``|z|**2 = re**2 + im**2``."""
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRational({format_gauss(self)!r})"

    def __str__(self):
        return format_gauss(self)


I = GaussRational(0, 1)


def to_gauss(x) -> GaussRational:
    g = GaussRational._coerce(x)
    if g is None:
        raise TypeError(f"cannot convert {x!r} to GaussRational")
    return g


def gauss_arith(a, b, op: str) -> GaussRational:
    """Apply ``op`` (one of ``+ - * /``) to two Gaussian rationals."""
    a, b = to_gauss(a), to_gauss(b)
    if op == "+":
        return a + b
    if op in ("-", "−"):
        return a - b
    if op in ("*", "×"):
        return a * b
    if op in ("/", "÷"):
        return a / b
    raise ValueError(f"unknown operator {op!r}")


def format_rational(x) -> str:
    """``"p/q"``, with ``q`` omitted when it is 1."""
    f = _as_fraction(x)
    if f is None:
        raise TypeError(f"not a rational: {x!r}")
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


_RAT = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    m = _RAT.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    return normalize(int(m.group(1)), int(m.group(2) or 1))


def format_gauss(z) -> str:
    """``"p/q+r/s*I"``; the imaginary part is always written."""
    z = to_gauss(z)
    im = format_rational(z.im)
    sign = "" if im.startswith("-") else "+"
    return f"{format_rational(z.re)}{sign}{im}*I"


_GAUSS = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*([+-]\s*\d+(?:/\d+)?)\s*\*\s*I\s*$")


def parse_gauss(text: str) -> GaussRational:
    m = _GAUSS.match(text)
    if not m:
        return GaussRational(parse_rational(text))
    return GaussRational(parse_rational(m.group(1)), parse_rational(m.group(2).replace(" ", "")))
