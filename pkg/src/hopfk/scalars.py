"""Exact arithmetic in the field Q(i) of Gaussian rationals.

Every structure constant and every tensor entry in this package is a
``Scalar``: a complex number whose real and imaginary parts are rational.
Equality is exact; there are no tolerances anywhere downstream.
"""

from __future__ import annotations

import re
from fractions import Fraction


class ScalarParseError(ValueError):
    """Raised when a scalar string does not match the accepted grammar."""


class Scalar:
    """An element of Q(i), stored as a pair of ``Fraction`` values.

    ``Fraction`` keeps both parts in lowest terms with a positive
    denominator, which is exactly the normal form we need.  Instances are
    immutable and hashable.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("Scalar is immutable")

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Scalar")
        return Scalar(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def conjugate(self):
        return Scalar(self.re, -self.im)

    # -- comparisons and hashing ------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Scalar(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def is_zero(self):
        return self.re == 0 and self.im == 0

    # -- text form ---------------------------------------------------------

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"


def _coerce(value) -> Scalar:
    if isinstance(value, Scalar):
        return value
    if isinstance(value, (int, Fraction)):
        return Scalar(value)
    raise TypeError(f"cannot coerce {type(value).__name__} to Scalar")


ZERO = Scalar(0)
ONE = Scalar(1)
I = Scalar(0, 1)


def scalar_arithmetic(a: Scalar, b: Scalar, op: str) -> Scalar:
    """Apply a named field operation; ``op`` is one of add/sub/mul/div."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


# Grammar: [+-] a[/b] [ (+|-) [c[/d]] i ], or a pure imaginary [+-][c[/d]]i.
_PART = re.compile(r"^([+-]?)(\d+)(?:/(\d+))?$")
_IMAG_PART = re.compile(r"^([+-]?)(\d*)(?:/(\d+))?i$")


def _parse_rational(text: str) -> Fraction:
    m = _PART.match(text)
    if m is None:
        raise ScalarParseError(f"malformed rational {text!r}")
    sign, num, den = m.groups()
    if den is not None and int(den) == 0:
        raise ScalarParseError(f"zero denominator in {text!r}")
    value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value


def _parse_imaginary(text: str) -> Fraction:
    m = _IMAG_PART.match(text)
    if m is None:
        raise ScalarParseError(f"malformed imaginary part {text!r}")
    sign, num, den = m.groups()
    if num == "" and den is None:
        value = Fraction(1)
    else:
        if num == "":
            raise ScalarParseError(f"malformed imaginary part {text!r}")
        if den is not None and int(den) == 0:
            raise ScalarParseError(f"zero denominator in {text!r}")
        value = Fraction(int(num), int(den) if den is not None else 1)
    return -value if sign == "-" else value


def parse_scalar(text: str) -> Scalar:
    """Parse ``[+-]a[/b][ +- c[/d]i ]`` (or a lone imaginary part)."""
    s = text.replace(" ", "")
    if not s:
        raise ScalarParseError("empty scalar string")
    # Split off a trailing signed term, if any (sign not in first position).
    split_at = None
    for idx in range(len(s) - 1, 0, -1):
        if s[idx] in "+-" and s[idx - 1] not in "+-":
            split_at = idx
            break
    if split_at is not None:
        head, tail = s[:split_at], s[split_at:]
        if not tail.endswith("i"):
            raise ScalarParseError(f"expected imaginary second term in {text!r}")
        return Scalar(_parse_rational(head), _parse_imaginary(tail))
    if s.endswith("i"):
        return Scalar(0, _parse_imaginary(s))
    return Scalar(_parse_rational(s), 0)


def _format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical text form; ``parse_scalar(format_scalar(s)) == s``."""
    if s.re == 0 and s.im == 0:
        return "0"
    if s.im == 0:
        return _format_rational(s.re)
    imag = "i" if abs(s.im) == 1 else _format_rational(abs(s.im)) + "i"
    if s.re == 0:
        return ("-" if s.im < 0 else "") + imag
    return _format_rational(s.re) + ("-" if s.im < 0 else "+") + imag
