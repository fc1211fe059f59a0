"""Exact rational scalars, dense polynomials, and truncated power series.

All arithmetic in this package is exact.  Scalars are
:class:`fractions.Fraction` values, which the standard library keeps in
lowest terms with a positive denominator, so equality of computed
results is genuine mathematical equality and the test suite can demand
it.  No floating point is used anywhere.

``Poly`` stores univariate polynomial coefficients densely in ascending
degree with trailing zeros trimmed: ``coeffs[i]`` is the coefficient of
``x**i``, and the zero polynomial is the empty tuple (its ``degree`` is
reported as -1).

``PowerSeries`` holds the first ``order`` coefficients of a formal
power series in one variable.  The ``order`` of a result says how many
leading coefficients of the true answer it carries; binary operations
keep the minimum of the operand orders, shifting by a power of the
variable raises it, and stripping a common valuation lowers it.

Serialized form: a rational is the string ``"num/den"`` with the
denominator always present (``"-3/4"``, ``"5/1"``); a polynomial or a
coefficient list is an ascending array of such strings.

Values are immutable and all functions are pure.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    InputError,
    InsufficientOrder,
    NonSquareConstant,
    ZeroConstantTerm,
)

Rational = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction.  Decimals are rejected."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise InputError(f"not a rational string: {text!r}", value=text)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise InputError(f"zero denominator: {text!r}", value=text) from None


def format_rational(value: Fraction) -> str:
    """Canonical ``"num/den"`` form, denominator always explicit."""
    return f"{value.numerator}/{value.denominator}"


def as_fraction(value: Rational) -> Fraction:
    """Coerce an int, Fraction, or rational string to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"cannot interpret {value!r} as a rational")


def rational_sqrt(value: Fraction):
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        return None
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)


class Poly:
    """Immutable dense univariate polynomial over the rationals."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, degree: int, coeff: Rational = 1) -> "Poly":
        c = as_fraction(coeff)
        if c == 0:
            return cls()
        return cls((0,) * degree + (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> Fraction:
        """Coefficient of x**i (zero beyond the stored degree)."""
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a:
                    for j, b in enumerate(other.coeffs):
                        if b:
                            out[i + j] += a * b
            return Poly(out)
        c = as_fraction(other)
        return Poly(tuple(c * a for a in self.coeffs))

    def __rmul__(self, other) -> "Poly":
        return self.__mul__(other)

    def shift(self, k: int) -> "Poly":
        """Multiply by x**k (k >= 0)."""
        if k < 0:
            raise ValueError("shift amount must be nonnegative")
        if self.is_zero:
            return self
        return Poly((Fraction(0),) * k + self.coeffs)

    def derivative(self) -> "Poly":
        return Poly(tuple(i * c for i, c in enumerate(self.coeffs) if i >= 1))

    def __call__(self, point: Rational) -> Fraction:
        x = as_fraction(point)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def pretty(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mag = c if c > 0 else -c
            if i == 0:
                body = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((" - " if c < 0 else " + ", body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == " - " else "") + first_body
        for sign, body in parts[1:]:
            text += sign + body
        return text

    def __repr__(self):
        return f"Poly({self.pretty()!r})"

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(parse_rational(c) for c in data)


class PowerSeries:
    """A formal power series known through its first ``order`` coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = (), order: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is not None:
            if order < 1:
                raise InsufficientOrder("series order must be at least 1")
            if len(cs) < order:
                cs.extend(Fraction(0) for _ in range(order - len(cs)))
            else:
                del cs[order:]
        elif not cs:
            raise InsufficientOrder("series needs at least one coefficient")
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("PowerSeries is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int) -> Fraction:
        if not 0 <= i < self.order:
            raise InsufficientOrder(
                f"coefficient {i} beyond valid order {self.order}", index=i
            )
        return self.coeffs[i]

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(self.order, order))

    def shift(self, k: int) -> "PowerSeries":
        """Multiply by the k-th power of the variable; order grows by k."""
        if k < 0:
            raise ValueError("shift amount must be nonnegative")
        return PowerSeries((Fraction(0),) * k + self.coeffs, self.order + k)

    def valuation(self):
        """Index of the first nonzero valid coefficient, or None if all zero."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def strip(self, v: int) -> "PowerSeries":
        """Divide by the v-th power of the variable; the first v coefficients
        must be exact zeros.  Order shrinks by v."""
        if v == 0:
            return self
        if v < 0 or v >= self.order:
            raise InsufficientOrder(f"cannot strip {v} terms from order {self.order}")
        if any(c != 0 for c in self.coeffs[:v]):
            raise ValueError("strip requires leading zero coefficients")
        return PowerSeries(self.coeffs[v:], self.order - v)

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        k = min(self.order, other.order)
        return PowerSeries(
            tuple(self.coeffs[i] + other.coeffs[i] for i in range(k)), k
        )

    def __neg__(self) -> "PowerSeries":
        return PowerSeries(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            k = min(self.order, other.order)
            out = [Fraction(0)] * k
            for i, a in enumerate(self.coeffs[:k]):
                if a:
                    for j in range(k - i):
                        b = other.coeffs[j]
                        if b:
                            out[i + j] += a * b
            return PowerSeries(out, k)
        c = as_fraction(other)
        return PowerSeries(tuple(c * a for a in self.coeffs), self.order)

    def __rmul__(self, other) -> "PowerSeries":
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PowerSeries)
            and self.order == other.order
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def agrees_with(self, other: "PowerSeries", through: int | None = None) -> bool:
        """Coefficientwise equality through a prefix (default: common order)."""
        k = min(self.order, other.order)
        if through is not None:
            if through > k:
                raise InsufficientOrder(
                    f"cannot compare through {through}, only {k} coefficients valid"
                )
            k = through
        return self.coeffs[:k] == other.coeffs[:k]

    def __repr__(self):
        return f"PowerSeries({[format_rational(c) for c in self.coeffs]}, order={self.order})"

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "PowerSeries":
        return cls([parse_rational(c) for c in data])


def series_div(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    """Quotient num/den of truncated series.

    The denominator must have a nonzero constant term; otherwise
    :class:`ZeroConstantTerm` is raised.  The result is valid through
    the smaller of the two operand orders.
    """
    if den.coeffs[0] == 0:
        raise ZeroConstantTerm("division by a series with zero constant term")
    k = min(num.order, den.order)
    inv0 = 1 / den.coeffs[0]
    out = []
    for i in range(k):
        acc = num.coeffs[i]
        for j in range(1, i + 1):
            dj = den.coeffs[j]
            if dj:
                acc -= dj * out[i - j]
        out.append(acc * inv0)
    return PowerSeries(out, k)


def series_sqrt(s: PowerSeries) -> PowerSeries:
    """Square root of a truncated series with positive square constant term.

    The constant term must be the square of a nonzero rational; the
    branch with positive constant term is returned.  Computed by the
    successive-approximation update r <- (r + s/r) / 2, doubling the
    trusted order each round.
    """
    c0 = s.coeffs[0]
    if c0 == 0:
        raise ZeroConstantTerm("square root of a series with zero constant term")
    root0 = rational_sqrt(c0)
    if root0 is None:
        raise NonSquareConstant(
            f"constant term {format_rational(c0)} has no positive rational root"
        )
    target = s.order
    r = PowerSeries((root0,), 1)
    m = 1
    while m < target:
        m = min(2 * m, target)
        padded = PowerSeries(r.coeffs, m)
        r = (padded + series_div(s.truncate(m), padded)) * Fraction(1, 2)
    return r
