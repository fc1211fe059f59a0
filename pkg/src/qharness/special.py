"""Exponential-shift closed forms for the two degenerate harness families.

When gamma = 1 and sigma = tau = 0 the commutator kernel collapses to a
polynomial in the derivative alone.  Writing D for d/dx and d for the
shift scale theta - t*eta:

    Poisson family (eta = 0):   H = (exp(theta D) - 1) / theta,
                                A = (exp(theta D) - 1 - theta D) / theta**2,
    shifted family (eta free):  H = (1 + eta x)(exp(d D) - 1) / d,
                                A = (1 + eta x)(exp(d D) - 1 - d D) / d**2.

Both are t-independent in the first case and depend on t only through d
in the second; d = 0 is a genuine degeneracy (:class:`ResonantTime`).

The module also exposes the underlying machinery: a
:class:`DerivativeSeries` stores an operator sum_k c_k D**k / k! by its
divided-power coefficients, realizes it as a :class:`PolySeq`, and the
kernel-to-generator passage becomes a one-slot coefficient shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable

from .errors import InvalidParameter, ResonantTime
from .exact import Poly, as_fraction, format_rational
from .opalgebra import PolySeq, compose, identity, mul_x


@dataclass(frozen=True)
class DerivativeSeries:
    """Operator sum_{k>=1} c_k D**k / k! stored as (c_1, c_2, ...).

    Coefficients beyond the stored tuple are zero.  The divided-power
    normalization makes the action on monomials binomial:
    x**n maps to sum_k c_k C(n, k) x**(n-k).
    """

    coeffs: tuple

    def __init__(self, coeffs: Iterable):
        object.__setattr__(
            self, "coeffs", tuple(as_fraction(c) for c in coeffs)
        )

    def coeff(self, k: int) -> Fraction:
        if k < 1:
            raise InvalidParameter("divided-power index starts at 1", index=k)
        if k <= len(self.coeffs):
            return self.coeffs[k - 1]
        return Fraction(0)

    def realize(self, length: int) -> PolySeq:
        """First ``length`` images of the monomial basis, excess -1."""
        entries = [Poly.zero()]
        for n in range(1, length):
            asc = [self.coeff(n - i) * comb(n, n - i) for i in range(n)]
            entries.append(Poly(asc))
        return PolySeq(entries, -1)

    def integrate(self) -> "DerivativeSeries":
        """Shift every coefficient one slot up.

        This is the kernel-to-generator passage: if H = s(D) with
        s(0) = 0, the operator with x**n mapped to
        sum_k x**k H x**(n-1-k) is the realization of the shifted
        series.
        """
        return DerivativeSeries((Fraction(0),) + self.coeffs)


def generator_from_derivative_series(series: DerivativeSeries, length: int) -> PolySeq:
    """Generator matching the kernel ``series``; entries have excess -2."""
    return series.integrate().realize(length).with_excess(-2)


def exp_derivative(scale, length: int, drop: int = 0) -> PolySeq:
    """Shift operator exp(scale * D) minus its first ``drop`` Taylor terms.

    Entry n is sum_{k=drop}^{n} scale**k C(n, k) x**(n-k); drop 0, 1, 2
    give the shift itself, shift - 1, and shift - 1 - scale*D.  The
    declared excess is -drop.
    """
    if drop not in (0, 1, 2):
        raise InvalidParameter("drop must be 0, 1, or 2", drop=drop)
    s = as_fraction(scale)
    entries = []
    for n in range(length):
        asc = [
            s ** (n - i) * comb(n, n - i) if n - i >= drop else Fraction(0)
            for i in range(n + 1)
        ]
        entries.append(Poly(asc))
    return PolySeq(entries, -drop)


@dataclass(frozen=True)
class ClosedFormPair:
    commutator: PolySeq
    generator: PolySeq

    def to_json_dict(self) -> dict:
        return {
            "commutator": self.commutator.to_json_dict(),
            "generator": self.generator.to_json_dict(),
        }


def poisson(theta, length: int) -> ClosedFormPair:
    """Closed forms at gamma = 1, eta = sigma = tau = 0; t-independent."""
    th = as_fraction(theta)
    if th == 0:
        raise InvalidParameter(
            "the shift scale theta must be nonzero", theta=format_rational(th)
        )
    kernel = (1 / th) * exp_derivative(th, length, drop=1)
    gen = (1 / th**2) * exp_derivative(th, length, drop=2)
    return ClosedFormPair(kernel, gen)


def quantum_bessel(eta, theta, t, length: int) -> ClosedFormPair:
    """Closed forms at gamma = 1, sigma = tau = 0 with the x-linear weight.

    The shift scale is d = theta - t*eta; at d = 0 the family loses its
    closed form and :class:`ResonantTime` is raised.
    """
    e = as_fraction(eta)
    th = as_fraction(theta)
    tt = as_fraction(t)
    if tt <= 0:
        raise InvalidParameter("time must be positive", time=format_rational(tt))
    d = th - tt * e
    if d == 0:
        raise ResonantTime(
            "theta equals t * eta, the shift scale vanishes",
            eta=format_rational(e),
            theta=format_rational(th),
            time=format_rational(tt),
        )
    weight = identity(length) + e * mul_x(length)
    kernel = (1 / d) * compose(weight, exp_derivative(d, length, drop=1))
    gen = (1 / d**2) * compose(weight, exp_derivative(d, length, drop=2))
    return ClosedFormPair(kernel, gen)
