"""Truncated sequences of polynomials viewed as linear operators.

A linear map on polynomials with bounded degree growth is stored by its
values on the monomial basis: entry n is the image of x**n.  Under that
encoding, applying ``inner`` first and ``outer`` second corresponds to

    compose(outer, inner)[k] = sum_j coeff_j(inner[k]) * outer[j],

so the entries of the inner factor select and weight entries of the
outer one.

A :class:`PolySeq` keeps only the first ``length`` entries together with
a declared degree excess d, the guarantee that entry n has degree at
most n + d.  The excess is the bookkeeping currency that makes
truncation safe: composing consumes up to ``max(excess(inner), 0)``
trailing entries of the outer factor, and :func:`compose` raises
:class:`InsufficientLength` instead of silently producing wrong high
entries when the outer factor is too short.  Excesses add under
composition.  The declared excess is a bound, not data, so two
sequences with identical entries are equal regardless of their tags.

Basis operators, each with its excess:

==================  =============================================  ======
identity(n)         x**k -> x**k                                     0
mul_x(n)            x**k -> x**(k+1)                                +1
div_x(n)            x**k -> x**(k-1), constants -> 0                -1
derivative_op(n)    x**k -> k * x**(k-1)                            -1
==================  =============================================  ======

``div_x`` is a left inverse of ``mul_x``: composing them in that order
restores the identity, while the opposite order kills constants.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    InsufficientLength,
    InsufficientOrder,
    NotDegreePreserving,
)
from .exact import Poly, PowerSeries, as_fraction


class PolySeq:
    """Immutable truncated polynomial sequence with a declared degree excess."""

    __slots__ = ("entries", "excess")

    def __init__(self, entries: Iterable[Poly], excess: int):
        entries = tuple(entries)
        if not entries:
            raise InsufficientLength("a sequence needs at least one entry")
        for n, p in enumerate(entries):
            # zero entries satisfy every degree bound
            if p.degree >= 0 and p.degree > n + excess:
                raise ValueError(
                    f"entry {n} has degree {p.degree}, above the bound {n + excess}"
                )
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "excess", excess)

    def __setattr__(self, name, value):
        raise AttributeError("PolySeq is immutable")

    @property
    def length(self) -> int:
        return len(self.entries)

    def entry(self, n: int) -> Poly:
        if not 0 <= n < self.length:
            raise InsufficientLength(f"entry {n} beyond length {self.length}", entry=n)
        return self.entries[n]

    def __iter__(self):
        return iter(self.entries)

    def truncate(self, length: int) -> "PolySeq":
        if not 1 <= length <= self.length:
            raise InsufficientLength(
                f"cannot truncate length {self.length} to {length}"
            )
        if length == self.length:
            return self
        return PolySeq(self.entries[:length], self.excess)

    def with_excess(self, excess: int) -> "PolySeq":
        """Re-tag with a different declared excess (validated on build)."""
        return PolySeq(self.entries, excess)

    def apply(self, p: Poly) -> Poly:
        """Image of the polynomial p under the operator."""
        if p.degree >= self.length:
            raise InsufficientLength(
                f"applying to degree {p.degree} needs {p.degree + 1} entries, "
                f"have {self.length}"
            )
        acc = Poly.zero()
        for j, c in enumerate(p.coeffs):
            if c:
                acc = acc + c * self.entries[j]
        return acc

    def __call__(self, p: Poly) -> Poly:
        return self.apply(p)

    def __add__(self, other: "PolySeq") -> "PolySeq":
        k = min(self.length, other.length)
        return PolySeq(
            tuple(self.entries[i] + other.entries[i] for i in range(k)),
            max(self.excess, other.excess),
        )

    def __neg__(self) -> "PolySeq":
        return PolySeq(tuple(-p for p in self.entries), self.excess)

    def __sub__(self, other: "PolySeq") -> "PolySeq":
        return self + (-other)

    def __mul__(self, other) -> "PolySeq":
        c = as_fraction(other)
        return PolySeq(tuple(c * p for p in self.entries), self.excess)

    def __rmul__(self, other) -> "PolySeq":
        return self.__mul__(other)

    def __eq__(self, other) -> bool:
        # the excess tag is a bound, not data
        return isinstance(other, PolySeq) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        shown = ", ".join(p.pretty() for p in self.entries[:4])
        if self.length > 4:
            shown += ", ..."
        return f"PolySeq(length={self.length}, excess={self.excess}, [{shown}])"

    def to_json_dict(self) -> dict:
        return {
            "length": self.length,
            "excess": self.excess,
            "entries": [p.to_json() for p in self.entries],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PolySeq":
        entries = [Poly.from_json(e) for e in data["entries"]]
        if len(entries) != data["length"]:
            raise InsufficientLength("length field disagrees with entry count")
        return cls(entries, data["excess"])


def identity(length: int) -> PolySeq:
    """The identity operator: entries (1, x, x^2, ...)."""
    return PolySeq(tuple(Poly.monomial(n) for n in range(length)), 0)


def mul_x(length: int) -> PolySeq:
    """Multiplication by x: entries (x, x^2, ...), excess +1."""
    return PolySeq(tuple(Poly.monomial(n + 1) for n in range(length)), 1)


def div_x(length: int) -> PolySeq:
    """Drop the constant term and divide by x: entries (0, 1, x, ...), excess -1."""
    return PolySeq(
        (Poly.zero(),) + tuple(Poly.monomial(n) for n in range(length - 1)), -1
    )


def derivative_op(length: int) -> PolySeq:
    """Differentiation: entries (0, 1, 2x, 3x^2, ...), excess -1."""
    return PolySeq(
        (Poly.zero(),)
        + tuple(Poly.monomial(n, n + 1) for n in range(length - 1)),
        -1,
    )


def compose(outer: PolySeq, inner: PolySeq) -> PolySeq:
    """Operator product applying ``inner`` first, then ``outer``.

    Entry k of the result is sum_j coeff_j(inner[k]) * outer[j].  The
    outer factor must carry ``inner.length + max(inner.excess, 0)``
    entries so that every referenced index exists; otherwise
    :class:`InsufficientLength` is raised.  The result keeps the inner
    length and the excesses add.
    """
    need = inner.length + max(inner.excess, 0)
    if outer.length < need:
        raise InsufficientLength(
            f"outer factor has {outer.length} entries, needs {need}",
            have=outer.length,
            need=need,
        )
    out = []
    for q in inner.entries:
        acc = Poly.zero()
        for j, c in enumerate(q.coeffs):
            if c:
                acc = acc + c * outer.entries[j]
        out.append(acc)
    return PolySeq(out, outer.excess + inner.excess)


def power(seq: PolySeq, k: int) -> PolySeq:
    """k-fold composition of a sequence with itself; power(seq, 0) is the identity.

    Each step revalidates the composition precondition, so a sequence
    with positive excess loses excess-many entries per step.
    """
    if k < 0:
        raise InsufficientLength("negative powers are not defined here")
    if k == 0:
        return identity(seq.length)
    acc = seq
    headroom = max(seq.excess, 0)
    for _ in range(k - 1):
        cut = acc.length - headroom
        if cut < 1:
            raise InsufficientLength(
                f"length {seq.length} cannot support power {k} at excess {seq.excess}"
            )
        acc = compose(acc, seq.truncate(cut))
    return acc


def invert(seq: PolySeq) -> PolySeq:
    """Inverse of a degree-preserving sequence.

    Requires declared excess 0 and exact degree n in entry n (checked;
    :class:`NotDegreePreserving` otherwise).  The result satisfies
    compose(result, seq) = compose(seq, result) = identity on the
    common length.
    """
    if seq.excess != 0:
        raise NotDegreePreserving(
            f"inversion needs declared excess 0, got {seq.excess}"
        )
    out: list[Poly] = []
    for n, p in enumerate(seq.entries):
        lead = p.coeff(n)
        if lead == 0:
            raise NotDegreePreserving(
                f"entry {n} has degree below {n}", entry=n
            )
        acc = Poly.monomial(n)
        for j in range(n):
            aj = p.coeff(j)
            if aj:
                acc = acc - aj * out[j]
        out.append(acc * (1 / lead))
    return PolySeq(out, 0)


def series_in_div_x(series: PowerSeries, length: int) -> PolySeq:
    """Realize sum_j c_j * div_x**j as a sequence of the given length.

    Entry n is c_0 x^n + c_1 x^(n-1) + ... + c_n, a lower-triangular
    Toeplitz action on coefficients, so the series must carry at least
    ``length`` valid coefficients (:class:`InsufficientOrder` otherwise).
    """
    if series.order < length:
        raise InsufficientOrder(
            f"series order {series.order} below requested length {length}"
        )
    cs = series.coeffs
    out = []
    for n in range(length):
        out.append(Poly(tuple(cs[n - i] for i in range(n + 1))))
    return PolySeq(out, 0)


def check_derivative_commutator(m: int, length: int) -> bool:
    """Exactly check that the (m+1)-th derivative power and mul_x commute
    into (m+1) times the m-th derivative power, through the usable length."""
    if m < 0:
        raise InsufficientLength("m must be nonnegative")
    if length < m + 3:
        raise InsufficientLength(
            f"length {length} too small to see the identity at m={m}"
        )
    d1 = derivative_op(length)
    f = mul_x(length)
    dpow = power(d1, m + 1)
    lhs = compose(dpow, f.truncate(length - 1)) - compose(f, dpow).truncate(length - 1)
    rhs = ((m + 1) * power(d1, m)).truncate(length - 1)
    return lhs == rhs


def first_mismatch(
    a: PolySeq, b: PolySeq, through: Optional[int] = None
) -> Optional[tuple[int, int]]:
    """First (entry, coefficient index) where two sequences differ, else None.

    Compares through ``through`` entries, defaulting to the common length.
    """
    k = min(a.length, b.length)
    if through is not None:
        if through > k:
            raise InsufficientLength(
                f"cannot compare through {through}, only {k} entries valid"
            )
        k = through
    for n in range(k):
        pa, pb = a.entries[n], b.entries[n]
        if pa != pb:
            top = max(len(pa.coeffs), len(pb.coeffs))
            for i in range(top):
                if pa.coeff(i) != pb.coeff(i):
                    return (n, i)
    return None


def first_nonzero(seq: PolySeq) -> Optional[tuple[int, int]]:
    """First (entry, coefficient index) holding a nonzero value, else None."""
    for n, p in enumerate(seq.entries):
        if not p.is_zero:
            for i, c in enumerate(p.coeffs):
                if c != 0:
                    return (n, i)
    return None


def max_norm(seq: PolySeq) -> Fraction:
    """Largest absolute coefficient across all entries (exact)."""
    best = Fraction(0)
    for p in seq.entries:
        for c in p.coeffs:
            a = -c if c < 0 else c
            if a > best:
                best = a
    return best
