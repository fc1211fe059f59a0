"""Closed forms for the free quadratic harness (gamma = -sigma*tau).

At gamma = -sigma*tau the commutator kernel H_t is a triangular
function of the lowering operator: with w(x) = 1 + eta x + sigma x^2,

    H_t = w(F) phi_t(div_x) div_x / (1 + sigma t),
    A_t = w(F) d/dx phi_t(div_x) div_x / (1 + sigma t),

where phi_t(z) = sum_{k>=1} c_k(t) z^(k-1) is the moment generating
function of a free Meixner law nu_t.  The coefficients obey a quadratic
convolution recurrence (c_1 = 1, c_2 = (theta + eta*tau)/(1 - sigma*tau))
and, for sigma*tau < 1, phi_t is the branch through 1 at z = 0 of

    (z^2 + eta z + sigma)(t + tau) phi^2
        + ((theta - t eta) z - 2 t sigma - sigma tau - 1) phi
        + t sigma + 1 = 0,

extracted here in the rationalized form 2(1 + t sigma) / (A + sqrt(A^2 - 4B))
whose constant term under the root is (1 - sigma*tau)^2, a rational
square, so the series square root applies for every admissible
parameter choice including sigma = 0.

The measure layer exposes the moments m_k(nu_t) = c_{k+1}(t), Hankel
determinants, and the Cauchy-Stieltjes transforms of nu_t and of the
underlying time-zero law pi, where nu_t is a quadratic-weight
reweighting of pi:

    nu_t(dx) = (t^2 + theta t x + tau x^2) / (t (t + tau)) pi(dx).

Laurent expansions at infinity are handled in the substituted variable
w = 1/z, and G_pi is produced by two independent routes (transform
division against G_nu, and direct expansion of an explicit square-root
formula) whose exact agreement is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    DegenerateDenominator,
    HypothesisViolation,
    InsufficientOrder,
    InvalidParameter,
)
from .exact import PowerSeries, as_fraction, format_rational, parse_rational, series_div, series_sqrt
from .harness import HarnessParams
from .opalgebra import (
    PolySeq,
    compose,
    derivative_op,
    div_x,
    identity,
    mul_x,
    power,
    series_in_div_x,
)


@dataclass(frozen=True)
class FreeParams:
    """Parameters (eta, theta, sigma, tau) of a free quadratic harness;
    gamma is pinned to -sigma*tau.  Requires sigma, tau >= 0 and
    sigma*tau != 1."""

    eta: Fraction
    theta: Fraction
    sigma: Fraction
    tau: Fraction

    def __init__(self, eta, theta, sigma, tau):
        for name, value in (
            ("eta", eta),
            ("theta", theta),
            ("sigma", sigma),
            ("tau", tau),
        ):
            object.__setattr__(self, name, as_fraction(value))
        if self.sigma < 0 or self.tau < 0:
            raise InvalidParameter("sigma and tau must be nonnegative")
        if self.sigma * self.tau == 1:
            raise InvalidParameter("sigma * tau = 1 is excluded")

    @property
    def gamma(self) -> Fraction:
        return -self.sigma * self.tau

    @property
    def alpha(self) -> Fraction:
        return (self.eta + self.theta * self.sigma) / (1 - self.sigma * self.tau)

    @property
    def beta(self) -> Fraction:
        return (self.eta * self.tau + self.theta) / (1 - self.sigma * self.tau)

    def harness_params(self) -> HarnessParams:
        return HarnessParams(self.eta, self.theta, self.sigma, self.tau, self.gamma)

    @property
    def measure_hypotheses_ok(self) -> bool:
        """Exact test of sigma*tau < 1 and 1 + alpha*beta > 0, the conditions
        under which the coefficient sequence is a genuine moment sequence."""
        return self.sigma * self.tau < 1 and 1 + self.alpha * self.beta > 0


def _require_time(t) -> Fraction:
    t = as_fraction(t)
    if t <= 0:
        raise InvalidParameter(f"time must be positive, got {t}")
    return t


def mgf_by_recursion(fp: FreeParams, t, order: int) -> PowerSeries:
    """Coefficients c_1..c_order of the moment series by the quadratic
    convolution recurrence; coefficient i of the result is c_{i+1}."""
    t = _require_time(t)
    if order < 1:
        raise InsufficientOrder("order must be at least 1")
    eta, theta, sigma, tau = fp.eta, fp.theta, fp.sigma, fp.tau
    unit = 1 - sigma * tau
    drift = theta - eta * t
    weight = t + tau
    c = [Fraction(1)]
    if order >= 2:
        c.append(fp.beta)
    for k in range(2, order):
        # c[i] holds c_{i+1}
        s_plain = sum(c[j - 1] * c[k - j - 1] for j in range(1, k))
        s_eta = sum(c[j] * c[k - j - 1] for j in range(k))
        s_sigma = sum(c[j + 1] * c[k - j - 1] for j in range(k - 1))
        c.append(
            (drift * c[k - 1] + weight * (s_plain + eta * s_eta + sigma * s_sigma))
            / unit
        )
    return PowerSeries(c, order)


def mgf_by_closed_form(fp: FreeParams, t, order: int) -> PowerSeries:
    """The same coefficients from the quadratic formula, rationalized so the
    square root sits over a series with constant term (1 - sigma*tau)^2.
    Implemented for sigma*tau < 1 only."""
    t = _require_time(t)
    if fp.sigma * fp.tau >= 1:
        raise HypothesisViolation("closed form implemented for sigma*tau < 1 only")
    eta, theta, sigma, tau = fp.eta, fp.theta, fp.sigma, fp.tau
    lin = PowerSeries(
        (2 * t * sigma + sigma * tau + 1, t * eta - theta), order
    )
    quad_scale = (1 + t * sigma) * (t + tau)
    quad = PowerSeries(
        (sigma * quad_scale, eta * quad_scale, quad_scale), order
    )
    root = series_sqrt(lin * lin - 4 * quad)
    return series_div(
        PowerSeries((2 * (1 + t * sigma),), order), lin + root
    )


def mgf_equation_residual(fp: FreeParams, t, series: PowerSeries) -> PowerSeries:
    """Plug a candidate series into the defining quadratic; zero through the
    valid order certifies it."""
    t = _require_time(t)
    eta, theta, sigma, tau = fp.eta, fp.theta, fp.sigma, fp.tau
    n = series.order
    quad = PowerSeries((sigma * (t + tau), eta * (t + tau), t + tau), n)
    lin = PowerSeries(
        (-(2 * t * sigma + sigma * tau + 1), theta - t * eta), n
    )
    const = PowerSeries((t * sigma + 1,), n)
    return quad * series * series + lin * series + const


def _weight_factor(fp: FreeParams, length: int) -> PolySeq:
    # 1 + eta x + sigma x^2 as an operator polynomial in mul_x
    w = identity(length) + fp.eta * mul_x(length)
    if fp.sigma:
        w = w + fp.sigma * power(mul_x(length + 1), 2)
    else:
        w = w.with_excess(2)
    return w


def commutator_closed_form(fp: FreeParams, t, length: int) -> PolySeq:
    """Kernel H_t assembled from the moment series as
    w(F) . series(div_x) . div_x scaled by 1/(1 + sigma t)."""
    t = _require_time(t)
    series = mgf_by_recursion(fp, t, length)
    sd = compose(series_in_div_x(series, length), div_x(length))
    return (1 / (1 + fp.sigma * t)) * compose(_weight_factor(fp, length), sd)


def generator_closed_form(fp: FreeParams, t, length: int) -> PolySeq:
    """Generator A_t assembled from the moment series as
    w(F) . d/dx . series(div_x) . div_x scaled by 1/(1 + sigma t)."""
    t = _require_time(t)
    series = mgf_by_recursion(fp, t, length)
    sd = compose(series_in_div_x(series, length), div_x(length))
    dsd = compose(derivative_op(length), sd)
    return (1 / (1 + fp.sigma * t)) * compose(_weight_factor(fp, length), dsd)


@dataclass(frozen=True)
class MomentSequence:
    """A finite run m_0, m_1, ... of moments."""

    moments: tuple[Fraction, ...]

    def __init__(self, moments):
        object.__setattr__(
            self, "moments", tuple(as_fraction(m) for m in moments)
        )

    def __len__(self):
        return len(self.moments)

    def __getitem__(self, k) -> Fraction:
        return self.moments[k]

    def to_json_dict(self) -> dict:
        return {"moments": [format_rational(m) for m in self.moments]}

    @classmethod
    def from_json_dict(cls, data: dict) -> "MomentSequence":
        return cls(parse_rational(m) for m in data["moments"])


def _require_measure_hypotheses(fp: FreeParams):
    if not fp.measure_hypotheses_ok:
        raise HypothesisViolation(
            "need sigma*tau < 1 and 1 + alpha*beta > 0 for the measure layer",
            sigma_tau=fp.sigma * fp.tau,
            one_plus_alpha_beta=1 + fp.alpha * fp.beta,
        )


def measure_moments(fp: FreeParams, t, count: int) -> MomentSequence:
    """Moments m_0..m_count of nu_t; m_k equals coefficient k of the moment
    series.  Requires the measure hypotheses."""
    _require_measure_hypotheses(fp)
    series = mgf_by_recursion(fp, t, count + 1)
    return MomentSequence(series.coeffs)


def _det(mat: list[list[Fraction]]) -> Fraction:
    n = len(mat)
    m = [row[:] for row in mat]
    det = Fraction(1)
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if m[r][col] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            det = -det
        pivot = m[col][col]
        det *= pivot
        inv = 1 / pivot
        for r in range(col + 1, n):
            f = m[r][col] * inv
            if f:
                for c2 in range(col, n):
                    m[r][c2] -= f * m[col][c2]
    return det


def hankel_determinants(moments) -> list[Fraction]:
    """Leading principal Hankel determinants det[m_{i+j}] for sizes 1 up to
    floor(K/2)+1, where K is the top moment index.  All nonnegative exactly
    when the sequence is a genuine moment sequence."""
    ms = list(moments.moments if isinstance(moments, MomentSequence) else moments)
    if len(ms) < 3:
        raise InvalidParameter("need at least 3 moments")
    ms = [as_fraction(m) for m in ms]
    top = (len(ms) - 1) // 2
    out = []
    for half in range(top + 1):
        mat = [
            [ms[i + j] for j in range(half + 1)] for i in range(half + 1)
        ]
        out.append(_det(mat))
    return out


def _cancel_div(num: PowerSeries, den: PowerSeries) -> PowerSeries:
    # divide after stripping the denominator's valuation, which the
    # numerator must share
    v = den.valuation()
    if v is None:
        raise DegenerateDenominator("denominator vanishes through its whole order")
    if v:
        if any(c != 0 for c in num.coeffs[: min(v, num.order)]):
            raise DegenerateDenominator(
                f"numerator valuation below denominator valuation {v}"
            )
        if num.order <= v:
            raise InsufficientOrder("numerator too short to strip the valuation")
        num = num.strip(v)
        den = den.strip(v)
    return series_div(num, den)


@dataclass(frozen=True)
class CauchyTransforms:
    """Cauchy-Stieltjes data at infinity, series in w = 1/z: coefficient of
    w^(k+1) is the k-th moment.  ``routes_agree`` records the exact match of
    the two independent G_pi computations."""

    g_nu: PowerSeries
    g_pi: PowerSeries
    pi_moments: MomentSequence
    routes_agree: bool


def cauchy_transforms(fp: FreeParams, t, order: int) -> CauchyTransforms:
    """Transforms of nu_t and pi through w^order, with pi recovered by two
    routes: dividing the reweighting relation, and expanding a direct
    square-root formula.  Requires the measure hypotheses."""
    t = _require_time(t)
    _require_measure_hypotheses(fp)
    if order < 2:
        raise InsufficientOrder("order must be at least 2")
    eta, theta, sigma, tau = fp.eta, fp.theta, fp.sigma, fp.tau
    alpha, beta = fp.alpha, fp.beta
    work = order + 8

    m_nu = mgf_by_recursion(fp, t, work)
    g_nu = m_nu.shift(1).truncate(order + 1)

    # route one: invert nu(dx) = (t^2 + theta t x + tau x^2)/(t(t+tau)) pi(dx)
    a = tau / (t * (t + tau))
    b = theta / (t + tau)
    c = t / (t + tau)
    num = PowerSeries((a, b), work) + m_nu.shift(2).truncate(work)
    den = PowerSeries((a, b, c), work)
    m_pi = _cancel_div(num, den)
    g_pi = m_pi.shift(1).truncate(order + 1)
    pi_moments = MomentSequence(m_pi.coeffs[:order])

    # route two: direct expansion of G_pi at infinity
    slope_sum = (alpha + sigma * beta) * t + beta + alpha * tau
    inner = PowerSeries(
        (
            (1 - sigma * tau) ** 2,
            -2 * (1 - sigma * tau) * slope_sum,
            slope_sum**2 - 4 * (1 + sigma * t) * (t + tau) * (1 + alpha * beta),
        ),
        work,
    )
    root = series_sqrt(inner)
    bracket = PowerSeries((1 + sigma * tau + 2 * sigma * t, t * eta - theta), work) - root
    weight_poly = PowerSeries((tau, theta * t, t * t), work)
    first = _cancel_div(PowerSeries((0, tau, theta * t), work), weight_poly)
    quad = PowerSeries((sigma, eta, 1), work)
    second = _cancel_div(
        (t * bracket.shift(3)).truncate(work), (2 * quad * weight_poly)
    )
    g_pi_direct = (first + second).truncate(order + 1)

    routes_agree = g_pi.agrees_with(g_pi_direct, order + 1)
    return CauchyTransforms(
        g_nu=g_nu, g_pi=g_pi, pi_moments=pi_moments, routes_agree=routes_agree
    )


def _int_root_ceiling(target: Fraction, k: int) -> int:
    # least integer i >= 1 with i**k >= target
    if target <= 1:
        return 1
    lo, hi = 1, 2
    while Fraction(hi**k) < target:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid**k) >= target:
            hi = mid
        else:
            lo = mid + 1
    return lo


@dataclass(frozen=True)
class GrowthBound:
    bound: Fraction
    holds: bool


def coefficient_growth_holds(coeffs: Sequence, bound) -> bool:
    """Check |c_k| * k^2 <= bound^(k-2) for every k from 3 through the end of
    the list, where coeffs[i] holds c_{i+1}."""
    bound = as_fraction(bound)
    cs = [as_fraction(c) for c in coeffs]
    p = bound  # bound^(k-2), starting at k=3
    for k in range(3, len(cs) + 1):
        c = cs[k - 1]
        if abs(c) * k * k > p:
            return False
        p *= bound
    return True


def growth_bound(fp: FreeParams, t, count: int) -> GrowthBound:
    """Geometric envelope for the moment coefficients.

    The bound is the largest of 1, the closed-form constant
    4A + (24|c_2| + 175)B with A = |theta - eta t| / |1 - sigma tau| and
    B = (t + tau)(1 + |eta| + sigma) / |1 - sigma tau|, and the smallest
    rational seeds making |c_k| k^2 <= bound^(k-2) hold for k = 3..6
    (exact for k = 3; integer root ceilings for k = 4..6, where the true
    minimum is irrational).  ``holds`` reports the exact check of the
    envelope over every k from 3 through count.
    """
    t = _require_time(t)
    if count < 7:
        raise InvalidParameter("count must be at least 7")
    unit = abs(1 - fp.sigma * fp.tau)
    a = abs(fp.theta - fp.eta * t) / unit
    b = (t + fp.tau) * (1 + abs(fp.eta) + fp.sigma) / unit
    cs = mgf_by_recursion(fp, t, count).coeffs
    bound = max(Fraction(1), 4 * a + (24 * abs(cs[1]) + 175) * b, 9 * abs(cs[2]))
    for k in range(4, 7):
        need = Fraction(k * k) * abs(cs[k - 1])
        bound = max(bound, Fraction(_int_root_ceiling(need, k - 2)))
    return GrowthBound(bound=bound, holds=coefficient_growth_holds(cs, bound))
