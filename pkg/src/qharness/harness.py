"""Quadratic-harness pipeline: commutation solver, martingale polynomials,
transitions, slope recovery, and an exact verification report.

A quadratic harness is a two-parameter family of unital, degree
preserving linear maps P[s,t] on polynomials (0 <= s <= t) that fix
constants and first-degree behaviour, compose along the time axis
(P[s,t] after P[t,u] equals P[s,u]), and interact with multiplication
by x through a slope operator X:

    P[0,t] . mul_x = (mul_x + t X) . P[0,t],

where X satisfies a quadratic commutation law with five scalar
parameters (eta, theta, sigma, tau, gamma):

    X F - gamma F X = E + eta F + theta X + sigma F^2 + tau X^2,

writing F for mul_x and E for the identity.  Everything in this module
is derived from one auxiliary object: the commutator kernel H_t of the
family's infinitesimal generator with mul_x.  H_t solves, entry by
entry, an equivalent commutation identity in which the slope has been
eliminated in favour of T_t = F - t H_t:

    H T - gamma T H = E + theta H + eta T + tau H^2 + sigma T^2.

Collecting the top coefficient of each entry turns that identity into a
linear recurrence with an exactly computable pivot; a vanishing pivot
means no solution continues (ZeroPivot).  From H_t the module builds

  * the generator A_t (sum over k of F^k . H_t . div_x^(k+1), which
    collapses entrywise to a finite sum),
  * the martingale polynomials M_t, iterating p -> x p - t H_t(p), the
    inverse maps of P[0,t],
  * transitions P[s,t] = M_s composed with the inverse of M_t,
  * the recovered slope X = M_t^{-1} . H_t . M_t, which must not depend
    on t.

All arithmetic is exact; `verify` re-checks every defining identity and
reports the first offending entry and coefficient on failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    DegenerateLeadingCoefficient,
    InsufficientLength,
    InvalidParameter,
    ZeroPivot,
)
from .exact import Poly, as_fraction
from .opalgebra import (
    PolySeq,
    compose,
    first_mismatch,
    first_nonzero,
    identity,
    invert,
    max_norm,
    mul_x,
)


@dataclass(frozen=True)
class HarnessParams:
    """The five scalars (eta, theta, sigma, tau, gamma) of a quadratic harness.

    sigma * tau = 1 is rejected outright; the pipeline's uniqueness
    argument and the free-case formulas all divide by 1 - sigma*tau.
    Negative sigma or tau is allowed for exploratory runs but flagged via
    ``within_hypotheses``; verification reports carry that flag through.
    ``gamma_certified`` records whether gamma provably stays below
    1 + 2*sqrt(sigma*tau), an advisory bound only.
    """

    eta: Fraction
    theta: Fraction
    sigma: Fraction
    tau: Fraction
    gamma: Fraction

    def __init__(self, eta, theta, sigma, tau, gamma):
        for name, value in (
            ("eta", eta),
            ("theta", theta),
            ("sigma", sigma),
            ("tau", tau),
            ("gamma", gamma),
        ):
            object.__setattr__(self, name, as_fraction(value))
        if self.sigma * self.tau == 1:
            raise InvalidParameter("sigma * tau = 1 is excluded")

    @property
    def within_hypotheses(self) -> bool:
        return self.sigma >= 0 and self.tau >= 0

    @property
    def gamma_certified(self) -> bool:
        """Exact certificate for gamma <= 1 + 2*sqrt(sigma*tau)."""
        if self.gamma <= 1:
            return True
        return (self.gamma - 1) ** 2 <= 4 * self.sigma * self.tau

    def quadratic_weight(self, t: Fraction) -> Fraction:
        """Coefficient sigma t^2 + (1-gamma) t + tau of the square term."""
        return self.sigma * t * t + (1 - self.gamma) * t + self.tau


def _solve_recurrence(params: HarnessParams, t: Fraction, length: int) -> PolySeq:
    # entry-by-entry solution of the commutation identity; valid for t >= 0
    eta, theta, sigma, gamma = params.eta, params.theta, params.sigma, params.gamma
    w = params.quadratic_weight(t)
    base = 1 + sigma * t
    drift = theta - t * eta
    tilt = gamma - sigma * t
    hs = [Poly.zero()]
    for n in range(length - 1):
        hn = hs[n]
        pivot = base - hn.coeff(n + 1) * w
        if pivot == 0:
            raise ZeroPivot(
                f"pivot vanished at entry {n + 1} (t={t})", entry=n + 1, t=t
            )
        rhs = Poly.monomial(n) + Poly.monomial(n + 1, eta) + Poly.monomial(n + 2, sigma)
        if drift:
            rhs = rhs + drift * hn
        if tilt:
            rhs = rhs + tilt * hn.shift(1)
        if w:
            acc = Poly.zero()
            for j in range(n + 1):
                cj = hn.coeff(j)
                if cj:
                    acc = acc + cj * hs[j]
            rhs = rhs + w * acc
        hs.append(rhs * (1 / pivot))
    return PolySeq(hs, 1)


def solve_commutator(params: HarnessParams, t, length: int) -> PolySeq:
    """Solve the commutation identity for the kernel H_t at a time t > 0.

    Entry 0 is pinned to zero; each further entry is forced by the
    previous ones.  Raises :class:`ZeroPivot` when the recurrence's
    leading coefficient vanishes exactly, in which case no kernel with
    zero first entry exists at this time.
    """
    t = as_fraction(t)
    if t <= 0:
        raise InvalidParameter(f"time must be positive, got {t}")
    if length < 1:
        raise InsufficientLength("length must be at least 1")
    return _solve_recurrence(params, t, length)


def generator_from_commutator(h: PolySeq) -> PolySeq:
    """Generator entries a_n = sum_k x^k h_{n-1-k}, the entrywise collapse of
    sum_k F^k . H . div_x^(k+1).  Needs h_0 = 0 and excess at most +1."""
    if h.excess > 1:
        raise InvalidParameter(f"kernel excess must be at most +1, got {h.excess}")
    if not h.entry(0).is_zero:
        raise InvalidParameter("kernel entry 0 must vanish")
    out = [Poly.zero()]
    for n in range(1, h.length):
        acc = Poly.zero()
        for k in range(n):
            acc = acc + h.entries[n - 1 - k].shift(k)
        out.append(acc)
    return PolySeq(out, 0)


def martingale_polys(h: PolySeq, t, length: int) -> PolySeq:
    """Monic-leading martingale polynomials built from the kernel at time t.

    m_0 = 1 and m_{n+1} = x m_n - t H(m_n).  The kernel must carry at
    least length-1 entries.  If some m_n loses its degree-n term the
    transition operator at this time does not exist and
    :class:`DegenerateLeadingCoefficient` is raised.
    """
    t = as_fraction(t)
    if h.length < length - 1:
        raise InsufficientLength(
            f"kernel length {h.length} below required {length - 1}"
        )
    out = [Poly.one()]
    for n in range(1, length):
        prev = out[-1]
        nxt = prev.shift(1) - t * h.apply(prev)
        if nxt.coeff(n) == 0:
            raise DegenerateLeadingCoefficient(
                f"martingale polynomial {n} lost its leading term (t={t})",
                entry=n,
                t=t,
            )
        out.append(nxt)
    return PolySeq(out, 0)


def transition(params: HarnessParams, s, t, length: int) -> PolySeq:
    """Transition operator P[s,t] for 0 <= s <= t, t > 0 (identity when s = t)."""
    s, t = as_fraction(s), as_fraction(t)
    if not 0 <= s <= t:
        raise InvalidParameter(f"need 0 <= s <= t, got s={s}, t={t}")
    if t <= 0:
        raise InvalidParameter("t must be positive")
    if s == t:
        return identity(length)
    m_t = martingale_polys(solve_commutator(params, t, length), t, length)
    if s == 0:
        left = identity(length)
    else:
        left = martingale_polys(solve_commutator(params, s, length), s, length)
    return compose(left, invert(m_t))


def harness_slope(h: PolySeq, m: PolySeq) -> PolySeq:
    """Recover the slope operator X = M^{-1} . H . M.

    The result does not depend on the time at which the kernel and the
    martingale sequence were produced; it is one entry shorter than its
    inputs because conjugation spends one entry of headroom.
    """
    if h.length < m.length:
        raise InsufficientLength(
            f"kernel length {h.length} below martingale length {m.length}"
        )
    hm = compose(h, m)
    return compose(invert(m), hm.truncate(m.length - 1))


def evolution_from_slope(slope: PolySeq, t, length: int) -> PolySeq:
    """Rebuild P[0,t] from the slope alone: entry n is (mul_x + t X)^n
    applied to the constant 1."""
    t = as_fraction(t)
    if slope.length < length - 1:
        raise InsufficientLength(
            f"slope length {slope.length} cannot support {length} entries"
        )
    b = mul_x(slope.length) + t * slope
    out = [Poly.one()]
    for _ in range(length - 1):
        out.append(b.apply(out[-1]))
    return PolySeq(out, 0)


def _kernel_commutation_parts(params, t, h):
    n = h.length
    f = mul_x(n)
    t_op = f - as_fraction(t) * h
    lhs = compose(h, t_op.truncate(n - 1)) - params.gamma * compose(
        t_op, h.truncate(n - 1)
    )
    rhs = (
        identity(n - 1)
        + params.theta * h.truncate(n - 1)
        + params.eta * t_op.truncate(n - 1)
        + params.tau * compose(h, h.truncate(n - 1))
        + params.sigma * compose(t_op, t_op.truncate(n - 1))
    )
    return lhs, rhs


def commutation_residual(params: HarnessParams, t, h: PolySeq) -> PolySeq:
    """Residual of H T - gamma T H = E + theta H + eta T + tau H^2 + sigma T^2
    with T = mul_x - t H; identically zero on a genuine kernel.  Valid one
    entry short of the kernel length."""
    lhs, rhs = _kernel_commutation_parts(params, as_fraction(t), h)
    return lhs - rhs


def expanded_commutation_residual(params: HarnessParams, t, h: PolySeq) -> PolySeq:
    """Residual of the same identity with T eliminated:

    H F - gamma F H = E + theta H + eta (F - tH) + tau H^2
                      + sigma (F - tH)^2 + (1-gamma) t H^2.
    """
    t = as_fraction(t)
    n = h.length
    f = mul_x(n)
    ft = (f - t * h).truncate(n - 1)
    h_cut = h.truncate(n - 1)
    h_sq = compose(h, h_cut)
    lhs = compose(h, f.truncate(n - 1)) - params.gamma * compose(f, h_cut)
    rhs = (
        identity(n - 1)
        + params.theta * h_cut
        + params.eta * ft
        + params.tau * h_sq
        + params.sigma * compose(f - t * h, ft)
        + ((1 - params.gamma) * t) * h_sq
    )
    return lhs - rhs


def slope_quadratic_residual(params: HarnessParams, slope: PolySeq) -> PolySeq:
    """Residual of the slope's quadratic law
    X F - gamma F X = E + eta F + theta X + sigma F^2 + tau X^2,
    valid one entry short of the slope length."""
    n = slope.length
    f_long = mul_x(n + 1)
    cut = slope.truncate(n - 1)
    f_cut = f_long.truncate(n - 1)
    lhs = compose(slope, f_cut) - params.gamma * compose(f_long, cut)
    f_sq = compose(f_long, f_cut)
    rhs = (
        identity(n - 1)
        + params.eta * f_cut
        + params.theta * cut
        + params.sigma * f_sq
        + params.tau * compose(slope, cut)
    )
    return lhs - rhs


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    verified_length: int
    first_failure: Optional[tuple[int, int]]

    def to_json_dict(self) -> dict:
        failure = None
        if self.first_failure is not None:
            failure = {
                "entry": self.first_failure[0],
                "coeff_index": self.first_failure[1],
            }
        return {
            "name": self.name,
            "status": "PASS" if self.passed else "FAIL",
            "verified_length": self.verified_length,
            "first_failure": failure,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "CheckResult":
        failure = data["first_failure"]
        if failure is not None:
            failure = (failure["entry"], failure["coeff_index"])
        return cls(
            name=data["name"],
            passed=data["status"] == "PASS",
            verified_length=data["verified_length"],
            first_failure=failure,
        )


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]
    out_of_hypothesis: bool

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_json_dict(self) -> dict:
        return {
            "out_of_hypothesis": self.out_of_hypothesis,
            "checks": [c.to_json_dict() for c in self.checks],
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "VerificationReport":
        return cls(
            checks=tuple(CheckResult.from_json_dict(c) for c in data["checks"]),
            out_of_hypothesis=data["out_of_hypothesis"],
        )


_LIMIT_STEPS = (Fraction(1, 16), Fraction(1, 32), Fraction(1, 64))


def verify(params: HarnessParams, times: Iterable, depth: int) -> VerificationReport:
    """Exactly verify every defining identity of the harness at the given
    strictly positive times, all objects truncated at ``depth`` entries.

    Checks, in report order: unit entry, first-degree entry, the
    semigroup law over all ordered time pairs and triples (including
    time 0), both forms of the kernel commutation identity, the harness
    relation with the recovered slope, the slope's quadratic law, the
    martingale consistency M_s = P[s,t] M_t, the rebuild of P[0,t] from
    the slope alone, time-independence of the slope, and the decay of
    the finite-difference generator residual (steps 1/16, 1/32, 1/64,
    ratio bounded by 3/5, applied at times above 1/16).
    """
    ts = sorted({as_fraction(t) for t in times})
    if not ts:
        raise InvalidParameter("at least one time is required")
    if any(t <= 0 for t in ts):
        raise InvalidParameter("times must be strictly positive")
    if depth < 3:
        raise InvalidParameter("depth must be at least 3")
    n = depth

    kernel = {t: solve_commutator(params, t, n) for t in ts}
    mart = {t: martingale_polys(kernel[t], t, n) for t in ts}
    mart_inv = {t: invert(mart[t]) for t in ts}
    gen = {t: generator_from_commutator(kernel[t]) for t in ts}
    slope = {t: harness_slope(kernel[t], mart[t]) for t in ts}

    zero = Fraction(0)
    grid = [zero] + ts
    trans = {}
    for i, s in enumerate(grid):
        for t in grid[i + 1 :]:
            left = identity(n) if s == 0 else mart[s]
            trans[(s, t)] = compose(left, mart_inv[t])

    checks = []

    def residual_check(name, verified, residuals):
        failure = None
        for r in residuals:
            failure = first_nonzero(r)
            if failure is not None:
                break
        checks.append(CheckResult(name, failure is None, verified, failure))

    def equality_check(name, verified, pairs):
        failure = None
        for a, b in pairs:
            failure = first_mismatch(a, b, verified)
            if failure is not None:
                break
        checks.append(CheckResult(name, failure is None, verified, failure))

    one, x = Poly.one(), Poly.x()

    # unit: every transition fixes constants
    failure = None
    for p in trans.values():
        if p.entry(0) != one:
            failure = (0, 0)
            break
    checks.append(CheckResult("unit", failure is None, 1, failure))

    # martingale: every transition fixes x
    failure = None
    for p in trans.values():
        if p.entry(1) != x:
            q = p.entry(1)
            for i in range(max(q.degree, 1) + 1):
                if q.coeff(i) != x.coeff(i):
                    failure = (1, i)
                    break
            break
    checks.append(CheckResult("martingale", failure is None, 2, failure))

    equality_check(
        "semigroup",
        n,
        (
            (compose(trans[(s, t)], trans[(t, u)]), trans[(s, u)])
            for i, s in enumerate(grid)
            for j, t in enumerate(grid[i + 1 :], i + 1)
            for u in grid[j + 1 :]
        ),
    )

    residual_check(
        "commutation",
        n - 1,
        (commutation_residual(params, t, kernel[t]) for t in ts),
    )

    residual_check(
        "commutation_expanded",
        n - 1,
        (expanded_commutation_residual(params, t, kernel[t]) for t in ts),
    )

    # harness relation with the recovered slope
    def harness_pair(t):
        p0t = trans[(zero, t)]
        lhs = compose(p0t, mul_x(n).truncate(n - 1))
        rhs_op = mul_x(n - 1) + t * slope[t].truncate(n - 1)
        rhs = compose(rhs_op, p0t.truncate(n - 1))
        return lhs, rhs

    equality_check("harness", n - 1, (harness_pair(t) for t in ts))

    residual_check(
        "quadratic_harness",
        n - 2,
        (slope_quadratic_residual(params, slope[t]).truncate(n - 2) for t in ts),
    )

    equality_check(
        "martingale_consistency",
        n,
        (
            (compose(trans[(s, t)], mart[t]), identity(n) if s == 0 else mart[s])
            for (s, t) in trans
        ),
    )

    equality_check(
        "evolution_reconstruction",
        n - 1,
        (
            (evolution_from_slope(slope[t], t, n - 1), mart_inv[t].truncate(n - 1))
            for t in ts
        ),
    )

    equality_check(
        "slope_time_independence",
        n - 1,
        ((slope[ts[0]], slope[t]) for t in ts[1:]),
    )

    # finite-difference generator residual must shrink by at least 3/5
    # per halving of the step
    limit_failed = False
    tested_any = False
    for t in ts:
        if t <= _LIMIT_STEPS[0]:
            continue
        tested_any = True
        norms = []
        for h_step in _LIMIT_STEPS:
            p = transition(params, t - h_step, t, n)
            r = (p - identity(n)) * (1 / h_step) - gen[t]
            norms.append(max_norm(r))
        if not (5 * norms[1] <= 3 * norms[0] and 5 * norms[2] <= 3 * norms[1]):
            limit_failed = True
            break
    checks.append(
        CheckResult("generator_limit", tested_any and not limit_failed, n, None)
    )

    return VerificationReport(
        checks=tuple(checks), out_of_hypothesis=not params.within_hypotheses
    )
