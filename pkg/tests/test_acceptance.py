"""End-to-end acceptance run.

Each test covers one acceptance criterion and prints a single
PASS line on success; a failed assertion leaves the line unprinted
and surfaces through pytest as the matching FAIL.  Everything here
is exact rational arithmetic, no tolerances anywhere.
"""

import time
from fractions import Fraction

import pytest

from qharness import (
    FreeParams,
    HarnessParams,
    Poly,
    PolySeq,
    ResonantTime,
    cauchy_transforms,
    commutation_residual,
    commutator_closed_form,
    compose,
    evolution_from_slope,
    expanded_commutation_residual,
    first_nonzero,
    generator_closed_form,
    generator_from_commutator,
    growth_bound,
    hankel_determinants,
    harness_slope,
    identity,
    invert,
    martingale_polys,
    max_norm,
    measure_moments,
    mul_x,
    mgf_by_closed_form,
    mgf_by_recursion,
    mgf_equation_residual,
    poisson,
    quantum_bessel,
    slope_quadratic_residual,
    solve_commutator,
    transition,
    verify,
)

SET_A = HarnessParams(
    Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5),
    Fraction(-1, 20),
)
FREE_BM = HarnessParams(0, 0, 0, 0, 0)

FREE_A = FreeParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5))
FREE_B = FreeParams(Fraction(-1, 3), Fraction(2, 5), Fraction(1, 6), Fraction(1, 7))
FREE_ZERO = FreeParams(0, 0, 0, 0)

HALF = Fraction(1, 2)
ONE = Fraction(1)


def ok(label):
    print(f"criterion {label}: PASS")


def all_zero(seq: PolySeq) -> bool:
    return first_nonzero(seq) is None


def test_criterion_01_semigroup_exactness():
    start = time.monotonic()
    times = (Fraction(0), Fraction(1, 3), HALF, ONE)
    n = 12
    trans = {
        (s, t): transition(SET_A, s, t, n)
        for i, s in enumerate(times)
        for t in times[i + 1:]
    }
    for i, s in enumerate(times):
        for j, t in enumerate(times[i + 1:], i + 1):
            for u in times[j + 1:]:
                assert compose(trans[(s, t)], trans[(t, u)]) == trans[(s, u)]
    assert time.monotonic() - start < 10
    ok("01 semigroup exactness")


def test_criterion_02_commutation_residuals():
    n = 12
    for params in (SET_A, FREE_BM):
        for t in (HALF, ONE):
            h = solve_commutator(params, t, n)
            assert all_zero(commutation_residual(params, t, h))
            assert all_zero(expanded_commutation_residual(params, t, h))
    ok("02 commutation residuals")


def test_criterion_03_dual_derivation_equality():
    n = 10
    for fp in (FREE_A, FREE_B):
        params = fp.harness_params()
        for t in (HALF, ONE):
            free_h = commutator_closed_form(fp, t, n)
            assert free_h == solve_commutator(params, t, n)
            assert generator_closed_form(fp, t, n) == generator_from_commutator(free_h)
    ok("03 dual derivation equality")


def test_criterion_04_generating_function_triple_agreement():
    n = 16
    for fp in (FREE_A, FREE_B, FREE_ZERO):
        for t in (HALF, ONE):
            by_rec = mgf_by_recursion(fp, t, n)
            assert by_rec == mgf_by_closed_form(fp, t, n)
            residual = mgf_equation_residual(fp, t, by_rec)
            assert all(c == 0 for c in residual.coeffs[: n - 1])
    ok("04 generating function triple agreement")


def test_criterion_05_free_brownian_oracle():
    for t in (ONE, Fraction(1, 3)):
        c = mgf_by_recursion(FREE_ZERO, t, 9)
        assert c.coeffs == (1, 0, t, 0, 2 * t**2, 0, 5 * t**3, 0, 14 * t**4)
        h = solve_commutator(FREE_BM, t, 5)
        m = martingale_polys(h, t, 5)
        assert m.entry(2) == Poly((-t, 0, 1))
        assert m.entry(3) == Poly((0, -2 * t, 0, 1))
        gen = generator_from_commutator(h)
        assert gen.entries == (
            Poly.zero(), Poly.zero(), Poly.one(), Poly((0, 2)), Poly((t, 0, 3)),
        )
    ok("05 free Brownian oracle")


def test_criterion_06_special_case_cross_checks():
    n = 10
    th = Fraction(2, 3)
    pair = poisson(th, n)
    f = mul_x(n)
    lhs = compose(pair.commutator, f.truncate(n - 1)) - compose(
        f, pair.commutator.truncate(n - 1)
    )
    assert lhs == identity(n - 1) + th * pair.commutator.truncate(n - 1)
    poisson_params = HarnessParams(0, th, 0, 0, 1)
    for t in (HALF, Fraction(2)):
        assert pair.commutator == solve_commutator(poisson_params, t, n)
    assert pair.generator == generator_from_commutator(pair.commutator)

    eta, bth, bt = HALF, Fraction(1, 3), Fraction(1, 4)
    d = bth - bt * eta
    bpair = quantum_bessel(eta, bth, bt, n)
    lhs = compose(bpair.commutator, f.truncate(n - 1)) - compose(
        f, bpair.commutator.truncate(n - 1)
    )
    rhs = (
        identity(n - 1)
        + eta * f.truncate(n - 1)
        + d * bpair.commutator.truncate(n - 1)
    )
    assert lhs == rhs
    bessel_params = HarnessParams(eta, bth, 0, 0, 1)
    assert bpair.commutator == solve_commutator(bessel_params, bt, n)
    assert bpair.generator == generator_from_commutator(bpair.commutator)
    ok("06 special case cross checks")


def test_criterion_07_measure_layer():
    fp, t = FREE_A, ONE
    nu = measure_moments(fp, t, 8)
    dets = hankel_determinants(nu)
    assert len(dets) >= 4
    assert all(d >= 0 for d in dets[:4])

    ct = cauchy_transforms(fp, t, 10)
    assert ct.routes_agree

    pi = ct.pi_moments
    a = fp.tau / (t * (t + fp.tau))
    b = fp.theta / (t + fp.tau)
    c = t / (t + fp.tau)
    for k in range(7):
        assert a * pi[k + 2] + b * pi[k + 1] + c * pi[k] == nu[k]
    ok("07 measure layer")


def test_criterion_08_growth_bound():
    for fp in (FREE_A, FREE_B):
        gb = growth_bound(fp, ONE, 40)
        assert gb.holds
    ok("08 growth bound")


def test_criterion_09_generator_limit_decay():
    t, n = ONE, 8
    for params in (SET_A, FREE_BM):
        gen = generator_from_commutator(solve_commutator(params, t, n))
        norms = []
        for h_step in (Fraction(1, 16), Fraction(1, 32)):
            p = transition(params, t - h_step, t, n)
            r = (p - identity(n)) * (1 / h_step) - gen
            norms.append(max_norm(r))
        assert 5 * norms[1] <= 3 * norms[0]
    ok("09 generator limit decay")


def test_criterion_10_harness_axioms():
    n = 10
    for params in (SET_A, FREE_BM):
        slopes = []
        for t in (HALF, ONE):
            h = solve_commutator(params, t, n)
            m = martingale_polys(h, t, n)
            p0t = transition(params, Fraction(0), t, n)
            assert p0t.entry(0) == Poly.one()
            assert p0t.entry(1) == Poly.x()
            x_op = harness_slope(h, m)
            slopes.append(x_op)
            # evolution shifts multiplication by x along the slope
            lhs = compose(p0t, mul_x(n).truncate(n - 1))
            rhs = compose(
                mul_x(n - 1) + t * x_op.truncate(n - 1), p0t.truncate(n - 1)
            )
            assert lhs == rhs
            assert all_zero(slope_quadratic_residual(params, x_op))
            assert evolution_from_slope(x_op, t, n - 1) == invert(m).truncate(n - 1)
        assert slopes[0] == slopes[1]
        report = verify(params, (HALF, ONE), n)
        for name in (
            "unit",
            "martingale",
            "harness",
            "quadratic_harness",
            "slope_time_independence",
            "evolution_reconstruction",
        ):
            assert report.check(name).passed
        assert report.passed
    ok("10 harness axioms")


def test_criterion_11_negative_controls():
    n = 8
    t = ONE
    h = solve_commutator(SET_A, t, n)
    entries = list(h.entries)
    bumped = list(entries[3].coeffs)
    bumped[1] += 1
    entries[3] = Poly(bumped)
    corrupted = PolySeq(tuple(entries), h.excess)
    assert not all_zero(commutation_residual(SET_A, t, corrupted))

    assert hankel_determinants([1, 2, 1]) == [Fraction(1), Fraction(-3)]
    assert hankel_determinants([1, 2, 1])[1] < 0

    with pytest.raises(ResonantTime):
        quantum_bessel(HALF, Fraction(1, 4), HALF, n)
    ok("11 negative controls")
