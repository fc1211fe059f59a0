from fractions import Fraction

import pytest

from qharness import (
    DegenerateLeadingCoefficient,
    HarnessParams,
    InsufficientLength,
    InvalidParameter,
    Poly,
    PolySeq,
    VerificationReport,
    ZeroPivot,
    commutation_residual,
    compose,
    evolution_from_slope,
    expanded_commutation_residual,
    first_nonzero,
    generator_from_commutator,
    harness_slope,
    identity,
    invert,
    martingale_polys,
    mul_x,
    slope_quadratic_residual,
    solve_commutator,
    transition,
    verify,
)
from qharness.harness import _solve_recurrence

FREE_BM = HarnessParams(0, 0, 0, 0, 0)
SET_A = HarnessParams(
    Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(-1, 20)
)


def test_params_reject_unit_product():
    with pytest.raises(InvalidParameter):
        HarnessParams(0, 0, 2, Fraction(1, 2), 0)


def test_params_flags():
    assert SET_A.within_hypotheses
    assert not HarnessParams(0, 0, Fraction(-1, 4), 0, 0).within_hypotheses
    assert HarnessParams(0, 0, 0, 0, 1).gamma_certified
    assert HarnessParams(0, 0, Fraction(1, 2), Fraction(1, 2), 2).gamma_certified
    assert not HarnessParams(0, 0, 0, 0, 2).gamma_certified


def test_quadratic_weight():
    t = Fraction(1, 2)
    expected = SET_A.sigma * t * t + (1 - SET_A.gamma) * t + SET_A.tau
    assert SET_A.quadratic_weight(t) == expected
    assert FREE_BM.quadratic_weight(t) == t


def test_kernel_free_brownian_oracle():
    h = solve_commutator(FREE_BM, 1, 4)
    assert h.entries == (Poly.zero(), Poly.one(), Poly.x(), Poly((1, 0, 1)))
    # independent of t entirely except entry 3 onward
    h3 = solve_commutator(FREE_BM, Fraction(1, 3), 4)
    assert h3.entry(3) == Poly((Fraction(1, 3), 0, 1))


def test_kernel_first_entry_closed_form():
    # entry 1 is (1 + eta x + sigma x^2) / (1 + sigma t)
    h = solve_commutator(SET_A, 1, 2)
    assert h.entry(1) == Poly((Fraction(4, 5), Fraction(2, 5), Fraction(1, 5)))


def test_kernel_requires_positive_time_and_length():
    with pytest.raises(InvalidParameter):
        solve_commutator(FREE_BM, 0, 4)
    with pytest.raises(InvalidParameter):
        solve_commutator(FREE_BM, Fraction(-1, 2), 4)
    with pytest.raises(InsufficientLength):
        solve_commutator(FREE_BM, 1, 0)


def test_zero_pivot_inside_stated_hypotheses():
    # sigma=1, tau=2, gamma=0 at t=1 makes the second pivot vanish exactly
    params = HarnessParams(0, 0, 1, 2, 0)
    with pytest.raises(ZeroPivot) as err:
        solve_commutator(params, 1, 3)
    assert err.value.details["entry"] == 2
    # shorter runs stop before the degeneracy
    h = solve_commutator(params, 1, 2)
    assert h.entry(1) == Poly((Fraction(1, 2), 0, Fraction(1, 2)))


def test_commutation_residuals_vanish():
    for params in (FREE_BM, SET_A):
        for t in (Fraction(1, 2), Fraction(1)):
            h = solve_commutator(params, t, 9)
            assert first_nonzero(commutation_residual(params, t, h)) is None
            assert first_nonzero(expanded_commutation_residual(params, t, h)) is None


def test_commutation_residual_detects_corruption():
    t = Fraction(1, 2)
    h = solve_commutator(SET_A, t, 6)
    bad = PolySeq(
        h.entries[:2] + (h.entry(2) + Poly.monomial(2),) + h.entries[3:], h.excess
    )
    assert first_nonzero(commutation_residual(SET_A, t, bad)) is not None
    assert first_nonzero(expanded_commutation_residual(SET_A, t, bad)) is not None


def test_generator_free_brownian_oracle():
    for t in (Fraction(1), Fraction(1, 3)):
        h = solve_commutator(FREE_BM, t, 5)
        a = generator_from_commutator(h)
        assert a.entries == (
            Poly.zero(),
            Poly.zero(),
            Poly.one(),
            Poly((0, 2)),
            Poly((t, 0, 3)),
        )


def test_generator_preconditions():
    with pytest.raises(InvalidParameter):
        generator_from_commutator(mul_x(4).with_excess(2))
    with pytest.raises(InvalidParameter):
        generator_from_commutator(identity(4))


def test_martingale_free_brownian_oracle():
    for t in (Fraction(1), Fraction(1, 3)):
        h = solve_commutator(FREE_BM, t, 4)
        m = martingale_polys(h, t, 4)
        assert m.entries == (
            Poly.one(),
            Poly.x(),
            Poly((-t, 0, 1)),
            Poly((0, -2 * t, 0, 1)),
        )


def test_martingale_leading_coefficient_law():
    t = Fraction(1, 2)
    h = solve_commutator(SET_A, t, 7)
    m = martingale_polys(h, t, 7)
    for n in range(1, 6):
        ratio = m.entry(n + 1).coeff(n + 1) / m.entry(n).coeff(n)
        assert ratio == 1 - t * h.entry(n).coeff(n + 1)


def test_martingale_guards():
    h = solve_commutator(FREE_BM, 1, 3)
    with pytest.raises(InsufficientLength):
        martingale_polys(h, 1, 5)
    # a kernel that zeroes out a leading term stops the iteration
    degenerate = PolySeq((Poly.zero(), Poly((1, 0, 1))), 1)
    with pytest.raises(DegenerateLeadingCoefficient) as err:
        martingale_polys(degenerate, 1, 3)
    assert err.value.details["entry"] == 2


def test_transition_identity_and_oracle():
    assert transition(SET_A, Fraction(1, 2), Fraction(1, 2), 5) == identity(5)
    p = transition(FREE_BM, Fraction(1, 2), 1, 4)
    assert p.entry(0) == Poly.one()
    assert p.entry(1) == Poly.x()
    assert p.entry(2) == Poly((Fraction(1, 2), 0, 1))
    assert p.entry(3) == Poly((0, 1, 0, 1))


def test_transition_validates_times():
    with pytest.raises(InvalidParameter):
        transition(SET_A, 1, Fraction(1, 2), 4)
    with pytest.raises(InvalidParameter):
        transition(SET_A, Fraction(-1, 2), 1, 4)
    with pytest.raises(InvalidParameter):
        transition(SET_A, 0, 0, 4)


def test_transition_semigroup_small():
    s, t, u = Fraction(1, 3), Fraction(1, 2), Fraction(1)
    left = compose(transition(SET_A, s, t, 7), transition(SET_A, t, u, 7))
    assert left == transition(SET_A, s, u, 7)


def test_slope_matches_time_zero_recurrence():
    # conjugating the kernel back recovers the solution of the
    # commutation identity at time zero
    n = 8
    for params in (FREE_BM, SET_A):
        expected = _solve_recurrence(params, Fraction(0), n - 1)
        for t in (Fraction(1, 2), Fraction(1)):
            h = solve_commutator(params, t, n)
            m = martingale_polys(h, t, n)
            assert harness_slope(h, m) == expected


def test_slope_quadratic_residual_vanishes():
    h = solve_commutator(SET_A, 1, 8)
    m = martingale_polys(h, 1, 8)
    x_op = harness_slope(h, m)
    r = slope_quadratic_residual(SET_A, x_op)
    assert first_nonzero(r.truncate(5)) is None


def test_evolution_reconstruction():
    t = Fraction(1, 2)
    for params in (FREE_BM, SET_A):
        h = solve_commutator(params, t, 8)
        m = martingale_polys(h, t, 8)
        x_op = harness_slope(h, m)
        rebuilt = evolution_from_slope(x_op, t, 7)
        assert rebuilt == invert(m).truncate(7)


def test_verify_all_pass_and_round_trip():
    report = verify(SET_A, [Fraction(1, 3), Fraction(1, 2), 1], 8)
    assert report.passed
    assert not report.out_of_hypothesis
    names = [c.name for c in report.checks]
    assert names == [
        "unit",
        "martingale",
        "semigroup",
        "commutation",
        "commutation_expanded",
        "harness",
        "quadratic_harness",
        "martingale_consistency",
        "evolution_reconstruction",
        "slope_time_independence",
        "generator_limit",
    ]
    doc = report.to_json_dict()
    assert VerificationReport.from_json_dict(doc) == report
    assert {c["status"] for c in doc["checks"]} == {"PASS"}


def test_verify_flags_out_of_hypothesis_runs():
    params = HarnessParams(0, 0, Fraction(-1, 4), Fraction(1, 5), 0)
    report = verify(params, [Fraction(1, 2), 1], 6)
    assert report.passed
    assert report.out_of_hypothesis


def test_verify_needs_usable_inputs():
    with pytest.raises(InvalidParameter):
        verify(SET_A, [], 8)
    with pytest.raises(InvalidParameter):
        verify(SET_A, [Fraction(-1, 2)], 8)
    with pytest.raises(InvalidParameter):
        verify(SET_A, [1], 2)


def test_verify_generator_limit_needs_a_late_time():
    # every supplied time sits at or below the largest step size
    report = verify(SET_A, [Fraction(1, 16)], 5)
    limit = report.check("generator_limit")
    assert not limit.passed
    assert not report.passed
