"""
From the coefficient recursion to measures and back
===================================================

The moment generating function of the marginal law solves a
quadratic equation.  We compute it twice (recursion and closed
form), read off moments, test positivity through Hankel
determinants, and push the law through the quadratic reweighting
that relates the two Cauchy transforms.
"""

from fractions import Fraction

from qharness import (
    FreeParams,
    cauchy_transforms,
    format_rational,
    growth_bound,
    hankel_determinants,
    measure_moments,
    mgf_by_closed_form,
    mgf_by_recursion,
    mgf_equation_residual,
)

fp = FreeParams(Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5))
t = Fraction(1)

# two independent computations of the same series
by_recursion = mgf_by_recursion(fp, t, 12)
by_formula = mgf_by_closed_form(fp, t, 12)
assert by_recursion == by_formula
residual = mgf_equation_residual(fp, t, by_recursion)
assert all(c == 0 for c in residual.coeffs)
print("recursion and closed form agree through order 12, residual zero")

# moments and exact Hankel positivity
nu = measure_moments(fp, t, 8)
print("\nmarginal moments:", [format_rational(m) for m in nu])
print("hankel determinants:", [format_rational(d) for d in hankel_determinants(nu)])

# both routes to the transform of the reweighted law
ct = cauchy_transforms(fp, t, 10)
print("\ncauchy transform routes agree:", ct.routes_agree)
print("reweighted moments:", [format_rational(m) for m in ct.pi_moments][:6])

# the quadratic weight pulls the reweighted moments back to the marginal
a = fp.tau / (t * (t + fp.tau))
b = fp.theta / (t + fp.tau)
c = t / (t + fp.tau)
pi = ct.pi_moments
pulled = [a * pi[k + 2] + b * pi[k + 1] + c * pi[k] for k in range(6)]
assert all(pulled[k] == nu[k] for k in range(6))
print("weight relation verified for the first six moments")

# coefficient growth stays under a geometric envelope
gb = growth_bound(fp, t, 40)
print(f"\ngrowth bound M = {format_rational(gb.bound)}, holds = {gb.holds}")
