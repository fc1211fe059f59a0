"""
Closed-form kernels for the shift families
==========================================

Two parameter corners admit exponential-of-derivative closed forms.
The script builds both, confirms each against the generic recurrence
solver, and shows the resonance failure when the shift scale
collapses to zero.
"""

from fractions import Fraction

from qharness import (
    HarnessParams,
    ResonantTime,
    poisson,
    quantum_bessel,
    solve_commutator,
)

depth = 8

# Poisson family: kernel depends on the jump size only, never on time
theta = Fraction(2, 3)
pair = poisson(theta, depth)
for t in (Fraction(1, 2), Fraction(2)):
    solved = solve_commutator(HarnessParams(0, theta, 0, 0, 1), t, depth)
    assert pair.commutator == solved
print(f"poisson(theta={theta}) kernel matches the solver at t = 1/2 and t = 2")
print("kernel images:")
for n in range(5):
    print(f"  x^{n} -> {pair.commutator.entry(n).pretty()}")

# quantum Bessel family: an affine weight in front of the same shift
eta, theta_b, t_b = Fraction(1, 2), Fraction(1, 3), Fraction(1, 4)
bessel = quantum_bessel(eta, theta_b, t_b, depth)
solved = solve_commutator(HarnessParams(eta, theta_b, 0, 0, 1), t_b, depth)
assert bessel.commutator == solved
print(f"\nbessel(eta={eta}, theta={theta_b}, t={t_b}) matches the solver")
print("generator images:")
for n in range(5):
    print(f"  x^{n} -> {bessel.generator.entry(n).pretty()}")

# the shift scale is theta - t * eta; it must stay away from zero
try:
    quantum_bessel(eta, Fraction(1, 4), Fraction(1, 2), depth)
except ResonantTime as exc:
    print(f"\nresonance rejected as expected: {exc}")
