"""
Free Brownian motion from the all-zero parameter point
======================================================

Everything below is exact rational arithmetic: the moment series
comes out as Catalan numbers in even degrees, the martingale
polynomials are the monic Chebyshev-like family, and the generator
lowers every monomial by two degrees.
"""

from fractions import Fraction

from qharness import (
    FreeParams,
    HarnessParams,
    format_rational,
    generator_from_commutator,
    martingale_polys,
    mgf_by_recursion,
    solve_commutator,
)

t = Fraction(1)
depth = 8

# the moment generating series: Catalan numbers interleaved with zeros
series = mgf_by_recursion(FreeParams(0, 0, 0, 0), t, 10)
print("moment series coefficients at t = 1:")
print("  ", [format_rational(c) for c in series.coeffs])

# the commutation kernel and the martingale family it generates
params = HarnessParams(0, 0, 0, 0, 0)
h = solve_commutator(params, t, depth)
m = martingale_polys(h, t, depth)
print("\nmartingale polynomials:")
for n_ in range(depth):
    print(f"  m_{n_} = {m.entry(n_).pretty()}")

# the generator maps x^n to a polynomial of degree n - 2
gen = generator_from_commutator(h)
print("\ngenerator images of the monomials:")
for n_ in range(depth):
    print(f"  x^{n_} -> {gen.entry(n_).pretty()}")
