"""
Running the verification battery on one parameter point
=======================================================

verify() replays every structural identity the package promises:
unit and martingale normalisation, semigroup composition, both
commutation residuals, the slope relations, reconstruction of the
evolution from the slope, and a finite-difference generator check.
The report is a plain JSON document.
"""

import json
from fractions import Fraction

from qharness import HarnessParams, verify

params = HarnessParams(
    Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5),
    Fraction(-1, 20),
)
report = verify(params, (Fraction(1, 3), Fraction(1, 2), Fraction(1)), 10)

print(json.dumps(report.to_json_dict(), indent=2))
print()
print("all checks passed" if report.passed else "some check failed")

# out-of-hypothesis parameter points still run; the report flags them
loose = HarnessParams(0, 0, Fraction(-1, 4), 0, 0)
flagged = verify(loose, (Fraction(1, 2), Fraction(1)), 8)
print(
    f"sigma < 0 run: passed={flagged.passed}, "
    f"out_of_hypothesis={flagged.out_of_hypothesis}"
)
