"""Exception types shared across the library.

Every error raised for a violated precondition or an exactly detected
degenerate value derives from :class:`AlgebraError`.  The base class
carries an optional details mapping that the command line front end
turns into a structured JSON error report.
"""

from __future__ import annotations


class AlgebraError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def payload(self) -> dict:
        """JSON-ready description of the error."""
        body = {"type": type(self).__name__, "message": str(self)}
        if self.details:
            body["details"] = {k: str(v) for k, v in self.details.items()}
        return {"error": body}


class InputError(AlgebraError):
    """Malformed user input: bad rational string, depth out of range, and so on."""


class ZeroConstantTerm(AlgebraError):
    """Series division or square root attempted at a zero constant term."""


class NonSquareConstant(AlgebraError):
    """Square root of a series whose constant term has no positive rational root."""


class InsufficientLength(AlgebraError):
    """A polynomial-sequence operation referenced entries past the truncation."""


class InsufficientOrder(AlgebraError):
    """A power series did not carry enough valid coefficients."""


class NotDegreePreserving(AlgebraError):
    """Inversion requires entry n to have exact degree n for every n."""


class ZeroPivot(AlgebraError):
    """The commutation recurrence hit an exactly vanishing pivot."""


class DegenerateLeadingCoefficient(AlgebraError):
    """A martingale polynomial lost its leading term; no transition at this time."""


class HypothesisViolation(AlgebraError):
    """Parameters violate the hypotheses required by the requested formula."""


class DegenerateDenominator(AlgebraError):
    """A transform denominator vanished to higher order than its numerator."""


class InvalidParameter(AlgebraError):
    """A parameter value outside the operation's domain."""


class ResonantTime(AlgebraError):
    """The closed form degenerates at the time where theta equals t times eta."""
