"""Exception types shared across the package.

Validation problems derive from ``ValueError``; numerical breakdowns derive
from ``ArithmeticError``. The CLI maps the two families to exit codes 1 and 2.
"""


class ValidationError(ValueError):
    pass


class OrthogonalityError(ValidationError):
    """Space and time parts of an event are not orthogonal."""

    def __init__(self, violation, tolerance):
        self.violation = violation
        self.tolerance = tolerance
        super().__init__(
            f"space and time vectors are not orthogonal: "
            f"|x.t|/(|x||t|) = {violation:.3e} exceeds {tolerance:.1e}"
        )


class StrongFieldError(ValidationError):
    pass


class CoordinateSingularityError(ValidationError):
    pass


class BracketError(ValidationError):
    """No sign change of the target function inside the searched interval."""

    def __init__(self, lo, hi):
        self.interval = (lo, hi)
        super().__init__(f"no sign change in bracket [{lo:.6g}, {hi:.6g}]")


class NumericalError(ArithmeticError):
    pass
