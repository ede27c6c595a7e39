"""Exception types shared across the package."""


class InvalidArgument(ValueError):
    pass


class DegreeOverflowError(ArithmeticError):
    """A bracket or substitution would produce an element above the degree cutoff."""

    def __init__(self, degree, cutoff):
        super().__init__(f"degree {degree} exceeds cutoff {cutoff}")
        self.degree = degree
        self.cutoff = cutoff


class InapplicableError(ValueError):
    """The requested construction does not apply to this input (e.g. empty theta)."""


class TorsionError(ArithmeticError):
    """A graded quotient that should be torsion-free is not."""
