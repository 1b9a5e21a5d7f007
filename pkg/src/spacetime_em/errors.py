"""Exception types shared across the package."""


class DegenerateInputError(ValueError):
    """Input is structurally valid but degenerate (e.g. a zero volume form)."""


class NumericError(ArithmeticError):
    """A computation produced or received non-finite values."""


class DomainError(NumericError, ValueError):
    """A field or current was sampled outside the region where it is defined."""
