"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class UnsupportedVariantError(ValueError):
    """An expression variant does not support the requested closed-form step."""


class AlgebraInvariantError(ValueError):
    """A finite algebra's structure constants violate a required identity."""
