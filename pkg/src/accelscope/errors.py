"""Exception types shared across the toolkit."""


class ParseError(ValueError):
    """A document (network, hardware, calibration) could not be decoded."""


class ValidationError(ValueError):
    """A decoded value violates a model invariant."""


class SizingError(RuntimeError):
    """The requested hardware configuration is infeasible (e.g. no PE fits)."""
