"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised for malformed arguments or data (bad ids, bad params, bad files)."""


class SizeError(ValueError):
    """Raised when an instance exceeds the cap of an exponential-time routine."""


class ModelError(ValueError):
    """Raised when a minor model violates one of its structural invariants."""


class PreconditionError(ValueError):
    """Raised when a documented precondition of an operation does not hold."""
