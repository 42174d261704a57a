class InvariantViolation(RuntimeError):
    """Two routes that must agree did not; always an implementation bug."""


class PreconditionError(ValueError):
    pass
