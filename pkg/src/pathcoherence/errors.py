class CapExceeded(RuntimeError):
    """Requested work exceeds a configured enumeration or width cap."""


class InconsistentInstance(ValueError):
    """The amplitude instance has no admissible paths."""


class InvariantViolation(AssertionError):
    """An internal consistency check failed."""
