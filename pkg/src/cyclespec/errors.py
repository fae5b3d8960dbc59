class DomainError(ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class CapabilityError(RuntimeError):
    """A computation would exceed one of the configured size caps."""
