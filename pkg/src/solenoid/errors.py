"""Exception types shared across the package."""


class SolenoidError(Exception):
    pass


class InputError(SolenoidError, ValueError):
    """Malformed or inconsistent input (bad prime, mismatched sizes, ...)."""


class DomainError(SolenoidError, ValueError):
    """Input is well formed but outside the operation's domain."""


class ResourceError(SolenoidError, RuntimeError):
    """A configured resource limit was exceeded."""
