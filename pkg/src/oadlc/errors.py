"""Exception types shared across the toolkit."""


class OadlcError(Exception):
    """Base class for all toolkit errors."""


class DomainError(OadlcError, ValueError):
    """A physical or numeric quantity is outside its valid domain."""


class ConfigError(OadlcError, ValueError):
    """Configuration file or block failed to parse or validate."""


class InfeasibleError(OadlcError, RuntimeError):
    """No point in the search box satisfies all design constraints.

    Carries the least-violating candidate found so the user knows which
    constraint to relax.
    """

    def __init__(self, message, worst_point=None, worst_constraint=None):
        super().__init__(message)
        self.worst_point = worst_point
        self.worst_constraint = worst_constraint


class FabricationError(OadlcError, ValueError):
    """Pattern geometry exceeds the stated fabrication envelope."""
