"""Exception hierarchy shared by all modules."""


class BerryEchoError(Exception):
    """Base class for every error raised by this package."""


class InvalidParameterError(BerryEchoError, ValueError):
    """A physical parameter is out of its admissible range or not finite."""


class DomainError(BerryEchoError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class DegenerateModeError(BerryEchoError):
    """The two normal modes coincide (Omega = 0); the closed forms break down."""


class UndefinedPhaseError(BerryEchoError):
    """A relative phase was requested for a vanishing amplitude."""


class IntegrationError(BerryEchoError):
    """Base class for numerical-integration failures."""


class StepTooLargeError(IntegrationError):
    """The time step violates the resolution guard h * max(frequencies) <= 0.1."""


class StepBudgetError(IntegrationError):
    """The integration would need more steps than the configured cap."""


class ValidationFailure(BerryEchoError):
    """A cross-oracle validation run found a deviation above tolerance."""
