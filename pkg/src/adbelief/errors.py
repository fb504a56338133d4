"""Exceptions raised by the engine."""

__all__ = [
    "ADError",
    "NonRegularEvent",
    "NotConditionable",
    "EmptyConditioningEvent",
    "ZeroProbabilityEvent",
    "InvariantViolation",
]


class ADError(Exception):
    """Base class for every error raised by this package."""


class NonRegularEvent(ADError, ValueError):
    """Conditioning or revising on an event whose kernel meets the open orthant."""


class NotConditionable(ADError, ValueError):
    """The model cannot be conditioned on the event without becoming inconsistent."""


class EmptyConditioningEvent(ADError, ValueError):
    """A conditional prevision was asked for given the empty event."""


class ZeroProbabilityEvent(ADError, ValueError):
    """Lüders conditioning on an event the state assigns (numerically) zero weight."""


class InvariantViolation(ADError, AssertionError):
    """Two independent computations of the same quantity disagree."""
