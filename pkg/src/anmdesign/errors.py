"""Exception hierarchy shared by every solver and the CLI."""

from __future__ import annotations


class AnmError(Exception):
    """Base class for all errors raised by this package."""


class SchemaError(AnmError):
    """Input text is not JSON or does not match the instance schema."""


class ValidationError(AnmError):
    """Input is well-formed but violates a model invariant.

    ``locus`` names the offending field, agent or pair when one exists.
    """

    def __init__(self, message: str, locus: str | None = None):
        super().__init__(f"{locus}: {message}" if locus else message)
        self.locus = locus


class ModeError(AnmError):
    """A solver was handed a problem outside the special case it handles."""


class ScaleError(AnmError):
    """Numbers could not be scaled to integers for an integral DP."""


class NumericalFailure(AnmError):
    """The LP solver hit its iteration cap or lost numerical control."""


class CapExceeded(AnmError):
    """An exhaustive oracle was asked to enumerate beyond its hard cap."""


class PreconditionError(AnmError):
    """Generator inputs violate the bounds its reduction requires."""
