"""Exception hierarchy shared across the library."""

from __future__ import annotations


class ContractViolationError(ValueError):
    """An argument violates a documented precondition."""


class DimensionMismatchError(ContractViolationError):
    """Vector/matrix shapes do not agree with the family dimensions."""


class EvaluationError(RuntimeError):
    """A component evaluation produced a non-finite value.

    ``index`` identifies the offending component when known.
    """

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


class UnsupportedCapabilityError(RuntimeError):
    """The family does not expose an optional capability (e.g. Hessians)."""


class DivergenceError(RuntimeError):
    """The optimizer encountered a non-finite gradient.

    Carries the offending iterate for diagnostics.
    """

    def __init__(self, message: str, iterate=None):
        super().__init__(message)
        self.iterate = iterate


class ConfigurationError(ValueError):
    """A run was refused because its configuration is unusable."""


class UnsupportedDimensionError(ValueError):
    """The exact solver does not support this ambient dimension."""


class InputFormatError(ValueError):
    """Malformed point-cloud input file."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        super().__init__(message)
        self.line = line
        self.column = column


class EmptyInputError(InputFormatError):
    """The input file contained no points."""
