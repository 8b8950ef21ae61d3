"""Exception types shared across the package.

The CLI maps these onto exit codes: ValidationError -> 2,
CapExceededError -> 3, InternalError -> 4.
"""


class TorilatError(Exception):
    """Base class for all package errors."""


class ValidationError(TorilatError):
    """Input violates a documented precondition (bad dimensions,
    inhomogeneous lattice, composite field size, ...)."""


class CapExceededError(TorilatError):
    """An enumeration would exceed a hard desk-scale guardrail."""


class InternalError(TorilatError):
    """A verified invariant failed; indicates a bug, not bad input."""
