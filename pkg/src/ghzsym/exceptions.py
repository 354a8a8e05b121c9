"""Exception hierarchy.

Every error derives from ``GhzSymError``. Errors describing a malformed
or physically invalid state also derive from ``ValueError`` so callers
using plain numpy-style error handling keep working.
"""


class GhzSymError(Exception):
    """Base class for all package errors."""


class InvalidStateError(GhzSymError, ValueError):
    """A matrix or vector violates a state invariant."""


class NotHermitianError(InvalidStateError):
    pass


class TraceNotOneError(InvalidStateError):
    pass


class NotPositiveError(InvalidStateError):
    pass


class NotNormalizedError(InvalidStateError):
    pass


class SingularOperatorError(InvalidStateError):
    pass


class InvalidParameterError(GhzSymError, ValueError):
    pass


class OutOfRangeError(GhzSymError, ValueError):
    pass


class OutsideTriangleError(GhzSymError, ValueError):
    """Coordinates do not belong to any GHZ-symmetric density matrix."""


class NonMonotoneCurveError(GhzSymError, RuntimeError):
    pass


class ConvergenceFailure(GhzSymError, RuntimeError):
    pass


class SamplerFailure(GhzSymError, RuntimeError):
    pass


class FormatError(GhzSymError, ValueError):
    """An input file is not in the expected format."""
