"""Exception hierarchy shared by all modules."""


class DiagramError(ValueError):
    """Base class for invalid diagram input."""


class InvalidVertexError(DiagramError):
    pass


class InvalidShiftError(DiagramError):
    pass


class CompositionError(DiagramError):
    """Raised when the shared row of two diagrams has mismatched size."""


class DomainError(DiagramError):
    pass


class ResourceLimitError(RuntimeError):
    """An enumeration or closure would exceed its configured cap."""


class InternalConsistencyError(AssertionError):
    """A proven structural property failed; indicates a bug, never bad input."""
