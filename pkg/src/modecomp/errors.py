"""Exception hierarchy shared by the whole package."""


class ModecompError(Exception):
    """Base class for every error raised by modecomp."""


class ShapeError(ModecompError, ValueError):
    """Operands disagree on modulus, dimension or ambient module."""


class PreconditionError(ModecompError, ValueError):
    """An operation was called outside its documented domain."""


class ProperSubmoduleError(PreconditionError):
    """Raised whenever N = M is passed where a proper submodule is required."""

    def __init__(self, message="N must be proper"):
        super().__init__(message)


class ResourceLimitError(ModecompError, RuntimeError):
    """An exhaustive search would exceed its declared cap."""

    def __init__(self, message, *, bound=None, needed=None):
        super().__init__(message)
        self.bound = bound
        self.needed = needed
