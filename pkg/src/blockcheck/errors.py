"""Error types shared across the package."""


class ParseError(ValueError):
    """Raised for malformed DIMACS/QDIMACS/trace/model input."""


class CapExceeded(RuntimeError):
    """An enumeration would exceed its configured variable cap.

    `count` is the offending size, `cap` the limit that was in force.
    """

    def __init__(self, message: str, count: int, cap: int):
        super().__init__(message)
        self.count = count
        self.cap = cap


class ResourceLimit(RuntimeError):
    """An intermediate result grew past a hard resource limit."""


class ReconstructionError(RuntimeError):
    """A model could not be repaired against an elimination trace."""
