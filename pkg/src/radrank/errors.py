"""Shared exception types."""


class DimensionError(ValueError):
    """Vector or matrix dimensions do not agree."""


class ResourceLimitError(RuntimeError):
    """An enumeration bound was exceeded."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given input."""


class StructureError(RuntimeError):
    """The input is too degenerate for the requested structure."""


class ModelFormatError(ValueError):
    """A serialized model or auxiliary file is malformed."""
