"""Exception types shared by the package."""


class ValidationError(ValueError):
    """Malformed input: bad sequences, non-members, wrong shapes."""


class ResourceError(RuntimeError):
    """An enumeration or search guard was exceeded."""
