"""Exception types shared across the package."""


class HallAlgError(Exception):
    """Base class for all package errors."""


class ConfigError(HallAlgError):
    """Malformed configuration, label, or command usage (exit code 2)."""


class LabelError(ConfigError):
    """An object label failed to parse."""


class MismatchError(HallAlgError):
    """Operands live over different quivers or fields."""


class ResourceBoundError(HallAlgError):
    """A configured enumeration or dimension bound would be exceeded (exit code 3)."""
