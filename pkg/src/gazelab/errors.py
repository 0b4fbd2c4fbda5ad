"""Exception types shared across the package."""


class GazeLabError(Exception):
    """Base class for all gazelab errors."""


class ConfigError(GazeLabError):
    """Invalid configuration value, unknown key, or unknown task name."""


class InputError(GazeLabError):
    """Caller passed a malformed value (non-finite action, bad image, ...)."""


class UsageError(GazeLabError):
    """API called out of order, e.g. step() after the episode ended."""


class StimulusError(GazeLabError):
    """A stimulus spec cannot be rendered (too small, offset exceeds patch, ...)."""


class WireError(GazeLabError):
    """Malformed protocol frame: bad tag, short frame, or length mismatch."""


class DatasetError(GazeLabError):
    """Image dataset directory missing, empty, or inconsistent."""
