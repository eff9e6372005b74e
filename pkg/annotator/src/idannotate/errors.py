class AnnotateError(Exception):
    """Base class for everything this package raises on purpose."""


class FormatError(AnnotateError):
    """Malformed input data (exit code 1)."""


class ConfigError(AnnotateError):
    """Bad configuration, including unloadable models (exit code 2)."""


class CannotAnnotate(AnnotateError):
    """A sentence the backend cannot produce a tree for; the caller skips
    it, warns, and records it in the sidecar report."""
