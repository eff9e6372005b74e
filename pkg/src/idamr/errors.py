"""Exception types shared across the toolkit.

The command line maps these onto exit codes: malformed input data
(FormatError and friends) exits 1, bad configuration exits 2.
"""


class IdamrError(Exception):
    """Base class for all toolkit errors."""


class FormatError(IdamrError):
    """An input file or stream does not follow its documented format."""


class PenmanParseError(FormatError):
    """Malformed PENMAN text, with the position that broke the parse."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GraphError(IdamrError):
    """A graph violates a structural invariant."""


class ModelFormatError(FormatError):
    """A model file is unreadable or has an unsupported version."""


class ConfigError(IdamrError):
    """Invalid parameters, flags, or missing required inputs."""
