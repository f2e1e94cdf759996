"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class KellymodError(Exception):
    """Base class for all errors raised by kellymod."""


class PreconditionError(KellymodError, ValueError):
    """An operation was called outside its stated hypotheses."""


class ResourceCapError(KellymodError):
    """A configured size cap would be exceeded."""


class ParseError(KellymodError, ValueError):
    """Malformed graph or tournament text."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
