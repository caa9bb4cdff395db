"""Shared exception types, mapped to CLI exit codes."""


class TwistlabError(Exception):
    """Base class for all package errors."""


class PolyParseError(TwistlabError, ValueError):
    """Malformed polynomial text; carries the offending position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class HypothesisError(TwistlabError, ValueError):
    """A named mathematical hypothesis of an operation is violated."""

    def __init__(self, tag: str, message: str):
        super().__init__(f"{tag}: {message}")
        self.tag = tag


class InvariantError(TwistlabError, RuntimeError):
    """An internal consistency check failed; always a bug or a corrupt input."""


class FactorizationError(TwistlabError, ValueError):
    """Integer too hard to factor within the configured effort budget."""
