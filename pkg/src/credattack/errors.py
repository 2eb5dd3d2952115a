"""Exception hierarchy for the credattack engine.

Everything raised on purpose derives from :class:`CredAttackError`, so
callers (notably the CLI) can distinguish engine failures from plain bugs.
Unreadable files surface as the interpreter's own ``OSError``.
"""


class CredAttackError(Exception):
    """Base class for all engine errors."""


class ValidationError(CredAttackError):
    """An argument or payload violates a documented bound."""


class EmptyText(CredAttackError):
    """Text is empty after trimming and cannot be tokenized."""


class EmptyRun(CredAttackError):
    """Aggregation was asked to summarize zero outcomes."""


class EmptyDataset(CredAttackError):
    """A dataset file contains no instances."""


class FormatError(CredAttackError):
    """A data file does not match its documented format."""

    def __init__(self, message, row=None):
        if row is not None:
            message = f"row {row}: {message}"
        super().__init__(message)
        self.row = row


class DegenerateCorpus(CredAttackError):
    """A training corpus contains only one label."""


class TextTooLong(CredAttackError):
    """A text exceeds the victim's configured maximum length."""


class BudgetExceeded(CredAttackError):
    """The per-instance victim query budget has been spent."""


class ProtocolError(CredAttackError):
    """A wire message is malformed or violates schema bounds."""


class RemoteError(CredAttackError):
    """The remote peer answered with a typed error response."""

    def __init__(self, code, message=""):
        super().__init__(f"{code}: {message}" if message else str(code))
        self.code = code
        self.detail = message


class VictimUnavailable(CredAttackError):
    """A remote victim could not be reached (after retry)."""


class ProviderUnavailable(CredAttackError):
    """A remote substitute provider could not be reached (after retry)."""


class ScorerUnavailable(CredAttackError):
    """A remote semantic scorer could not be reached (after retry)."""
