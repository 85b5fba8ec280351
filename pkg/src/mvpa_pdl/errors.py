"""Exception types raised by the library.

Every error derives from :class:`MvpaPdlError` and from :class:`ValueError`,
so callers can catch either.
"""


class MvpaPdlError(ValueError):
    """Base class for domain errors."""


class AlphabetError(MvpaPdlError):
    """A call-return alphabet or an automaton violates its invariants."""


class UnknownLetterError(MvpaPdlError):
    def __init__(self, letter, where="alphabet"):
        super().__init__(f"unknown letter {letter!r} (not in {where})")
        self.letter = letter


class KindError(MvpaPdlError):
    """A letter renaming maps a letter onto a letter of a different sort."""


class BoundRequiredError(MvpaPdlError):
    """An automaton program was evaluated without a witness-length bound."""


class DomainError(MvpaPdlError):
    pass


class IncompleteGridError(MvpaPdlError):
    pass


class FormatError(MvpaPdlError):
    """A file or text could not be parsed.  ``field`` names the culprit."""

    def __init__(self, message, field=None):
        if field is not None:
            message = f"{field}: {message}"
        super().__init__(message)
        self.field = field
