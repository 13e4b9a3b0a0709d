"""Exception hierarchy shared by the library and the CLI."""

from __future__ import annotations


class WordMapError(Exception):
    """Base class for all errors raised by :mod:`wordmaps`."""


class InputError(WordMapError, ValueError):
    """Malformed user input (bad word, bad matrix, bad type label, ...)."""


class WordSyntaxError(InputError):
    """A word string that does not match the grammar."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at position {position}: {text!r}")


class BudgetExceeded(WordMapError):
    """An exhaustive computation would exceed the configured budget."""
