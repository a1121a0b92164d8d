"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class ChordBraidError(ValueError):
    """Base class for domain errors (the CLI maps these to exit code 1)."""


class LabelCountError(ChordBraidError):
    pass


class LabelGapError(ChordBraidError):
    pass


class EmptyInputError(ChordBraidError):
    pass


class NoSpecialChordError(ChordBraidError):
    pass


class CapExceededError(ChordBraidError):
    pass


class BudgetExceededError(ChordBraidError):
    pass


class IndexOutOfRangeError(ChordBraidError):
    pass


class WordSyntaxError(ChordBraidError):
    """Text that is not a word in any accepted notation."""


class EmptyWordError(ChordBraidError):
    pass


class PositionError(ChordBraidError):
    pass


class NotApplicableError(ChordBraidError):
    """A move whose applicability condition fails; the message names the clause."""


class NotThreeBraidError(ChordBraidError):
    pass


class IterationCapError(ChordBraidError):
    pass


class NotOneBlockError(ChordBraidError):
    pass


class ConfigError(ChordBraidError):
    pass
