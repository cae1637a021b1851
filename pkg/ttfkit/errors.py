# ttfkit/errors.py
"""
Exception hierarchy shared by every ttfkit module.

Plain argument mistakes (nonpositive parameters, unknown names, mixing elements
of different rings) raise ``ValueError``; everything below is specific to the
computations themselves.
"""


class TtfkitError(Exception):
    """Base class for all ttfkit errors."""


class PresentationError(TtfkitError):
    """Syntax or semantic error in the presentation text format."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class FormatError(PresentationError):
    """Syntax error in one of the .vab / .as / .sub file formats."""


class BudgetExceeded(TtfkitError):
    """
    A search hit its explicit budget before finishing.

    This is never a mathematical verdict: the index may be infinite or merely
    larger than the budget allows. ``progress`` holds whatever partial
    statistics the caller had gathered.
    """

    def __init__(self, message, progress=None):
        super().__init__(message)
        self.progress = dict(progress or {})


class ValidationError(TtfkitError):
    """Input data violates an invariant; ``detail`` names the offending data."""

    def __init__(self, message, detail=None):
        super().__init__(message)
        self.detail = detail


class UncoveredPairError(ValidationError):
    """No supplied approximation system is p-torsion free over g."""


class NotOfOrderError(ValidationError):
    """An element does not have the prime order an operation requires."""


class VerificationFailure(TtfkitError):
    """A construction failed its own self-check. Always a bug, never input."""


class LevelGuardError(TtfkitError):
    """A resource guard (Witt level, sample size) was exceeded without override."""
