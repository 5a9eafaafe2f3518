"""Exception taxonomy shared by every module.

All toolkit errors derive from ToolkitError so callers (and the CLI) can
catch one base class and serialize a structured report.
"""

from __future__ import annotations


class ToolkitError(Exception):
    """Base class for all errors raised by this package."""


class GapError(ToolkitError):
    """A year sequence is not consecutive; `year` is the first missing year."""

    def __init__(self, year: int, message: str | None = None):
        self.year = int(year)
        super().__init__(message or f"gap in years: missing {self.year}")


class ParseError(ToolkitError):
    """A CSV row could not be parsed; `line` is the 1-based line number."""

    def __init__(self, line: int, message: str | None = None):
        self.line = int(line)
        super().__init__(message or f"unparseable row at line {self.line}")


class EmptyInput(ToolkitError):
    """An input stream or series carried no data rows."""


class LengthError(ToolkitError):
    """A series is too short for the requested operation."""


class DivideByZero(ToolkitError):
    """A zero denominator at a specific year; `year` identifies it."""

    def __init__(self, year: int, message: str | None = None):
        self.year = int(year)
        super().__init__(message or f"zero denominator at year {self.year}")


class CollinearError(ToolkitError):
    """A design matrix (or moment matrix) is rank deficient."""


class DofError(ToolkitError):
    """Not enough observations for the requested number of parameters."""


class DegenerateResiduals(ToolkitError):
    """Residuals are identically zero; the statistic is undefined."""


class DegenerateFit(ToolkitError):
    """Fitted values are constant (or the fit leaves nothing to test)."""


class DegenerateInput(ToolkitError):
    """Input admits an exact deterministic fit; the test is undefined."""


class RangeError(ToolkitError):
    """A year, level, or index lies outside the supported range."""


class SegmentError(ToolkitError):
    """Segment boundaries overlap."""


class MissingFixture(ToolkitError):
    """A required data fixture is absent; `name` is the fixture file name."""

    def __init__(self, name: str, message: str | None = None):
        self.name = name
        super().__init__(message or f"missing fixture: {name}")
