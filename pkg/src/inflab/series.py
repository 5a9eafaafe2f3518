"""Annual time-series container and algebra.

A Series is an immutable run of consecutive annual values. Every derived
quantity in the package (growth rates, differences, moving averages,
cumulative curves) is built from the handful of operations here, so the
year-bookkeeping rules live in exactly one place:

* diff/growth_rate advance start_year by the order lost,
* moving_average is trailing (causal) and advances start_year by window-1,
* shift relabels years only and never touches values.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DivideByZero,
    EmptyInput,
    GapError,
    LengthError,
    ParseError,
)

__all__ = [
    "Series",
    "SummaryStats",
    "load_csv",
    "save_csv",
    "diff",
    "growth_rate",
    "moving_average",
    "shift",
    "cumulative",
    "align",
    "subtract",
    "summary",
]


@dataclass(frozen=True)
class Series:
    """A named sequence of real values on consecutive integer years."""

    name: str
    start_year: int
    values: tuple[float, ...] = field(repr=False)

    def __post_init__(self):
        if len(self.values) < 1:
            raise EmptyInput(f"series {self.name!r} has no values")
        vals = tuple(float(v) for v in self.values)
        for v in vals:
            if not math.isfinite(v):
                raise ParseError(0, f"series {self.name!r} contains non-finite value {v!r}")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start_year", int(self.start_year))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end_year(self) -> int:
        return self.start_year + len(self.values) - 1

    @property
    def years(self) -> range:
        return range(self.start_year, self.end_year + 1)

    def value_at(self, year: int) -> float:
        if not self.start_year <= year <= self.end_year:
            raise LengthError(f"year {year} outside {self.name!r} range "
                              f"{self.start_year}..{self.end_year}")
        return self.values[year - self.start_year]

    def window(self, start: int, end: int) -> "Series":
        """Sub-series on years start..end inclusive."""
        if start > end:
            raise LengthError(f"empty window {start}..{end}")
        if start < self.start_year or end > self.end_year:
            raise LengthError(f"window {start}..{end} outside {self.name!r} range "
                              f"{self.start_year}..{self.end_year}")
        lo = start - self.start_year
        return Series(self.name, start, self.values[lo:lo + (end - start + 1)])

    def to_numpy(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)

    def with_name(self, name: str) -> "Series":
        return Series(name, self.start_year, self.values)


@dataclass(frozen=True)
class SummaryStats:
    mean: float
    stdev: float
    min: float
    max: float
    n: int


def load_csv(source, name: str) -> Series:
    """Parse a `year,value` CSV into a Series.

    `source` may be a path, bytes, str, or a file-like object. Years must be
    strictly consecutive; a missing year raises GapError with that year, a
    bad row raises ParseError with its 1-based line number, and a header-only
    file raises EmptyInput.
    """
    text = _read_text(source)
    reader = csv.reader(io.StringIO(text))
    rows = [(i + 1, row) for i, row in enumerate(reader) if row and any(c.strip() for c in row)]
    if not rows:
        raise EmptyInput("empty CSV")
    header_line, header = rows[0]
    if [c.strip().lower() for c in header] != ["year", "value"]:
        raise ParseError(header_line, f"expected header 'year,value', got {','.join(header)!r}")
    body = rows[1:]
    if not body:
        raise EmptyInput("CSV has a header but no data rows")

    years: list[int] = []
    values: list[float] = []
    for line_no, row in body:
        if len(row) != 2:
            raise ParseError(line_no, f"expected 2 columns, got {len(row)}")
        try:
            year = int(row[0].strip())
        except ValueError:
            raise ParseError(line_no, f"bad year {row[0]!r}") from None
        try:
            value = float(row[1].strip())
        except ValueError:
            raise ParseError(line_no, f"bad value {row[1]!r}") from None
        if not math.isfinite(value):
            raise ParseError(line_no, f"non-finite value {row[1]!r}")
        if years:
            expected = years[-1] + 1
            if year != expected:
                raise GapError(expected)
        years.append(year)
        values.append(value)
    return Series(name, years[0], tuple(values))


def save_csv(s: Series, path) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["year", "value"])
        for year, value in zip(s.years, s.values):
            writer.writerow([year, repr(value)])


def _read_text(source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str) and "\n" not in source and "," not in source:
        with open(source, "r", encoding="utf-8") as fh:
            return fh.read()
    if isinstance(source, str):
        return source
    if hasattr(source, "read"):
        data = source.read()
        return data.decode("utf-8") if isinstance(data, bytes) else data
    with open(source, "r", encoding="utf-8") as fh:  # pathlib.Path and friends
        return fh.read()


def diff(s: Series, order: int = 1) -> Series:
    """Order-fold first differencing; start_year advances by `order`."""
    if order < 1:
        raise LengthError(f"diff order must be positive, got {order}")
    if len(s) <= order:
        raise LengthError(f"series {s.name!r} too short for diff order {order}")
    arr = s.to_numpy()
    for _ in range(order):
        arr = arr[1:] - arr[:-1]
    return Series(f"d{order}({s.name})" if order > 1 else f"d({s.name})",
                  s.start_year + order, tuple(arr))


def growth_rate(s: Series) -> Series:
    """Relative first difference (s[t]-s[t-1])/s[t-1], labeled at year t."""
    if len(s) < 2:
        raise LengthError(f"series {s.name!r} too short for growth rate")
    vals = s.values
    out = []
    for i in range(1, len(vals)):
        prev = vals[i - 1]
        if prev == 0.0:
            raise DivideByZero(s.start_year + i - 1)
        out.append((vals[i] - prev) / prev)
    return Series(f"growth({s.name})", s.start_year + 1, tuple(out))


def moving_average(s: Series, window: int) -> Series:
    """Trailing mean over `window` years; result[t] averages t-window+1..t."""
    if window < 1:
        raise LengthError(f"window must be positive, got {window}")
    if window > len(s):
        raise LengthError(f"window {window} exceeds length {len(s)} of {s.name!r}")
    arr = s.to_numpy()
    kernel = np.full(window, 1.0 / window)
    out = np.convolve(arr, kernel, mode="valid")
    return Series(f"ma{window}({s.name})", s.start_year + window - 1, tuple(out))


def shift(s: Series, k: int) -> Series:
    """Relabel years by +k; values unchanged. shift(shift(s,k),-k) == s."""
    return Series(s.name, s.start_year + k, s.values)


def cumulative(s: Series) -> Series:
    """Running sum, same year labels as the input."""
    return Series(f"cum({s.name})", s.start_year, tuple(np.cumsum(s.to_numpy())))


def align(*series: Series) -> tuple[Series, ...]:
    """Restrict every series to the intersection of their year ranges."""
    if not series:
        raise EmptyInput("align called with no series")
    start = max(s.start_year for s in series)
    end = min(s.end_year for s in series)
    if start > end:
        raise LengthError("series share no overlapping years")
    return tuple(s.window(start, end) for s in series)


def subtract(a: Series, b: Series, name: str | None = None) -> Series:
    """Pointwise a-b on the year intersection."""
    aa, bb = align(a, b)
    vals = tuple(x - y for x, y in zip(aa.values, bb.values))
    return Series(name or f"{a.name}-{b.name}", aa.start_year, vals)


def summary(s: Series) -> SummaryStats:
    """Sample statistics; the standard deviation uses the n-1 denominator."""
    if len(s) < 2:
        raise LengthError(f"series {s.name!r} needs at least 2 values for summary")
    arr = s.to_numpy()
    return SummaryStats(
        mean=float(arr.mean()),
        stdev=float(arr.std(ddof=1)),
        min=float(arr.min()),
        max=float(arr.max()),
        n=len(arr),
    )
