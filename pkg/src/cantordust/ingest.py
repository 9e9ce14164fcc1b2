"""Price file parsing and analysis-window selection.

Input files are delimiter-separated with a date column (ISO yyyy-mm-dd)
and a close column; extra columns are ignored by name. A window is a
count of records, not a calendar span: weekends and holidays do not
create empty time slots, one record is one time unit.
"""

from __future__ import annotations

import datetime as dt
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

#: Shortest usable series: isqrt(36) = 6 boxes, isqrt(6) = 2 alpha bins.
MIN_SIGNAL_LENGTH = 36


class ParseError(ValueError):
    """Raised when a price file is rejected; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"{message} at line {line}")


@dataclass(frozen=True)
class PricePoint:
    day: dt.date
    close: float

    def __post_init__(self):
        if not self.close > 0:
            raise ValueError(f"non-positive price {self.close} on {self.day}")


@dataclass(frozen=True)
class PriceFormat:
    """Column layout of a price file.

    With ``has_header`` the two columns are located by name; without it
    they are taken positionally (date first, close second).
    """

    delimiter: str = ","
    date_column: str = "date"
    close_column: str = "close"
    has_header: bool = True


@dataclass(frozen=True)
class Signal:
    """An ordered pre-crash window of daily closes."""

    points: tuple[PricePoint, ...]
    label: str = ""

    def __post_init__(self):
        if len(self.points) < MIN_SIGNAL_LENGTH:
            raise ValueError(
                f"signal needs at least {MIN_SIGNAL_LENGTH} points, got {len(self.points)}"
            )
        days = [p.day for p in self.points]
        for a, b in zip(days, days[1:]):
            if a >= b:
                raise ValueError(f"days not strictly increasing: {a} then {b}")

    def __len__(self) -> int:
        return len(self.points)

    @property
    def closes(self) -> np.ndarray:
        return np.array([p.close for p in self.points], dtype=float)


def parse_prices(text: str | Iterable[str], fmt: PriceFormat = PriceFormat()) -> list[PricePoint]:
    """Parse a whole price stream, rejecting the file on the first bad row.

    Returns rows in file order. Malformed dates, non-positive prices and
    duplicate dates raise :class:`ParseError` naming the 1-based line number
    (header line included in the count when present).
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = [ln.rstrip("\r\n") for ln in text]

    line_no = 0
    date_idx, close_idx = 0, 1
    if fmt.has_header:
        while line_no < len(lines) and not lines[line_no].strip():
            line_no += 1
        if line_no >= len(lines):
            return []
        header = [c.strip() for c in lines[line_no].split(fmt.delimiter)]
        try:
            date_idx = header.index(fmt.date_column)
            close_idx = header.index(fmt.close_column)
        except ValueError:
            raise ParseError(
                f"header must contain columns {fmt.date_column!r} and {fmt.close_column!r}, "
                f"got {header}",
                line=line_no + 1,
            ) from None
        line_no += 1

    points: list[PricePoint] = []
    seen: set[dt.date] = set()
    for i in range(line_no, len(lines)):
        raw = lines[i]
        if not raw.strip():
            continue
        cells = [c.strip() for c in raw.split(fmt.delimiter)]
        if len(cells) <= max(date_idx, close_idx):
            raise ParseError(f"row has {len(cells)} columns, need {max(date_idx, close_idx) + 1}",
                             line=i + 1)
        try:
            day = dt.date.fromisoformat(cells[date_idx])
        except ValueError:
            raise ParseError(f"malformed date {cells[date_idx]!r}", line=i + 1) from None
        try:
            close = float(cells[close_idx])
        except ValueError:
            raise ParseError(f"malformed price {cells[close_idx]!r}", line=i + 1) from None
        if not close > 0:
            raise ParseError(f"non-positive price {cells[close_idx]}", line=i + 1)
        if day in seen:
            raise ParseError(f"duplicate date {day.isoformat()}", line=i + 1)
        seen.add(day)
        points.append(PricePoint(day, close))
    return points


def select_window(points: list[PricePoint], end_day: dt.date, n: int) -> Signal:
    """Select the last ``n`` points dated on or before ``end_day``.

    The label records both so downstream reports identify the window.
    """
    if n < 1:
        raise ValueError(f"window size must be positive, got {n}")
    eligible = [p for p in points if p.day <= end_day]
    eligible.sort(key=lambda p: p.day)
    if len(eligible) < n:
        raise ValueError(
            f"window of {n} requested but only {len(eligible)} points available "
            f"on or before {end_day.isoformat()}"
        )
    window = tuple(eligible[-n:])
    return Signal(points=window, label=f"n={n}@{end_day.isoformat()}")
