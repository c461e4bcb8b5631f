"""Loading, validating and windowing panels of time series."""

from __future__ import annotations

import csv
import io
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import BinaryIO, TextIO, Union

import numpy as np

from .errors import BoundsError, ContiguityError, ContractError, ParseError, SchemaError

MIN_WINDOW = 4
SAMPLE_PANEL = "sample_panel.csv"

Source = Union[str, os.PathLike, bytes, BinaryIO, TextIO]


@dataclass(frozen=True)
class SeriesPanel:
    """Dense panel: one column per entity, one row per integer period.

    ``values`` is read-only, so a panel can be shared freely between readers.
    """

    entities: tuple[str, ...]
    periods: tuple[int, ...]
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, "entities", tuple(self.entities))
        object.__setattr__(self, "periods", tuple(int(p) for p in self.periods))
        object.__setattr__(self, "values", values)
        _validate(self)

    def series(self, entity: str) -> np.ndarray:
        return self.values[:, self.entities.index(entity)]

    @property
    def n_periods(self) -> int:
        return len(self.periods)

    def __eq__(self, other):
        if not isinstance(other, SeriesPanel):
            return NotImplemented
        return (
            self.entities == other.entities
            and self.periods == other.periods
            and np.array_equal(self.values, other.values)
        )

    __hash__ = None


@dataclass(frozen=True)
class AnalysisWindow:
    start_period: int
    end_period: int

    def __post_init__(self):
        if self.start_period > self.end_period:
            raise ContractError(
                f"window start {self.start_period} is after end {self.end_period}"
            )
        if self.length < MIN_WINDOW:
            raise ContractError(
                f"window ({self.start_period}, {self.end_period}) has {self.length} "
                f"periods; at least {MIN_WINDOW} are required"
            )

    @property
    def length(self) -> int:
        return self.end_period - self.start_period + 1

    @property
    def label(self) -> str:
        return f"{self.start_period}_{self.end_period}"

    @classmethod
    def parse(cls, text: str) -> "AnalysisWindow":
        """Parse ``START:END``."""
        try:
            start, end = text.split(":")
            return cls(int(start), int(end))
        except ValueError as exc:
            if isinstance(exc, ContractError):
                raise
            raise ContractError(f"window must look like START:END, got {text!r}") from None


def _validate(panel: SeriesPanel) -> None:
    if not panel.entities or not panel.periods:
        raise SchemaError("empty panel")
    seen = set()
    for code in panel.entities:
        if code in seen:
            raise SchemaError(f"duplicate entity {code}")
        seen.add(code)
    if panel.values.shape != (len(panel.periods), len(panel.entities)):
        raise SchemaError(
            f"values shape {panel.values.shape} does not match "
            f"{len(panel.periods)} periods x {len(panel.entities)} entities"
        )
    for prev, cur in zip(panel.periods, panel.periods[1:]):
        if cur <= prev:
            raise SchemaError(f"periods not strictly increasing at {prev}, {cur}")
        if cur != prev + 1:
            missing = ", ".join(str(p) for p in range(prev + 1, cur))
            raise ContiguityError(f"gap in periods: missing {missing}")
    if not np.all(np.isfinite(panel.values)):
        row, col = np.argwhere(~np.isfinite(panel.values))[0]
        raise SchemaError(
            f"missing or non-finite value for {panel.entities[col]} "
            f"in period {panel.periods[row]}"
        )


def _read_text(source: Source) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, (str, os.PathLike)):
        return Path(source).read_text(encoding="utf-8")
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def load_panel(source: Source, fmt: str = "csv-wide") -> SeriesPanel:
    """Read a wide CSV panel: header of entity codes, first column period labels.

    ``source`` may be a path, raw bytes or an open file. Rows may come in any
    order; they are sorted by period before validation.
    """
    if fmt != "csv-wide":
        raise ParseError(f"unsupported panel format {fmt!r}")
    text = _read_text(source)
    if text.startswith("﻿"):
        text = text[1:]
    rows = [r for r in csv.reader(io.StringIO(text)) if any(cell.strip() for cell in r)]
    if not rows:
        raise SchemaError("empty panel")
    header = [cell.strip() for cell in rows[0]]
    entities = header[1:]
    if not entities:
        raise SchemaError("empty panel: no entity columns")
    if any(not code for code in entities):
        raise SchemaError("blank entity code in header")
    seen = set()
    for code in entities:
        if code in seen:
            raise SchemaError(f"duplicate entity {code}")
        seen.add(code)
    body = rows[1:]
    if not body:
        raise SchemaError("empty panel: no data rows")

    periods = []
    values = []
    for lineno, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise ParseError(
                f"row {lineno}: expected {len(header)} cells, found {len(row)}"
            )
        try:
            periods.append(int(row[0].strip()))
        except ValueError:
            raise ParseError(f"row {lineno}: period label {row[0]!r} is not an integer") from None
        parsed = []
        for code, cell in zip(entities, row[1:]):
            cell = cell.strip()
            if not cell:
                raise SchemaError(f"row {lineno}, column {code}: missing value")
            try:
                parsed.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"row {lineno}, column {code}: malformed number {cell!r}"
                ) from None
        values.append(parsed)

    order = sorted(range(len(periods)), key=periods.__getitem__)
    periods = [periods[i] for i in order]
    for prev, cur in zip(periods, periods[1:]):
        if prev == cur:
            raise SchemaError(f"duplicate period {cur}")
    return SeriesPanel(tuple(entities), tuple(periods), np.array([values[i] for i in order]))


def save_panel(panel: SeriesPanel, dest: str | os.PathLike | TextIO, first_header: str = "period") -> None:
    """Write ``panel`` as wide CSV; floats use shortest round-trip repr."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([first_header, *panel.entities])
    for period, row in zip(panel.periods, panel.values):
        writer.writerow([period, *(repr(float(v)) for v in row)])
    if isinstance(dest, (str, os.PathLike)):
        Path(dest).write_text(buf.getvalue(), encoding="utf-8")
    else:
        dest.write(buf.getvalue())


def window_panel(panel: SeriesPanel, window: AnalysisWindow) -> SeriesPanel:
    first, last = panel.periods[0], panel.periods[-1]
    if window.start_period < first or window.end_period > last:
        raise BoundsError(
            f"window ({window.start_period}, {window.end_period}) lies outside "
            f"the available range ({first}, {last})"
        )
    lo = window.start_period - first
    hi = window.end_period - first + 1
    return SeriesPanel(panel.entities, panel.periods[lo:hi], panel.values[lo:hi])


def sample_panel_path() -> Path:
    """Path of the bundled synthetic 19-entity panel (1970-2011)."""
    return Path(str(resources.files("plcsnet") / "data" / SAMPLE_PANEL))


def load_sample_panel() -> SeriesPanel:
    return load_panel(sample_panel_path())
