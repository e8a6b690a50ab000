"""Time-series containers, logistic-map generation, file I/O and block segmentation."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EmptyColumnError,
    MissingFileError,
    NonFiniteValueError,
    ParameterError,
    ParseError,
    SegmentationError,
)

PER_BLOCK = "per-block"
CONCATENATE = "concatenate-by-label"
SEGMENT_MODES = (PER_BLOCK, CONCATENATE)


@dataclass(frozen=True, eq=False)
class TimeSeries:
    """Uniformly sampled scalar series; sample ``k`` sits at time ``start_index + k``.

    ``blocks`` is only filled by concatenating segmentation: one
    ``(offset, source_start)`` pair per joined block, where ``offset`` is the
    position inside this series at which the block begins.
    """

    values: np.ndarray
    start_index: int = 0
    label: str | None = None
    blocks: tuple[tuple[int, int], ...] = field(default=())

    def __post_init__(self) -> None:
        arr = np.array(self.values, dtype=np.float64).reshape(-1)
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise NonFiniteValueError(f"non-finite sample at position {int(bad[0])}")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        object.__setattr__(self, "start_index", int(self.start_index))

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.start_index, self.start_index + len(self), dtype=np.int64)

    def __repr__(self) -> str:
        return f"TimeSeries(n={len(self)}, start_index={self.start_index}, label={self.label!r})"


@dataclass(frozen=True)
class LogisticParams:
    mu: float
    x0: float = 0.4
    n: int = 10000
    transient: int = 1000

    def validate(self) -> None:
        if not (math.isfinite(self.mu) and 0.0 <= self.mu <= 4.0):
            raise ParameterError(f"mu must lie in [0, 4], got {self.mu}")
        if not (math.isfinite(self.x0) and 0.0 < self.x0 < 1.0):
            raise ParameterError(f"x0 must lie strictly inside (0, 1), got {self.x0}")
        if int(self.n) != self.n or self.n < 1:
            raise ParameterError(f"n must be a positive integer, got {self.n}")
        if int(self.transient) != self.transient or self.transient < 0:
            raise ParameterError(f"transient must be a non-negative integer, got {self.transient}")


def logistic_series(params: LogisticParams) -> TimeSeries:
    """Orbit of ``x <- mu * x * (1 - x)`` after ``params.transient`` discarded steps.

    The first recorded sample is the state after the transient (``x0`` itself
    when ``transient == 0``). Iteration is scalar IEEE double arithmetic so
    that orbits are reproducible bit for bit.
    """
    params.validate()
    mu = float(params.mu)
    x = float(params.x0)
    for _ in range(int(params.transient)):
        x = mu * x * (1.0 - x)
    out = np.empty(int(params.n), dtype=np.float64)
    for k in range(int(params.n)):
        out[k] = x
        x = mu * x * (1.0 - x)
    return TimeSeries(out, label=f"logistic(mu={params.mu:g}, x0={params.x0:g})")


# --------------------------------------------------------------------------- I/O


def _parse_float(text: str, line: int, path: Path) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{path}: line {line}: not a number: {text!r}") from None
    if not math.isfinite(value):
        raise NonFiniteValueError(f"{path}: line {line}: non-finite value {text.strip()!r}")
    return value


def _load_csv(path: Path, column: int | str, header: bool) -> list[float]:
    with path.open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    line_no = 1
    if isinstance(column, str) and not column.lstrip("-").isdigit():
        if not rows:
            raise EmptyColumnError(f"{path}: empty file")
        names = [c.strip() for c in rows[0]]
        if column not in names:
            raise ParseError(f"{path}: no column named {column!r} in header {names}")
        col = names.index(column)
        rows, line_no = rows[1:], 2
    else:
        col = int(column)
        if header:
            rows, line_no = rows[1:], 2
    values = []
    for offset, row in enumerate(rows):
        line = line_no + offset
        if not row or all(not c.strip() for c in row):
            continue
        if col >= len(row) or col < -len(row):
            raise ParseError(f"{path}: line {line}: missing column {col}")
        values.append(_parse_float(row[col], line, path))
    return values


def _load_json(path: Path) -> tuple[list[float], int]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(data, list):
        raise ParseError(f"{path}: expected a JSON array")
    if data and all(isinstance(d, dict) for d in data):
        try:
            ts = [int(d["t"]) for d in data]
            raw = [d["y"] for d in data]
        except (KeyError, TypeError, ValueError):
            raise ParseError(f"{path}: records must carry integer 't' and numeric 'y'") from None
        if any(b - a != 1 for a, b in zip(ts, ts[1:])):
            raise ParseError(f"{path}: 't' must be consecutive integers (uniform sampling)")
        start = ts[0]
    else:
        raw, start = data, 0
    values = []
    for k, v in enumerate(raw, start=1):
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ParseError(f"{path}: element {k}: not a number: {v!r}")
        if not math.isfinite(v):
            raise NonFiniteValueError(f"{path}: element {k}: non-finite value")
        values.append(float(v))
    return values, start


def load_series(
    path: str | Path,
    format: str | None = None,
    column: int | str = 0,
    header: bool = False,
    label: str | None = None,
) -> TimeSeries:
    """Read a series from CSV or JSON.

    ``format`` defaults to the file suffix. Non-numeric rows are an error,
    never silently skipped; blank lines are ignored. Python's ``float`` also
    accepts the strings ``nan``/``inf``, which are reported as non-finite.
    """
    path = Path(path)
    if not path.is_file():
        raise MissingFileError(f"no such file: {path}")
    fmt = (format or path.suffix.lstrip(".") or "csv").lower()
    start = 0
    if fmt == "csv":
        values = _load_csv(path, column, header)
    elif fmt == "json":
        values, start = _load_json(path)
    else:
        raise ParseError(f"unsupported format {fmt!r}")
    if not values:
        raise EmptyColumnError(f"{path}: no samples in selected column")
    return TimeSeries(values, start_index=start, label=label or path.stem)


def save_series(ts: TimeSeries, path: str | Path, header: str | None = None) -> None:
    """Write one sample per row using shortest round-trip decimal formatting."""
    path = Path(path)
    with path.open("w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(header + "\n")
        for v in ts.values.tolist():
            fh.write(repr(v) + "\n")


# --------------------------------------------------------------------------- segmentation


@dataclass(frozen=True)
class SegmentationPlan:
    block_length: int
    labels: Sequence[str]
    mode: str = PER_BLOCK
    truncate: bool = False

    def __post_init__(self) -> None:
        if int(self.block_length) != self.block_length or self.block_length < 1:
            raise SegmentationError(f"block_length must be a positive integer, got {self.block_length}")
        if not self.labels:
            raise SegmentationError("at least one label is required")
        if self.mode not in SEGMENT_MODES:
            raise SegmentationError(f"mode must be one of {SEGMENT_MODES}, got {self.mode!r}")
        object.__setattr__(self, "labels", tuple(self.labels))


def _blocks(ts: TimeSeries, plan: SegmentationPlan) -> Iterable[tuple[str, int, np.ndarray]]:
    n, b = len(ts), plan.block_length
    count, rest = divmod(n, b)
    if count == 0:
        raise SegmentationError(f"series of length {n} is shorter than one block ({b})")
    if rest and not plan.truncate:
        raise SegmentationError(
            f"series length {n} is not a multiple of block length {b} "
            f"({rest} trailing samples); pass truncate=True to drop them"
        )
    for k in range(count):
        yield plan.labels[k % len(plan.labels)], k * b, ts.values[k * b : (k + 1) * b]


def segment_series(ts: TimeSeries, plan: SegmentationPlan) -> list[TimeSeries]:
    """Split ``ts`` into labeled blocks.

    Concatenating blocks that were not adjacent in time lets samples on either
    side of a seam see each other in the visibility graph; per-block mode is
    the safe default for that reason.
    """
    pieces = list(_blocks(ts, plan))
    if plan.mode == PER_BLOCK:
        return [
            TimeSeries(vals, start_index=ts.start_index + off, label=lab)
            for lab, off, vals in pieces
        ]

    grouped: dict[str, list[tuple[int, np.ndarray]]] = {}
    for lab, off, vals in pieces:
        grouped.setdefault(lab, []).append((off, vals))
    out = []
    for lab, parts in grouped.items():
        blocks, pos = [], 0
        for off, vals in parts:
            blocks.append((pos, ts.start_index + off))
            pos += vals.size
        out.append(
            TimeSeries(
                np.concatenate([v for _, v in parts]),
                start_index=ts.start_index + parts[0][0],
                label=lab,
                blocks=tuple(blocks),
            )
        )
    return out
