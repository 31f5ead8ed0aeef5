"""Raw telemetry ingestion, validation and supervised reshaping.

A :class:`TimeSeries` is the universal input of the toolkit: a validated,
gap-filled sequence of non-negative traffic volumes at a nominal 5-minute
cadence.  ``make_windows`` turns a series into the (lagged values -> next
value) matrix every learner consumes, and ``split_holdout`` produces the
chronological train/test split.  Nothing in this module ever shuffles:
time order is the supervision signal.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateSplit,
    EmptySeries,
    NonMonotonicTimestamps,
    ParseError,
    WindowTooLarge,
)


@dataclass(frozen=True)
class TimeSeries:
    """Timestamped sequence of traffic volumes.

    ``timestamps`` is optional: the forecasting models use only lagged
    values, so a bare value column is sufficient.  When timestamps are
    present they are validated (strictly increasing) but never used as
    features.
    """

    values: np.ndarray
    timestamps: np.ndarray | None = None
    name: str = "series"
    unit: str = "bits"
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        values.setflags(write=False)
        if values.ndim != 1 or len(values) < 2:
            raise EmptySeries(
                f"series {self.name!r} needs at least 2 points, got {values.size}"
            )
        if not np.all(np.isfinite(values)):
            raise ParseError(int(np.flatnonzero(~np.isfinite(values))[0]), "value",
                             "non-finite value after ingestion")
        if self.timestamps is not None:
            ts = np.asarray(self.timestamps)
            object.__setattr__(self, "timestamps", ts)
            ts.setflags(write=False)
            if len(ts) != len(values):
                raise ParseError(0, "timestamp", "timestamp/value length mismatch")
            if np.any(ts[1:] <= ts[:-1]):
                bad = int(np.flatnonzero(ts[1:] <= ts[:-1])[0]) + 1
                raise NonMonotonicTimestamps(
                    f"timestamps not strictly increasing at row {bad}"
                )

    def __len__(self):
        return len(self.values)

    def slice(self, start, stop, name=None) -> "TimeSeries":
        ts = None if self.timestamps is None else self.timestamps[start:stop]
        return TimeSeries(self.values[start:stop], ts,
                          name or self.name, self.unit, dict(self.metadata))

    def with_values(self, values, name=None) -> "TimeSeries":
        """New series with the same cadence metadata but different values."""
        return TimeSeries(np.asarray(values, dtype=float), None,
                          name or self.name, self.unit, dict(self.metadata))


@dataclass(frozen=True)
class WindowedDataset:
    """Supervised matrix: row i holds series[i .. i+w), target series[i+w]."""

    X: np.ndarray
    y: np.ndarray
    window_len: int
    source_name: str = "series"

    def __post_init__(self):
        self.X.setflags(write=False)
        self.y.setflags(write=False)

    @property
    def n_samples(self):
        return len(self.y)


@dataclass(frozen=True)
class SplitPair:
    train: TimeSeries
    test: TimeSeries
    ratio: float


def load_csv(path, value_column="value", timestamp_column=None, name=None) -> TimeSeries:
    """Read a telemetry CSV into a validated TimeSeries.

    Rows whose value field is missing or empty are forward-filled from the
    previous observation; the number of filled rows is recorded in
    ``metadata['filled_rows']``.  A leading missing value has no
    predecessor and is a parse error.
    """
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or value_column not in reader.fieldnames:
            raise ParseError(0, value_column, "missing header or value column")
        use_ts = timestamp_column is not None
        if use_ts and timestamp_column not in reader.fieldnames:
            raise ParseError(0, timestamp_column, "timestamp column not in header")

        values, stamps = [], []
        filled = 0
        for i, row in enumerate(reader, start=1):
            raw = (row.get(value_column) or "").strip()
            if raw == "" or raw.lower() in ("nan", "na", "null"):
                if not values:
                    raise ParseError(i, value_column, "missing value with no predecessor")
                values.append(values[-1])
                filled += 1
            else:
                try:
                    values.append(float(raw))
                except ValueError:
                    raise ParseError(i, value_column, f"not a number: {raw!r}") from None
            if use_ts:
                t = (row.get(timestamp_column) or "").strip()
                try:
                    stamps.append(float(t))
                except ValueError:
                    # keep non-numeric timestamps as lexicographic strings
                    stamps.append(t)

    if len(values) < 2:
        raise EmptySeries(f"{path}: fewer than 2 usable rows")

    ts = None
    if use_ts:
        try:
            ts = np.array([float(s) for s in stamps])
        except (TypeError, ValueError):
            ts = np.array(stamps)
    series_name = name if name is not None else str(path)
    out = TimeSeries(np.array(values, dtype=float), ts, series_name,
                     metadata={"filled_rows": filled, "source_path": str(path)})
    return out


def write_csv(ts: TimeSeries, path, value_column="value", timestamp_column="timestamp"):
    """Write a TimeSeries so that load_csv reproduces it bit-exactly.

    Values are serialized with repr(), the shortest round-tripping
    decimal form for float64.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        if ts.timestamps is not None:
            writer.writerow([timestamp_column, value_column])
            for t, v in zip(ts.timestamps, ts.values):
                writer.writerow([t, repr(float(v))])
        else:
            writer.writerow([value_column])
            for v in ts.values:
                writer.writerow([repr(float(v))])


def split_holdout(ts: TimeSeries, ratio: float) -> SplitPair:
    """Chronological split: train = first floor(ratio * N) points."""
    n = len(ts)
    if not 0.0 < ratio < 1.0:
        raise DegenerateSplit(f"ratio must be in (0, 1), got {ratio}")
    n_train = int(np.floor(ratio * n))
    if n_train < 1 or n - n_train < 1:
        raise DegenerateSplit(f"ratio {ratio} leaves an empty side for N={n}")
    train = ts.slice(0, n_train, name=f"{ts.name}")
    test = ts.slice(n_train, n, name=f"{ts.name}")
    return SplitPair(train, test, ratio)


def make_windows(ts: TimeSeries, w: int) -> WindowedDataset:
    """Sliding-window reshape: n_samples = len(ts) - w."""
    if w < 1:
        raise WindowTooLarge(f"window length must be >= 1, got {w}")
    n = len(ts)
    if n <= w:
        raise WindowTooLarge(f"series of length {n} cannot produce windows of length {w}")
    return WindowedDataset(
        X=_window_matrix(ts.values, w),
        y=ts.values[w:].copy(),
        window_len=w,
        source_name=ts.name,
    )


def _window_matrix(values, w):
    """All length-w contiguous windows ending before the last element."""
    n = len(values)
    view = np.lib.stride_tricks.sliding_window_view(values, w)[: n - w]
    return np.ascontiguousarray(view)
