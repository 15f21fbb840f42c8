"""Series generation, CSV ingestion, scaling and lag embedding."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import List, Union

import numpy as np

from .errors import (DataError, DegenerateRange, InvalidArgument, ParseError,
                     SeriesTooShort)


@dataclass(frozen=True)
class SeriesFrame:
    values: tuple
    name: str = "series"

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        if not all(math.isfinite(v) for v in values):
            raise DataError(f"{self.name}: series contains non-finite values")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    def to_numpy(self) -> np.ndarray:
        return np.array(self.values)


@dataclass(frozen=True)
class Normalizer:
    """Affine map of ``[lo, hi]`` onto ``[0, 1]``; values outside are clipped."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise DegenerateRange(f"degenerate range [{self.lo}, {self.hi}]")

    def apply(self, v):
        out = np.clip((np.asarray(v, dtype=float) - self.lo) / (self.hi - self.lo), 0.0, 1.0)
        return float(out) if out.ndim == 0 else out

    def invert(self, v):
        out = np.asarray(v, dtype=float) * (self.hi - self.lo) + self.lo
        return float(out) if out.ndim == 0 else out

    @property
    def scale(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class LagSample:
    x: tuple  # most recent lag first
    y: float
    index: int  # position of the target in the series (0-based)


def gen_synthetic(length: int = 2500, lags: int = 10, period: float = 20.0) -> SeriesFrame:
    """
    Nonlinear autoregressive plant driven by a sine

        y_t = sum(y_{t-i}) / (1 + sum(y_{t-i}^2)) + u_{t-1},  i = 1..lags
        u_t = sin(2 pi t / period)

    with ``y_1 = ... = y_lags = 0``.  Time starts at ``t = 1``, so
    ``values[t - 1]`` holds ``y_t``.
    """
    if length < 1:
        raise InvalidArgument("length must be >= 1")
    y = [0.0] * min(length, lags)
    for t in range(lags + 1, length + 1):
        window = y[t - 1 - lags:t - 1]
        s = sum(window)
        s2 = sum(v * v for v in window)
        y.append(s / (1.0 + s2) + math.sin(2.0 * math.pi * (t - 1) / period))
    return SeriesFrame(tuple(y), "synthetic")


def load_csv(path, column: Union[int, str] = 0, name: str = None) -> SeriesFrame:
    """
    Read one numeric column of a comma-separated file.

    ``column`` is a 0-based index or a header name.  A non-numeric first row
    is treated as a header; any later unparseable cell raises
    :class:`ParseError` with its 1-based line number.
    """
    with open(path, newline="", encoding="utf-8") as f:
        rows = [(n, r) for n, r in enumerate(csv.reader(f), start=1) if any(c.strip() for c in r)]
    values: List[float] = []
    idx = column if isinstance(column, int) else None
    for pos, (line, row) in enumerate(rows):
        if pos == 0 and (isinstance(column, str) or not _numeric(row, idx or 0)):
            if isinstance(column, str):
                header = [c.strip() for c in row]
                if column not in header:
                    raise DataError(f"{path}: no column named {column!r}")
                idx = header.index(column)
            continue
        if idx is None:
            idx = 0
        try:
            v = float(row[idx])
        except (IndexError, ValueError):
            raise ParseError(line, f"{path}: cannot parse value on line {line}") from None
        if not math.isfinite(v):
            raise ParseError(line, f"{path}: non-finite value on line {line}")
        values.append(v)
    return SeriesFrame(tuple(values), name or str(path))


def _numeric(row, idx) -> bool:
    try:
        float(row[idx])
    except (IndexError, ValueError):
        return False
    return True


def fit_normalizer(frame: SeriesFrame, split_point: int) -> Normalizer:
    """Range of the first ``split_point`` values only, so test data never leaks."""
    if split_point < 2:
        raise InvalidArgument("split_point must be >= 2")
    prefix = frame.values[:split_point]
    return Normalizer(min(prefix), max(prefix))


def lag_embed(values, lags: int) -> List[LagSample]:
    values = list(values.values if isinstance(values, SeriesFrame) else values)
    if lags < 1:
        raise InvalidArgument("lags must be >= 1")
    if len(values) <= lags:
        raise SeriesTooShort(f"need more than {lags} values, got {len(values)}")
    return [LagSample(tuple(values[k - lags:k][::-1]), float(values[k]), k)
            for k in range(lags, len(values))]


def to_arrays(samples):
    X = np.array([s.x for s in samples], dtype=float).reshape(len(samples), -1)
    y = np.array([s.y for s in samples], dtype=float)
    return X, y


def split(samples, train_count: int):
    if not 0 < train_count < len(samples):
        raise InvalidArgument(
            f"train_count must lie in [1, {len(samples) - 1}], got {train_count}")
    return samples[:train_count], samples[train_count:]
