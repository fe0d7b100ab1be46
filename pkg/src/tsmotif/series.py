"""Time series container, file ingestion, decimation and window sampling."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DataError, ParameterError
from .rng import make_rng

__all__ = [
    "TimeSeries",
    "SubseriesSpec",
    "load_column_series",
    "write_series",
    "resample",
    "sample_subseries",
]


@dataclass(frozen=True)
class TimeSeries:
    """A finite scalar signal.

    Parameters
    ----------
    values : ndarray
        1-D float array, all entries finite, length >= 2.
    label : str
        Free-form provenance tag.
    scale : int
        Sampling interval in units of the native resolution.
    """

    values: np.ndarray
    label: str = ""
    scale: int = 1
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise DataError(f"series must be 1-D, got shape {v.shape}")
        if v.size < 2:
            raise DataError(f"series needs at least 2 values, got {v.size}")
        if not np.all(np.isfinite(v)):
            raise DataError("series contains non-finite values")
        if int(self.scale) < 1:
            raise ParameterError(f"scale must be >= 1, got {self.scale}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "scale", int(self.scale))

    def __len__(self):
        return self.values.size

    def increments(self) -> np.ndarray:
        return np.diff(self.values)


@dataclass(frozen=True)
class SubseriesSpec:
    length: int
    count: int
    seed: int = 0

    def __post_init__(self):
        if self.length < 2:
            raise ParameterError(f"window length must be >= 2, got {self.length}")
        if self.count < 1:
            raise ParameterError(f"window count must be >= 1, got {self.count}")


_SPLIT = re.compile(r"[,\s;]+")


def load_column_series(path, column: int = 0, header_rows: int = 0, label=None, log=False) -> TimeSeries:
    """Read one numeric column of a comma or whitespace delimited text file.

    Blank lines and lines starting with ``#`` are ignored. Rows whose selected
    field does not parse as a finite float are skipped and reported in
    ``series.meta["skipped"]`` as ``(line_number, reason)`` pairs. If the
    column index is beyond the width of a row, a `DataError` naming the first
    such line is raised.

    Parameters
    ----------
    path : str or Path
    column : int
        0-based column index.
    header_rows : int
        Number of leading lines to skip unconditionally.
    label : str, optional
        Defaults to the file name.
    log : bool
        Take the natural log of the values (all values must be positive).
    """
    path = Path(path)
    if column < 0:
        raise ParameterError(f"column must be >= 0, got {column}")
    if header_rows < 0:
        raise ParameterError(f"header_rows must be >= 0, got {header_rows}")
    try:
        text = path.read_text()
    except FileNotFoundError:
        raise DataError(f"{path}: file not found") from None
    except OSError as exc:
        raise DataError(f"{path}: {exc}") from None

    values = []
    skipped = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if lineno <= header_rows:
            continue
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        fields = [f for f in _SPLIT.split(stripped) if f]
        if column >= len(fields):
            raise DataError(
                f"{path}:{lineno}: column {column} out of range for row with {len(fields)} field(s)"
            )
        try:
            x = float(fields[column])
        except ValueError:
            skipped.append((lineno, f"cannot parse {fields[column]!r}"))
            continue
        if not np.isfinite(x):
            skipped.append((lineno, "non-finite value"))
            continue
        values.append(x)

    if len(values) < 2:
        raise DataError(f"{path}: fewer than 2 valid rows in column {column}")
    arr = np.array(values)
    if log:
        if np.any(arr <= 0):
            raise DataError(f"{path}: log transform needs strictly positive values")
        arr = np.log(arr)
    return TimeSeries(arr, label=label or path.name, scale=1, meta={"skipped": skipped, "source": str(path)})


def write_series(series: TimeSeries, path) -> Path:
    """Write one value per line using shortest round-trip decimal repr."""
    path = Path(path)
    path.write_text("".join(f"{float(x)!r}\n" for x in series.values))
    return path


def resample(series: TimeSeries, dt: int) -> TimeSeries:
    """Keep every ``dt``-th sample starting at index 0 (plain decimation).

    The result has ``ceil(len/dt)`` samples, which equals ``floor(len/dt)``
    whenever ``dt`` divides the length and exceeds it by one otherwise.
    """
    dt = int(dt)
    if dt < 1:
        raise ParameterError(f"dt must be >= 1, got {dt}")
    if len(series) // dt < 2:
        raise ParameterError(f"dt={dt} leaves fewer than 2 samples from a series of length {len(series)}")
    if dt == 1:
        return series
    return TimeSeries(series.values[::dt], label=series.label, scale=series.scale * dt, meta=dict(series.meta))


def sample_subseries(series: TimeSeries, spec: SubseriesSpec) -> list[TimeSeries]:
    """Draw ``spec.count`` contiguous windows with uniform random offsets.

    Offsets are drawn with replacement, so windows may overlap or repeat.
    """
    n = len(series)
    if spec.length > n:
        raise ParameterError(f"window length {spec.length} exceeds series length {n}")
    rng = make_rng(spec.seed)
    offsets = rng.integers(0, n - spec.length + 1, size=spec.count)
    out = []
    for off in offsets:
        off = int(off)
        meta = dict(series.meta)
        meta["offset"] = off
        out.append(TimeSeries(series.values[off:off + spec.length], label=series.label, scale=series.scale, meta=meta))
    return out
