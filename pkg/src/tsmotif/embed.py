"""Delay embedding into phase space."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError, ParameterError

__all__ = ["EmbeddingConfig", "EmbeddedSeries", "embed_series"]


@dataclass(frozen=True)
class EmbeddingConfig:
    dimension: int = 10
    delay: int = 1

    def __post_init__(self):
        if int(self.dimension) < 1:
            raise ParameterError(f"embedding dimension must be >= 1, got {self.dimension}")
        if int(self.delay) < 1:
            raise ParameterError(f"embedding delay must be >= 1, got {self.delay}")


@dataclass(frozen=True)
class EmbeddedSeries:
    points: np.ndarray
    source_length: int
    config: EmbeddingConfig

    @property
    def n(self):
        return self.points.shape[0]


def embed_series(series, config: EmbeddingConfig) -> EmbeddedSeries:
    """Delay vectors ``(x[i], x[i+tau], ..., x[i+(d-1)tau])`` for
    ``i = 0 .. len - d*tau - 1``.

    Exactly ``len - d*tau`` points are produced, i.e. ``tau`` fewer than the
    ``len - (d-1)*tau`` vectors that would fit; the trailing ones are dropped.
    """
    x = np.asarray(getattr(series, "values", series), dtype=float)
    d, tau = int(config.dimension), int(config.delay)
    ell = x.size
    n = ell - d * tau
    if n < 1:
        raise ParameterError(f"series length {ell} must exceed dimension*delay = {d * tau}")
    if not np.all(np.isfinite(x)):
        raise DataError("series contains non-finite values")
    idx = np.arange(n)[:, None] + tau * np.arange(d)[None, :]
    pts = x[idx]
    pts.setflags(write=False)
    return EmbeddedSeries(pts, ell, config)
