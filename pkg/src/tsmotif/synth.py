"""Synthetic fractional Gaussian noise, fractional Brownian motion and
multifractal random walks, all drawn by circulant embedding."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import ParameterError
from .rng import make_rng
from .series import TimeSeries

__all__ = [
    "FbmSpec",
    "MrwSpec",
    "fgn_autocovariance",
    "circulant_gaussian",
    "generate_fgn",
    "generate_fbm",
    "generate_mrw",
]

log = logging.getLogger(__name__)

DEFAULT_INTERMITTENCY = 0.06


@dataclass(frozen=True)
class FbmSpec:
    hurst: float
    length: int
    seed: int = 0

    def __post_init__(self):
        _check_hurst(self.hurst)
        if int(self.length) < 2:
            raise ParameterError(f"length must be >= 2, got {self.length}")


@dataclass(frozen=True)
class MrwSpec:
    """Parameters of a multifractal random walk.

    ``correlation_length`` defaults to ``length`` when left as ``None``.
    """

    hurst: float
    length: int
    intermittency: float = DEFAULT_INTERMITTENCY
    correlation_length: int | None = None
    seed: int = 0

    def __post_init__(self):
        _check_hurst(self.hurst)
        if int(self.length) < 2:
            raise ParameterError(f"length must be >= 2, got {self.length}")
        if not self.intermittency >= 0:
            raise ParameterError(f"intermittency must be >= 0, got {self.intermittency}")
        if self.correlation_length is None:
            object.__setattr__(self, "correlation_length", int(self.length))
        if self.correlation_length < 1:
            raise ParameterError(f"correlation_length must be >= 1, got {self.correlation_length}")
        if self.correlation_length > self.length:
            raise ParameterError(
                f"correlation_length {self.correlation_length} exceeds length {self.length}"
            )


def _check_hurst(h):
    if not (0.0 < h < 1.0):
        raise ParameterError(f"hurst must lie in (0, 1), got {h}")


def fgn_autocovariance(hurst: float, n: int) -> np.ndarray:
    """Autocovariance of unit-variance fGn at lags ``0..n-1``."""
    k = np.arange(n, dtype=float)
    h2 = 2.0 * hurst
    return 0.5 * (np.abs(k + 1) ** h2 - 2.0 * k**h2 + np.abs(k - 1) ** h2)


def circulant_gaussian(acov: np.ndarray, rng: np.random.Generator, return_clip=False):
    """Draw a stationary Gaussian vector with autocovariance ``acov``.

    The first row of the minimal ``2(n-1)`` circulant embedding is
    diagonalized by FFT. Negative eigenvalues are clipped to zero; the clipped
    mass (sum of magnitudes relative to the eigenvalue sum) is logged and can
    be returned.
    """
    acov = np.asarray(acov, dtype=float)
    n = acov.size
    if n == 1:
        x = rng.standard_normal(1) * np.sqrt(acov[0])
        return (x, 0.0) if return_clip else x
    row = np.concatenate([acov, acov[-2:0:-1]])
    m = row.size
    eig = np.fft.fft(row).real
    neg = eig < 0
    clip = 0.0
    if np.any(neg):
        clip = float(-eig[neg].sum() / np.abs(eig).sum())
        # round-off level negatives are routine for exact fGn embeddings
        if clip > 1e-10:
            log.info("circulant embedding clipped %d negative eigenvalues (relative mass %.3g)", neg.sum(), clip)
        eig = np.where(neg, 0.0, eig)
    z = rng.standard_normal(m) + 1j * rng.standard_normal(m)
    w = np.fft.fft(np.sqrt(eig / m) * z)
    x = w.real[:n]
    return (x, clip) if return_clip else x


def generate_fgn(spec: FbmSpec) -> TimeSeries:
    """Unit-variance fractional Gaussian noise of exponent ``spec.hurst``."""
    rng = make_rng(spec.seed)
    x = circulant_gaussian(fgn_autocovariance(spec.hurst, spec.length), rng)
    return TimeSeries(x, label=f"fgn(H={spec.hurst:g})", meta={"hurst": spec.hurst, "seed": spec.seed})


def generate_fbm(spec: FbmSpec) -> TimeSeries:
    """Fractional Brownian motion as the running sum of `generate_fgn`.

    The first sample equals the first noise increment, so
    ``np.diff(fbm)`` reproduces ``fgn[1:]``.
    """
    noise = generate_fgn(spec).values
    return TimeSeries(np.cumsum(noise), label=f"fbm(H={spec.hurst:g})", meta={"hurst": spec.hurst, "seed": spec.seed})


def _log_covariance(intermittency, correlation_length, n):
    k = np.arange(n, dtype=float)
    return intermittency * np.maximum(np.log(correlation_length / (k + 1.0)), 0.0)


def mrw_increments(spec: MrwSpec) -> tuple[np.ndarray, np.ndarray, float]:
    """Return ``(increments, omega, clip)`` for an MRW.

    Increments are ``eps * exp(omega)`` with ``eps`` unit fGn and ``omega`` a
    Gaussian process of covariance ``lambda2 * ln(L / (|k|+1))`` (zero beyond
    ``L``) and mean ``-lambda2 * ln(L)``, which normalizes
    ``E[exp(2 omega)]`` to one.
    """
    rng = make_rng(spec.seed)
    eps = circulant_gaussian(fgn_autocovariance(spec.hurst, spec.length), rng)
    lam2 = float(spec.intermittency)
    L = int(spec.correlation_length)
    if lam2 == 0.0:
        return eps, np.zeros(spec.length), 0.0
    omega, clip = circulant_gaussian(_log_covariance(lam2, L, spec.length), rng, return_clip=True)
    omega = omega - lam2 * np.log(L)
    return eps * np.exp(omega), omega, clip


def generate_mrw(spec: MrwSpec) -> TimeSeries:
    """Multifractal random walk: running sum of log-normally modulated fGn."""
    inc, _, clip = mrw_increments(spec)
    return TimeSeries(
        np.cumsum(inc),
        label=f"mrw(H={spec.hurst:g},lambda2={spec.intermittency:g})",
        meta={
            "hurst": spec.hurst,
            "intermittency": spec.intermittency,
            "correlation_length": spec.correlation_length,
            "seed": spec.seed,
            "eigen_clip": clip,
        },
    )
