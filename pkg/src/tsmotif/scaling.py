"""Detrended fluctuation analysis and delayed mutual information."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, ParameterError

__all__ = [
    "DfaConfig",
    "DfaResult",
    "MiProfile",
    "default_scales",
    "dfa_alpha",
    "mutual_information",
    "mi_profile",
    "first_min_delay",
    "estimate_delay",
]


def _values(series):
    return np.asarray(getattr(series, "values", series), dtype=float)


def default_scales(length: int, smin: int = 8, points: int = 20, max_frac: int = 8) -> np.ndarray:
    """Log-spaced integer box sizes from ``smin`` to ``length // max_frac``."""
    smax = length // max_frac
    if smax < smin:
        raise ParameterError(f"series of length {length} too short for DFA scales starting at {smin}")
    return np.unique(np.round(np.geomspace(smin, smax, points)).astype(int))


@dataclass(frozen=True)
class DfaConfig:
    """Scale grid and detrending order.

    ``scales=None`` means `default_scales` of the series length.
    ``fit_range=None`` fits over the whole grid.
    """

    scales: tuple | None = None
    order: int = 1
    fit_range: tuple | None = None


@dataclass(frozen=True)
class DfaResult:
    alpha: float
    scales: np.ndarray
    fluctuations: np.ndarray
    fit_range: tuple
    intercept: float = 0.0

    def to_dict(self):
        return {
            "alpha": self.alpha,
            "scales": [int(s) for s in self.scales],
            "fluctuations": [float(f) for f in self.fluctuations],
            "fit_range": [int(self.fit_range[0]), int(self.fit_range[1])],
        }


def _box_residual_ms(profile, s, order, vander_pinv, vander):
    """Mean squared detrending residual over forward and backward boxes."""
    nbox = profile.size // s
    fwd = profile[: nbox * s].reshape(nbox, s)
    bwd = profile[profile.size - nbox * s:].reshape(nbox, s)
    boxes = np.vstack([fwd, bwd])
    coef = boxes @ vander_pinv.T
    resid = boxes - coef @ vander.T
    return np.mean(resid**2)


def dfa_alpha(series, config: DfaConfig | None = None) -> DfaResult:
    """DFA scaling exponent of a series.

    The mean-subtracted series is integrated into a profile, cut into
    non-overlapping boxes of size ``s`` from both ends, and each box is
    detrended by a least-squares polynomial of ``config.order``. ``F(s)`` is
    the root mean square residual over all boxes; alpha is the least squares
    slope of ``log F`` against ``log s`` over the fit range.

    Raises
    ------
    ParameterError
        If the largest scale exceeds a quarter of the series length, or the
        order is below one.
    DegenerateInputError
        For a zero-variance series.
    """
    config = config or DfaConfig()
    x = _values(series)
    n = x.size
    if config.order < 1:
        raise ParameterError(f"detrend order must be >= 1, got {config.order}")
    scales = default_scales(n) if config.scales is None else np.asarray(config.scales, dtype=int)
    if scales.ndim != 1 or scales.size < 2 or np.any(np.diff(scales) <= 0):
        raise ParameterError("DFA scales must be a strictly increasing sequence of at least 2 sizes")
    if scales[0] <= config.order + 1:
        raise ParameterError(f"smallest scale {scales[0]} too small for order {config.order}")
    if n < 4 * scales[-1]:
        raise ParameterError(f"series length {n} is shorter than 4 x largest scale {scales[-1]}")
    xc = x - x.mean()
    if np.all(xc == 0) or np.std(x) <= 1e-12 * max(1.0, np.max(np.abs(x))):
        raise DegenerateInputError("zero-variance series")

    # normalizing by the std makes alpha exactly invariant to affine maps
    profile = np.cumsum(xc / np.std(x))
    fl = np.empty(scales.size)
    for i, s in enumerate(scales):
        t = np.arange(s, dtype=float) / s
        vander = np.vander(t, config.order + 1)
        fl[i] = np.sqrt(_box_residual_ms(profile, s, config.order, np.linalg.pinv(vander), vander))
    fl = fl * np.std(x)

    if config.fit_range is None:
        fit_range = (int(scales[0]), int(scales[-1]))
    else:
        fit_range = (int(config.fit_range[0]), int(config.fit_range[1]))
        if fit_range[0] < scales[0] or fit_range[1] > scales[-1] or fit_range[0] >= fit_range[1]:
            raise ParameterError(f"fit range {fit_range} outside scale span {scales[0]}..{scales[-1]}")
    sel = (scales >= fit_range[0]) & (scales <= fit_range[1])
    if sel.sum() < 2:
        raise ParameterError("fit range covers fewer than 2 scales")
    if np.any(fl[sel] <= 0):
        raise DegenerateInputError("zero fluctuation inside the fit range")
    slope, intercept = np.polyfit(np.log(scales[sel]), np.log(fl[sel]), 1)
    return DfaResult(float(slope), scales, fl, fit_range, float(intercept))


@dataclass(frozen=True)
class MiProfile:
    lags: np.ndarray
    mi: np.ndarray
    raw_negative: tuple = ()
    degenerate: bool = False

    def __post_init__(self):
        if len(self.lags) != len(self.mi):
            raise ParameterError("lags and mi must have equal length")

    def to_dict(self):
        return {"lags": [int(k) for k in self.lags], "mi": [float(v) for v in self.mi]}


def _quantile_bins(x, bins):
    # edges depend only on the value multiset, so reversing the series
    # reproduces the same assignment
    edges = np.quantile(x, np.linspace(0, 1, bins + 1)[1:-1])
    return np.searchsorted(edges, x, side="right")


def _mi_from_codes(a, b, bins):
    joint = np.bincount(a * bins + b, minlength=bins * bins).reshape(bins, bins).astype(float)
    joint /= joint.sum()
    pa = joint.sum(axis=1)
    pb = joint.sum(axis=0)
    nz = joint > 0
    return float(np.sum(joint[nz] * np.log(joint[nz] / np.outer(pa, pb)[nz])))


def mutual_information(series, lag: int, bins: int = 32, return_flag=False):
    """Mutual information (nats) between ``x[t]`` and ``x[t+lag]``.

    Both coordinates use the same equiprobable bins, fitted to the quantiles
    of the full series. Small negative round-off is clamped to zero. A
    constant series returns 0 and, with ``return_flag``, a True degenerate
    flag.
    """
    x = _values(series)
    lag = int(lag)
    if bins < 2:
        raise ParameterError(f"bins must be >= 2, got {bins}")
    if lag < 0 or lag >= x.size - 1:
        raise ParameterError(f"lag {lag} out of range for series of length {x.size}")
    if np.all(x == x[0]):
        return (0.0, True) if return_flag else 0.0
    codes = _quantile_bins(x, bins)
    value = max(_mi_from_codes(codes[: x.size - lag], codes[lag:], bins), 0.0)
    return (value, False) if return_flag else value


def mi_profile(series, max_lag: int = 100, bins: int = 32) -> MiProfile:
    """Mutual information at lags ``1..max_lag`` (clamped to the series)."""
    x = _values(series)
    max_lag = min(int(max_lag), x.size - 2)
    if max_lag < 1:
        raise ParameterError("series too short for a mutual information profile")
    lags = np.arange(1, max_lag + 1)
    if np.all(x == x[0]):
        return MiProfile(lags, np.zeros(lags.size), degenerate=True)
    codes = _quantile_bins(x, bins)
    raw = np.array([_mi_from_codes(codes[: x.size - k], codes[k:], bins) for k in lags])
    neg = tuple(int(k) for k in lags[raw < 0])
    return MiProfile(lags, np.maximum(raw, 0.0), raw_negative=neg)


def first_min_delay(profile: MiProfile, fallback: int = 1, max_lag: int = 100, return_flag=False):
    """Smallest lag whose MI is a local minimum of the profile.

    A lag ``k`` qualifies when ``mi[k] < mi[k-1]`` and ``mi[k] <= mi[k+1]``;
    plateaus therefore resolve to their leftmost lag. If no lag up to
    ``max_lag`` qualifies, ``fallback`` is returned and the no-minimum flag is
    set.
    """
    lags = np.asarray(profile.lags)
    mi = np.asarray(profile.mi, dtype=float)
    if lags.size < 3:
        raise ParameterError("mutual information profile needs at least 3 lags")
    for i in range(1, lags.size - 1):
        if lags[i] > max_lag:
            break
        if mi[i] < mi[i - 1] and mi[i] <= mi[i + 1]:
            return (int(lags[i]), False) if return_flag else int(lags[i])
    return (int(fallback), True) if return_flag else int(fallback)


@dataclass(frozen=True)
class DelayEstimate:
    delay: int
    profile: MiProfile
    no_minimum: bool = False
    extra: dict = field(default_factory=dict)


def estimate_delay(series, max_lag: int = 100, bins: int = 32, fallback: int = 1) -> DelayEstimate:
    """First-minimum mutual-information delay with its evidence."""
    prof = mi_profile(series, max_lag=max_lag + 1, bins=bins)
    tau, flag = first_min_delay(prof, fallback=fallback, max_lag=max_lag, return_flag=True)
    return DelayEstimate(tau, prof, no_minimum=flag or prof.degenerate)
