"""Alpha-keyed superfamily table and aggregation of rank patterns."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .census import DEFAULT_LABEL_MAP, LABELS, MotifCounts, MotifLabelMap, rank_pattern, validate_pattern
from .errors import ParameterError

__all__ = [
    "PatternTable",
    "DEFAULT_TABLE",
    "EXTENDED_TABLE",
    "SuperfamilyVerdict",
    "Aggregate",
    "pattern_for_alpha",
    "aggregate_patterns",
    "relabel",
    "verdict",
]


@dataclass(frozen=True)
class PatternTable:
    """Rows of ``(upper_bound, pattern)``; a row applies to alphas below its
    bound and at or above the previous one. The last bound must be ``inf``.

    Patterns are written with `label_map`; `relabel` converts between maps.
    """

    rows: tuple
    label_map: MotifLabelMap = DEFAULT_LABEL_MAP

    def __post_init__(self):
        rows = tuple((float(b), validate_pattern(p)) for b, p in self.rows)
        if not rows:
            raise ParameterError("pattern table needs at least one row")
        bounds = [b for b, _ in rows]
        if any(b2 <= b1 for b1, b2 in zip(bounds, bounds[1:])):
            raise ParameterError("pattern table bounds must be strictly increasing")
        if not math.isinf(bounds[-1]):
            raise ParameterError("last pattern table row must be unbounded")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_dict(cls, d):
        lm = MotifLabelMap.from_dict(d["label_map"]) if "label_map" in d else DEFAULT_LABEL_MAP
        rows = [(float("inf") if r["upper"] is None else r["upper"], r["pattern"]) for r in d["rows"]]
        return cls(tuple(rows), lm)

    def to_dict(self):
        return {
            "rows": [{"upper": None if math.isinf(b) else b, "pattern": p} for b, p in self.rows],
            "label_map": self.label_map.to_dict(),
        }

    def with_label_map(self, label_map: MotifLabelMap) -> PatternTable:
        return PatternTable(tuple((b, relabel(p, self.label_map, label_map)) for b, p in self.rows), label_map)


# switch points sit halfway between the last and first grid values of
# adjacent regimes (0.20|0.25, 0.30|0.35, 0.40|0.45)
DEFAULT_TABLE = PatternTable(
    (
        (0.225, "ABCDEF"),
        (0.325, "ACBDFE"),
        (0.425, "ACDBFE"),
        (math.inf, "ACDFBE"),
    )
)

# Adds the marginal ABCDFE regime reported only for resampled turbulence
# between ABCDEF and ACBDFE; its alpha range is not pinned down, so it gets
# a narrow slot just below the ACBDFE switch.
EXTENDED_TABLE = PatternTable(
    (
        (0.2, "ABCDEF"),
        (0.225, "ABCDFE"),
        (0.325, "ACBDFE"),
        (0.425, "ACDBFE"),
        (math.inf, "ACDFBE"),
    )
)


def relabel(pattern: str, src: MotifLabelMap, dst: MotifLabelMap) -> str:
    """Rewrite a pattern written in map ``src`` using the letters of ``dst``."""
    return "".join(dst.label(src.shape(c)) for c in validate_pattern(pattern))


def pattern_for_alpha(alpha: float, table: PatternTable = DEFAULT_TABLE) -> str:
    if not math.isfinite(alpha):
        raise ParameterError(f"alpha must be finite, got {alpha}")
    for bound, pattern in table.rows:
        if alpha < bound:
            return pattern
    raise AssertionError("unreachable: last row is unbounded")


@dataclass(frozen=True)
class Aggregate:
    modal_pattern: str
    mean_pattern: str
    dispersion: float
    mean_frequencies: np.ndarray
    count: int

    @property
    def consistent(self):
        return self.modal_pattern == self.mean_pattern


def aggregate_patterns(patterns, counts, label_map: MotifLabelMap = DEFAULT_LABEL_MAP) -> Aggregate:
    """Combine per-realization results.

    Returns the modal pattern (ties go to the alphabetically first pattern),
    the pattern of the mean relative frequencies, and the fraction of
    realizations that match the modal pattern.
    """
    patterns = list(patterns)
    counts = list(counts)
    if not patterns:
        raise ParameterError("cannot aggregate an empty list of realizations")
    if len(patterns) != len(counts):
        raise ParameterError("patterns and counts must have equal length")
    for p in patterns:
        validate_pattern(p)
    tally = Counter(patterns)
    top = max(tally.values())
    modal = min(p for p, k in tally.items() if k == top)
    freqs = np.array([c.frequencies() if isinstance(c, MotifCounts) else np.asarray(c, float) for c in counts])
    mean = freqs.mean(axis=0)
    return Aggregate(modal, rank_pattern(mean, label_map), top / len(patterns), mean, len(patterns))


@dataclass(frozen=True)
class SuperfamilyVerdict:
    measured_alpha: float
    empirical_pattern: str
    predicted_pattern: str
    realization_count: int = 1

    @property
    def agreement(self):
        return self.empirical_pattern == self.predicted_pattern

    def to_dict(self):
        return {
            "measured_alpha": self.measured_alpha,
            "empirical_pattern": self.empirical_pattern,
            "predicted_pattern": self.predicted_pattern,
            "agreement": self.agreement,
            "realization_count": self.realization_count,
        }


def verdict(alpha, empirical_pattern, table=DEFAULT_TABLE, label_map=DEFAULT_LABEL_MAP, realization_count=1):
    """Compare an empirical pattern (in ``label_map``) with the table's
    prediction for ``alpha``, both expressed in ``label_map``."""
    predicted = relabel(pattern_for_alpha(alpha, table), table.label_map, label_map)
    return SuperfamilyVerdict(float(alpha), validate_pattern(empirical_pattern), predicted, int(realization_count))
