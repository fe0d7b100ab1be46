"""End-to-end pipeline: single-series analysis, parameter sweeps, reports."""

from __future__ import annotations

import contextlib
import csv
import io
import json
import logging
import math
import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from . import __version__
from .census import DEFAULT_LABEL_MAP, LABELS, MotifCounts, MotifLabelMap, motif_census, rank_pattern
from .embed import EmbeddingConfig, embed_series
from .errors import DataError, DegenerateInputError, ParameterError, TsMotifError
from .netbuild import build_nn_graph
from .rng import stream_seed
from .scaling import DelayEstimate, DfaConfig, DfaResult, dfa_alpha, estimate_delay
from .series import SubseriesSpec, TimeSeries, load_column_series, resample, sample_subseries
from .superfamily import DEFAULT_TABLE, PatternTable, SuperfamilyVerdict, aggregate_patterns, verdict
from .synth import DEFAULT_INTERMITTENCY, FbmSpec, MrwSpec, generate_fbm, generate_mrw

__all__ = [
    "MODES",
    "RunConfig",
    "AnalysisResult",
    "CellRecord",
    "ExperimentReport",
    "analyze_series",
    "run_sweep",
    "emit_report",
]

log = logging.getLogger(__name__)

MODES = ("analyze", "sweep-fbm", "sweep-mrw", "sweep-scale")
DEFAULT_HURST_GRID = tuple(round(0.05 * k, 2) for k in range(1, 20))
DEFAULT_DT_GRID = tuple(range(1, 201))


@dataclass(frozen=True)
class RunConfig:
    """Everything a run depends on. Echoed verbatim into every report.

    ``max_delay=None`` searches the mutual-information minimum up to
    ``length // (2 * dimension)`` lags, which keeps at least half the samples
    as network nodes. ``dfa_on="increments"`` measures alpha on the first
    differences of the (walk-like) input, ``"values"`` on the input itself.
    """

    mode: str = "sweep-fbm"
    hurst_grid: tuple = DEFAULT_HURST_GRID
    dt_grid: tuple = DEFAULT_DT_GRID
    realizations: int = 10
    length: int = 10_000
    dimension: int = 10
    master_seed: int = 0
    intermittency: float = DEFAULT_INTERMITTENCY
    correlation_length: int | None = None
    input_path: str | None = None
    column: int = 0
    header_rows: int = 0
    log_transform: bool = False
    max_delay: int | None = None
    mi_bins: int = 32
    delay_fallback: int = 1
    fixed_delay: int | None = None
    dfa_on: str = "increments"
    dfa_order: int = 1
    build_order: str = "temporal"
    metric: str = "euclidean"
    label_map: MotifLabelMap = DEFAULT_LABEL_MAP
    table: PatternTable = DEFAULT_TABLE
    output_dir: str | None = None
    formats: tuple = ("json", "csv")
    workers: int = 1

    def __post_init__(self):
        if self.mode not in MODES:
            raise ParameterError(f"unknown mode {self.mode!r}; expected one of {MODES}")
        if self.realizations < 1:
            raise ParameterError(f"realizations must be >= 1, got {self.realizations}")
        if self.length < 2:
            raise ParameterError(f"length must be >= 2, got {self.length}")
        if self.dimension < 1:
            raise ParameterError(f"dimension must be >= 1, got {self.dimension}")
        if self.mode in ("sweep-fbm", "sweep-mrw"):
            if not self.hurst_grid:
                raise ParameterError("hurst grid is empty")
            for h in self.hurst_grid:
                if not 0 < h < 1:
                    raise ParameterError(f"hurst grid value {h} outside (0, 1)")
        if self.mode == "sweep-scale":
            if not self.dt_grid:
                raise ParameterError("dt grid is empty")
            if any(int(dt) < 1 for dt in self.dt_grid):
                raise ParameterError("dt grid values must be >= 1")
        if self.mode == "sweep-scale" and self.input_path is None:
            raise ParameterError("sweep-scale needs an input path")
        if self.dfa_on not in ("increments", "values"):
            raise ParameterError(f"dfa_on must be 'increments' or 'values', got {self.dfa_on!r}")
        if self.build_order not in ("temporal", "shuffle"):
            raise ParameterError(f"unknown build order {self.build_order!r}")
        if self.workers < 1:
            raise ParameterError("workers must be >= 1")
        unknown = set(self.formats) - {"json", "csv"}
        if unknown:
            raise ParameterError(f"unknown output formats {sorted(unknown)}")

    def delay_limit(self, length=None) -> int:
        if self.max_delay is not None:
            return int(self.max_delay)
        return max(2, int(length or self.length) // (2 * self.dimension))

    def to_dict(self, execution=False):
        """Plain dict; ``workers`` is left out unless ``execution`` since it
        never changes results."""
        d = {}
        for k, v in asdict(self).items():
            if k == "workers" and not execution:
                continue
            if isinstance(v, tuple):
                v = list(v)
            d[k] = v
        d["label_map"] = self.label_map.to_dict()
        d["table"] = self.table.to_dict()
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        if "label_map" in d and isinstance(d["label_map"], dict):
            d["label_map"] = MotifLabelMap.from_dict(d["label_map"])
        if "table" in d and isinstance(d["table"], dict):
            d["table"] = PatternTable.from_dict(d["table"])
        for k in ("hurst_grid", "dt_grid", "formats"):
            if k in d and d[k] is not None:
                d[k] = tuple(d[k])
        known = cls.__dataclass_fields__
        extra = set(d) - set(known)
        if extra:
            raise ParameterError(f"unknown config keys {sorted(extra)}")
        return cls(**d)


@dataclass(frozen=True)
class AnalysisResult:
    dfa: DfaResult
    delay: DelayEstimate
    node_count: int
    edge_count: int
    exhausted: int
    counts: MotifCounts
    pattern: str
    verdict: SuperfamilyVerdict
    source_length: int

    def to_dict(self):
        return {
            "alpha": self.dfa.alpha,
            "delay": self.delay.delay,
            "delay_no_minimum": self.delay.no_minimum,
            "source_length": self.source_length,
            "node_count": self.node_count,
            "edge_count": self.edge_count,
            "exhausted_turns": self.exhausted,
            "counts": self.counts.to_dict(),
            "pattern": self.pattern,
            "predicted_pattern": self.verdict.predicted_pattern,
            "agreement": self.verdict.agreement,
        }


@contextlib.contextmanager
def _stage(name):
    try:
        yield
    except TsMotifError as exc:
        if getattr(exc, "stage", None) is None:
            exc.stage = name
            exc.args = (f"[{name}] {exc.args[0] if exc.args else exc}",) + exc.args[1:]
        raise


def analyze_series(series, config: RunConfig = RunConfig(), graph_seed: int = 0, keep_graph=False):
    """Run one series through delay estimation, embedding, network
    construction, motif census and superfamily classification.

    Errors keep their type and gain a ``stage`` attribute (``"dfa"``,
    ``"delay"``, ``"embed"``, ``"network"``, ``"census"``).
    """
    if not isinstance(series, TimeSeries):
        series = TimeSeries(np.asarray(series, dtype=float))
    x = series.values
    with _stage("dfa"):
        target = np.diff(x) if config.dfa_on == "increments" else x
        dfa = dfa_alpha(target, DfaConfig(order=config.dfa_order))
    with _stage("delay"):
        if config.fixed_delay is not None:
            delay = DelayEstimate(int(config.fixed_delay), None)
        else:
            delay = estimate_delay(
                x,
                max_lag=config.delay_limit(x.size),
                bins=config.mi_bins,
                fallback=config.delay_fallback,
            )
    with _stage("embed"):
        emb = embed_series(x, EmbeddingConfig(config.dimension, delay.delay))
    with _stage("network"):
        graph = build_nn_graph(emb, order=config.build_order, metric=config.metric, seed=graph_seed)
    with _stage("census"):
        counts = motif_census(graph)
        if counts.total == 0:
            raise DegenerateInputError("network has no connected 4-node subgraphs")
    pattern = rank_pattern(counts, config.label_map)
    v = verdict(dfa.alpha, pattern, config.table, config.label_map)
    res = AnalysisResult(dfa, delay, graph.node_count, graph.edge_count, graph.exhausted, counts, pattern, v, x.size)
    return (res, graph) if keep_graph else res


@dataclass(frozen=True)
class CellRecord:
    cell_index: int
    cell_value: float
    effective_length: int
    realization_count: int
    failures: tuple
    mean_alpha: float
    mean_delay: float
    mean_frequencies: dict
    modal_pattern: str
    mean_pattern: str
    dispersion: float
    predicted_pattern: str
    realizations: tuple

    def to_dict(self):
        d = asdict(self)
        d["failures"] = list(self.failures)
        d["realizations"] = list(self.realizations)
        return d


@dataclass(frozen=True)
class ExperimentReport:
    config: dict
    cell_name: str
    records: tuple
    version: str = __version__

    def to_dict(self):
        return {
            "software": {"name": "tsmotif", "version": self.version},
            "config": self.config,
            "cell_name": self.cell_name,
            "label_map": self.config["label_map"],
            "pattern_table": self.config["table"],
            "records": [r.to_dict() for r in self.records],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"


def _cell_series(config: RunConfig, cell_index, value, source):
    """Yield ``(realization_index, series, graph_seed)`` for one cell."""
    seeds = [stream_seed(config.master_seed, cell_index, r) for r in range(config.realizations)]
    if config.mode == "sweep-fbm":
        return [(r, generate_fbm(FbmSpec(value, config.length, s)), s) for r, s in enumerate(seeds)]
    if config.mode == "sweep-mrw":
        specs = [
            MrwSpec(value, config.length, config.intermittency, config.correlation_length, seed=s) for s in seeds
        ]
        return [(r, generate_mrw(sp), sp.seed) for r, sp in enumerate(specs)]
    if config.mode == "sweep-scale":
        dec = resample(source, int(value))
        window = min(config.length, len(dec))
        wins = sample_subseries(dec, SubseriesSpec(window, config.realizations, stream_seed(config.master_seed, cell_index)))
        return [(r, w, s) for (r, w), s in zip(enumerate(wins), seeds)]
    raise ParameterError(f"mode {config.mode!r} is not a sweep")


def _run_one(args):
    config, cell_index, r, series, seed = args
    try:
        res = analyze_series(series, config, graph_seed=seed)
    except TsMotifError as exc:
        return cell_index, r, None, f"{type(exc).__name__}: {exc}"
    d = res.to_dict()
    d["realization"] = r
    d["seed"] = seed
    if "offset" in series.meta:
        d["offset"] = series.meta["offset"]
    return cell_index, r, (d, res.counts), None


def run_sweep(config: RunConfig) -> ExperimentReport:
    """Analyze ``config.realizations`` series per grid cell and aggregate.

    Realization ``r`` of cell ``i`` draws from ``stream_seed(master_seed, i, r)``,
    so results do not depend on execution order or on ``workers``.
    """
    if config.mode == "analyze":
        raise ParameterError("run_sweep needs a sweep mode")
    source = None
    if config.mode == "sweep-scale":
        source = load_column_series(config.input_path, config.column, config.header_rows, log=config.log_transform)
        grid = tuple(int(v) for v in config.dt_grid)
        cell_name = "dt"
    else:
        grid = tuple(float(v) for v in config.hurst_grid)
        cell_name = "hurst"

    jobs = []
    lengths = {}
    for i, value in enumerate(grid):
        items = _cell_series(config, i, value, source)
        lengths[i] = len(items[0][1])
        jobs.extend((config, i, r, s, seed) for r, s, seed in items)

    if config.workers > 1:
        # fork is unsafe once numba's threading layer is live
        with ProcessPoolExecutor(config.workers, mp_context=multiprocessing.get_context("spawn")) as pool:
            results = list(pool.map(_run_one, jobs, chunksize=1))
    else:
        results = [_run_one(j) for j in jobs]

    by_cell = {i: [] for i in range(len(grid))}
    for cell_index, r, payload, err in results:
        by_cell[cell_index].append((r, payload, err))

    records = []
    for i, value in enumerate(grid):
        items = sorted(by_cell[i], key=lambda t: t[0])
        ok = [p for _, p, e in items if e is None]
        failures = tuple({"realization": r, "error": e} for r, _, e in items if e is not None)
        if not ok:
            raise DataError(f"{cell_name}={value} (cell {i}): all {len(items)} realizations failed; first: {failures[0]['error']}")
        for f in failures:
            log.warning("%s=%s realization %d failed: %s", cell_name, value, f["realization"], f["error"])
        dicts = [d for d, _ in ok]
        agg = aggregate_patterns([d["pattern"] for d in dicts], [c for _, c in ok], config.label_map)
        mean_alpha = float(np.mean([d["alpha"] for d in dicts]))
        freqs = {c: float(agg.mean_frequencies[int(config.label_map.shape(c))]) for c in LABELS}
        pred = verdict(mean_alpha, agg.modal_pattern, config.table, config.label_map).predicted_pattern
        if not agg.consistent:
            log.info("%s=%s: modal %s differs from mean-frequency %s", cell_name, value, agg.modal_pattern, agg.mean_pattern)
        records.append(
            CellRecord(
                cell_index=i,
                cell_value=value,
                effective_length=lengths[i],
                realization_count=len(ok),
                failures=failures,
                mean_alpha=mean_alpha,
                mean_delay=float(np.mean([d["delay"] for d in dicts])),
                mean_frequencies=freqs,
                modal_pattern=agg.modal_pattern,
                mean_pattern=agg.mean_pattern,
                dispersion=agg.dispersion,
                predicted_pattern=pred,
                realizations=tuple(dicts),
            )
        )
    return ExperimentReport(config.to_dict(), cell_name, tuple(records))


def _fmt(x):
    return f"{x:.10f}"


def frequency_table(report: ExperimentReport) -> str:
    """One row per (cell, motif label)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    lm = MotifLabelMap.from_dict(report.config["label_map"])
    w.writerow(["cell_index", report.cell_name, "label", "shape", "mean_frequency", "mean_alpha"])
    for r in report.records:
        for c in LABELS:
            w.writerow([r.cell_index, r.cell_value, c, lm.shape(c).name.lower(), _fmt(r.mean_frequencies[c]), _fmt(r.mean_alpha)])
    return buf.getvalue()


def pattern_table(report: ExperimentReport) -> str:
    """One row per cell with its patterns and alpha."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["cell_index", report.cell_name, "effective_length", "realizations", "mean_alpha", "modal_pattern",
         "mean_pattern", "dispersion", "predicted_pattern"]
    )
    for r in report.records:
        w.writerow(
            [r.cell_index, r.cell_value, r.effective_length, r.realization_count, _fmt(r.mean_alpha),
             r.modal_pattern, r.mean_pattern, _fmt(r.dispersion), r.predicted_pattern]
        )
    return buf.getvalue()


def emit_report(report: ExperimentReport, output_dir, formats=("json", "csv")) -> list[Path]:
    """Write ``report.json``, ``frequencies.csv`` and ``patterns.csv``.

    Output is a pure function of the report: keys sorted, fixed decimal
    formatting, cells in grid order.
    """
    out = Path(output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise DataError(f"{out}: cannot create output directory: {exc}") from None
    files = []
    payloads = []
    if "json" in formats:
        payloads.append(("report.json", report.to_json()))
    if "csv" in formats:
        payloads.append(("frequencies.csv", frequency_table(report)))
        payloads.append(("patterns.csv", pattern_table(report)))
    for name, text in payloads:
        p = out / name
        try:
            p.write_text(text)
        except OSError as exc:
            raise DataError(f"{p}: {exc}") from None
        files.append(p)
    return files
