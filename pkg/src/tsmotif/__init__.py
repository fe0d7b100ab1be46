"""Motif rank patterns of nearest-neighbor networks built from time series."""

__version__ = "0.1.0"

from .census import (  # noqa: E402
    DEFAULT_LABEL_MAP,
    MotifCounts,
    MotifLabelMap,
    Shape,
    classify_quad,
    motif_census,
    rank_pattern,
)
from .embed import EmbeddedSeries, EmbeddingConfig, embed_series  # noqa: E402
from .errors import DataError, DegenerateInputError, ParameterError, TsMotifError  # noqa: E402
from .netbuild import NNGraph, build_nn_graph, write_edge_list  # noqa: E402
from .scaling import (  # noqa: E402
    DfaConfig,
    DfaResult,
    MiProfile,
    dfa_alpha,
    estimate_delay,
    first_min_delay,
    mi_profile,
    mutual_information,
)
from .series import SubseriesSpec, TimeSeries, load_column_series, resample, sample_subseries, write_series  # noqa: E402
from .superfamily import DEFAULT_TABLE, PatternTable, aggregate_patterns, pattern_for_alpha  # noqa: E402
from .synth import FbmSpec, MrwSpec, generate_fbm, generate_fgn, generate_mrw  # noqa: E402
from .harness import RunConfig, analyze_series, emit_report, run_sweep  # noqa: E402
