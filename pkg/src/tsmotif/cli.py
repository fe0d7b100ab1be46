"""Command line front end: ``tsmotif analyze|sweep-fbm|sweep-mrw|sweep-scale``.

Exit codes: 0 success, 1 parameter error, 2 data error, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .census import MotifLabelMap
from .errors import DataError, ParameterError
from .harness import RunConfig, analyze_series, emit_report, run_sweep
from .netbuild import write_edge_list
from .series import load_column_series
from .superfamily import EXTENDED_TABLE, PatternTable

EXIT_OK, EXIT_PARAM, EXIT_DATA, EXIT_INTERNAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARAM, f"{self.prog}: error: {message}\n")


def parse_grid(text: str, integer=False) -> tuple:
    """``"0.1,0.2,0.5"`` or inclusive ``"start:stop:step"``."""
    conv = int if integer else float
    try:
        if ":" in text:
            parts = [conv(p) for p in text.split(":")]
            if len(parts) == 2:
                parts.append(1 if integer else 0.05)
            start, stop, step = parts
            if step <= 0:
                raise ParameterError("grid step must be positive")
            out = []
            k = 0
            while True:
                v = start + k * step
                if v > stop + (0 if integer else 1e-9):
                    break
                out.append(v if integer else round(v, 10))
                k += 1
            return tuple(out)
        return tuple(conv(p) for p in text.split(",") if p.strip())
    except ValueError as exc:
        raise ParameterError(f"bad grid {text!r}: {exc}") from None


def _load_json(path, what):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ParameterError(f"{what} file {path} not found") from None
    except json.JSONDecodeError as exc:
        raise ParameterError(f"{what} file {path}: {exc}") from None


def build_parser():
    p = _Parser(prog="tsmotif", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="mode", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--config", help="JSON file whose keys mirror RunConfig fields; flags override it")
        sp.add_argument("--dimension", type=int)
        sp.add_argument("--max-delay", type=int, dest="max_delay")
        sp.add_argument("--delay", type=int, dest="fixed_delay", help="skip mutual information, use this delay")
        sp.add_argument("--mi-bins", type=int, dest="mi_bins")
        sp.add_argument("--dfa-on", choices=["increments", "values"], dest="dfa_on")
        sp.add_argument("--order", choices=["temporal", "shuffle"], dest="build_order")
        sp.add_argument("--metric", choices=["euclidean", "chebyshev", "manhattan"])
        sp.add_argument("--seed", type=int, dest="master_seed")
        sp.add_argument("--label-map", dest="label_map", help="JSON file mapping A..F to shape names")
        sp.add_argument("--table", help="JSON pattern table file, or 'extended'")
        sp.add_argument("--out", dest="output_dir")
        sp.add_argument("--formats", help="comma list from json,csv")

    def sweep(sp):
        sp.add_argument("--grid")
        sp.add_argument("--realizations", type=int)
        sp.add_argument("--length", type=int)
        sp.add_argument("--workers", type=int)

    def file_input(sp):
        sp.add_argument("input_path", metavar="FILE")
        sp.add_argument("--column", type=int)
        sp.add_argument("--header-rows", type=int, dest="header_rows")
        sp.add_argument("--log", action="store_true", default=None, dest="log_transform")

    a = sub.add_parser("analyze", help="analyze one series from a text file")
    file_input(a)
    common(a)
    a.add_argument("--edges", help="write the network edge list to this path")

    for name in ("sweep-fbm", "sweep-mrw"):
        sp = sub.add_parser(name, help=f"Hurst sweep over synthetic {name[6:].upper()} series")
        common(sp)
        sweep(sp)
        if name == "sweep-mrw":
            sp.add_argument("--intermittency", type=float)
            sp.add_argument("--correlation-length", type=int, dest="correlation_length")

    sc = sub.add_parser("sweep-scale", help="decimation sweep over a file")
    file_input(sc)
    common(sc)
    sweep(sc)
    return p


def config_from_args(args) -> RunConfig:
    base = {}
    if getattr(args, "config", None):
        base = _load_json(args.config, "config")
    fields = RunConfig.__dataclass_fields__
    for k, v in vars(args).items():
        if k in fields and v is not None and k not in ("label_map", "table", "formats"):
            base[k] = v
    base["mode"] = args.mode
    if getattr(args, "grid", None):
        key = "dt_grid" if args.mode == "sweep-scale" else "hurst_grid"
        base[key] = parse_grid(args.grid, integer=args.mode == "sweep-scale")
    if args.formats:
        base["formats"] = tuple(f.strip() for f in args.formats.split(","))
    if args.label_map:
        base["label_map"] = _load_json(args.label_map, "label map")
    if args.table:
        base["table"] = EXTENDED_TABLE.to_dict() if args.table == "extended" else _load_json(args.table, "table")
    try:
        if isinstance(base.get("label_map"), dict):
            base["label_map"] = MotifLabelMap.from_dict(base["label_map"])
        if isinstance(base.get("table"), dict):
            base["table"] = PatternTable.from_dict(base["table"])
    except (KeyError, TypeError) as exc:
        raise ParameterError(f"malformed label map or table: {exc}") from None
    return RunConfig.from_dict(base)


def _analyze(config: RunConfig, args):
    series = load_column_series(config.input_path, config.column, config.header_rows, log=config.log_transform)
    res, graph = analyze_series(series, config, graph_seed=config.master_seed, keep_graph=True)
    out = res.to_dict()
    out["dfa"] = res.dfa.to_dict()
    if res.delay.profile is not None:
        out["mutual_information"] = res.delay.profile.to_dict()
    out["label_map"] = config.label_map.to_dict()
    out["pattern_table"] = config.table.to_dict()
    out["skipped_rows"] = [list(t) for t in series.meta.get("skipped", [])]
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if config.output_dir:
        d = Path(config.output_dir)
        d.mkdir(parents=True, exist_ok=True)
        (d / "analysis.json").write_text(text)
    if args.edges:
        write_edge_list(graph, args.edges)
    sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
        if config.mode == "analyze":
            _analyze(config, args)
        else:
            report = run_sweep(config)
            if config.output_dir:
                for f in emit_report(report, config.output_dir, config.formats):
                    print(f)
            else:
                sys.stdout.write(report.to_json())
    except ParameterError as exc:
        print(f"tsmotif: parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except DataError as exc:
        print(f"tsmotif: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # noqa: BLE001
        print(f"tsmotif: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
