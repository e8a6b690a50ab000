"""Command-line front end: ``tsnet generate | analyze | compare``.

Exit status: 0 success, 1 usage error, 2 input error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Sequence

from .cliques import write_cliques
from .errors import InputError, InvariantViolation, TSNetError
from .report import (
    AnalysisReport,
    analyze_graph,
    comparison_csv,
    comparison_text,
    run_pipeline,
)
from .series import (
    PER_BLOCK,
    SEGMENT_MODES,
    LogisticParams,
    SegmentationPlan,
    load_series,
    logistic_series,
    save_series,
    segment_series,
)
from .visibility import METHODS, QUADRATIC, read_edge_list, write_dot, write_edge_list

log = logging.getLogger("simplicial_tsnet")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class StageError(TSNetError):
    """Wraps a pipeline failure with the name of the stage that raised it."""

    def __init__(self, stage: str, cause: TSNetError) -> None:
        super().__init__(f"[{stage}] {cause}")
        self.stage = stage
        self.cause = cause


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except TSNetError as exc:
        raise StageError(name, exc) from exc


# --------------------------------------------------------------------------- generate


def cmd_generate(args: argparse.Namespace) -> int:
    params = LogisticParams(mu=args.mu, x0=args.x0, n=args.n, transient=args.transient)
    ts = _stage("generate", logistic_series, params)
    meta = {"generator": "logistic", **vars(params)}
    if args.out is None:
        for v in ts.values.tolist():
            sys.stdout.write(repr(v) + "\n")
        return EXIT_OK
    save_series(ts, args.out)
    Path(str(args.out) + ".meta.json").write_text(json.dumps(meta, indent=2) + "\n", encoding="utf-8")
    log.info("wrote %d samples to %s", len(ts), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------- analyze


def _safe(label: str | None) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", label or "segment")


def _analyze_segment(job: tuple) -> AnalysisReport:
    ts, method, per_node, source, params = job
    return _stage("analyze", run_pipeline, ts, method, per_node, source, params).report


def _load_params(path: Path) -> dict:
    sidecar = Path(str(path) + ".meta.json")
    if sidecar.is_file():
        return json.loads(sidecar.read_text(encoding="utf-8"))
    return {}


def cmd_analyze(args: argparse.Namespace) -> int:
    segmented = args.block_length is not None
    if segmented and args.graph_input:
        raise InputError("--graph-input cannot be combined with segmentation")
    if segmented and (args.edges or args.cliques or args.dot):
        raise InputError("--edges/--cliques/--dot are only available for a single analysis")

    if args.graph_input:
        g = _stage("load", read_edge_list, args.graph_input, args.nodes)
        desc = {"source": str(args.graph_input), "label": args.graph_input.stem, "length": g.node_count}
        result = _stage("analyze", analyze_graph, g, desc, args.per_node)
        return _emit_single(args, result)

    ts = _stage("load", load_series, args.input, args.format, args.column, args.header)
    params = _load_params(args.input)
    if not segmented:
        result = _stage("analyze", run_pipeline, ts, args.method, args.per_node, str(args.input), params)
        return _emit_single(args, result)

    labels = [s.strip() for s in args.labels.split(",") if s.strip()] if args.labels else ["block"]
    plan = _stage("segment", SegmentationPlan, args.block_length, labels, args.mode, args.truncate)
    segments = _stage("segment", segment_series, ts, plan)
    jobs = [(s, args.method, args.per_node, str(args.input), params) for s in segments]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_analyze_segment, jobs))
    else:
        reports = [_analyze_segment(j) for j in jobs]

    out_dir = args.out_dir or Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = args.input.stem
    for k, (seg, rep) in enumerate(zip(segments, reports)):
        name = f"{stem}_{_safe(seg.label)}.json" if args.mode != PER_BLOCK else f"{stem}_{k:03d}_{_safe(seg.label)}.json"
        rep.save(out_dir / name)
    log.info("wrote %d reports to %s", len(reports), out_dir)
    return EXIT_OK


def _emit_single(args: argparse.Namespace, result) -> int:
    if args.edges:
        write_edge_list(result.graph, args.edges)
    if args.dot:
        write_dot(result.graph, args.dot)
    if args.cliques:
        write_cliques(result.complex, args.cliques)
    if args.report:
        result.report.save(args.report)
    else:
        sys.stdout.write(result.report.to_json())
    return EXIT_OK


# --------------------------------------------------------------------------- compare


def cmd_compare(args: argparse.Namespace) -> int:
    reports = [_stage("load", AnalysisReport.load, p) for p in args.reports]
    text = _stage("compare", comparison_text, reports, args.deltas)
    if args.csv:
        args.csv.write_text(comparison_csv(reports, args.deltas), encoding="utf-8")
    if args.out:
        args.out.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# --------------------------------------------------------------------------- entry


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tsnet", description="Simplicial characterisation of time-series visibility networks.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a logistic-map series as CSV")
    g.add_argument("--mu", type=float, required=True)
    g.add_argument("--x0", type=float, default=0.4)
    g.add_argument("--n", type=int, default=10000)
    g.add_argument("--transient", type=int, default=1000)
    g.add_argument("--out", type=Path, help="CSV path (stdout if omitted); parameters go to OUT.meta.json")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="visibility graph -> cliques -> characterisers")
    src = a.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", type=Path, help="series file (CSV or JSON)")
    src.add_argument("--graph-input", type=Path, help="edge list written by --edges; skips graph construction")
    a.add_argument("--nodes", type=int, help="node count for --graph-input (default: max index + 1)")
    a.add_argument("--format", choices=("csv", "json"))
    a.add_argument("--column", default="0", help="CSV column index or header name")
    a.add_argument("--header", action="store_true", help="CSV has a header row")
    a.add_argument("--method", choices=METHODS, default=QUADRATIC)
    a.add_argument("--report", type=Path, help="report path (stdout if omitted)")
    a.add_argument("--edges", type=Path)
    a.add_argument("--cliques", type=Path)
    a.add_argument("--dot", type=Path)
    a.add_argument("--per-node", action="store_true", help="include per-node dimensions in the report")
    a.add_argument("--block-length", type=int)
    a.add_argument("--labels", help="comma-separated labels, applied cyclically to blocks")
    a.add_argument("--mode", choices=SEGMENT_MODES, default=PER_BLOCK)
    a.add_argument("--truncate", action="store_true", help="drop a trailing partial block")
    a.add_argument("--out-dir", type=Path, help="directory for segment reports (default: cwd)")
    a.add_argument("--jobs", type=int, default=1, help="worker processes for segment analysis")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("compare", help="side-by-side table of two or more reports")
    c.add_argument("reports", nargs="+", type=Path)
    c.add_argument("--csv", type=Path, help="also write the table as CSV")
    c.add_argument("--deltas", action="store_true", help="append rows of differences from the first report")
    c.add_argument("--out", type=Path, help="text table path (stdout if omitted)")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.command == "compare" and len(args.reports) < 2:
        parser.error("compare needs at least two reports")
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"tsnet: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except StageError as exc:
        print(f"tsnet: {exc}", file=sys.stderr)
        return EXIT_INVARIANT if isinstance(exc.cause, InvariantViolation) else EXIT_INPUT
    except (InputError, OSError) as exc:
        print(f"tsnet: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
