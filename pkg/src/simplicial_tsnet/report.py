"""Analysis reports: the end-to-end pipeline, JSON serialization and side-by-side comparison.

Report JSON layout (``schema_version`` 1)::

    {
      "schema_version": 1,
      "input":   {"source": ..., "label": ..., "length": ..., "start_index": ...,
                  "method": str, "parameters": {...}, "blocks": [[offset, start], ...]?},
      "graph":   {"nodes": int, "edges": int},
      "q_max": int, "simplices": int,
      "Q": [int], "Ns": [int], "f": [int], "Qhat": [real], "S": [real],
      "max_dim": int,
      "node_dims": [int] | null,
      "timing_ms": {"visibility": real, "cliques": real, "q_analysis": real}
    }

Reals carry 10 significant digits. ``timing_ms`` is the only
non-deterministic field.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .cliques import CliqueComplex, maximal_cliques
from .errors import ParseError, SchemaMismatchError
from .q_analysis import analyze
from .series import TimeSeries
from .visibility import QUADRATIC, VisibilityGraph, build_visibility_graph

SCHEMA_VERSION = 1
SIGNIFICANT_DIGITS = 10


def round_sig(x: float, digits: int = SIGNIFICANT_DIGITS) -> float:
    return float(f"{x:.{digits}g}")


@dataclass
class AnalysisReport:
    input: dict[str, Any]
    graph: dict[str, Any]
    q_max: int
    simplices: int
    Q: list[int]
    Ns: list[int]
    f: list[int]
    Qhat: list[float]
    S: list[float]
    max_dim: int
    node_dims: list[int] | None = None
    timing_ms: dict[str, float] = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        return {"schema_version": d.pop("schema_version"), **d}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def canonical(self, include_input: bool = True) -> dict[str, Any]:
        """Report content with the timing (and optionally input) fields stripped."""
        d = self.to_dict()
        d.pop("timing_ms")
        if not include_input:
            d.pop("input")
        return d

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "AnalysisReport":
        version = d.get("schema_version")
        if version != SCHEMA_VERSION:
            raise SchemaMismatchError(f"report schema_version {version!r}, expected {SCHEMA_VERSION}")
        try:
            return cls(**d)
        except TypeError as exc:
            raise ParseError(f"malformed report: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        try:
            return cls.from_dict(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(f"report is not valid JSON: {exc}") from None

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> "AnalysisReport":
        return cls.from_json(Path(path).read_text(encoding="utf-8"))


def describe_series(
    ts: TimeSeries, source: str | None = None, parameters: dict | None = None, method: str | None = None
) -> dict[str, Any]:
    desc = {
        "source": source,
        "label": ts.label,
        "length": len(ts),
        "start_index": ts.start_index,
        "method": method,
        "parameters": parameters or {},
    }
    if ts.blocks:
        desc["blocks"] = [list(b) for b in ts.blocks]
    return desc


@dataclass
class PipelineResult:
    report: AnalysisReport
    graph: VisibilityGraph
    complex: CliqueComplex


def _elapsed_ms(t0: float) -> float:
    return round((time.perf_counter() - t0) * 1e3, 3)


def analyze_graph(
    g: VisibilityGraph,
    input_desc: dict[str, Any],
    per_node: bool = False,
    timing: dict[str, float] | None = None,
) -> PipelineResult:
    """Cliques and characterisers for an already built graph."""
    timing = dict(timing or {})
    t0 = time.perf_counter()
    cx = maximal_cliques(g)
    timing["cliques"] = _elapsed_ms(t0)
    t0 = time.perf_counter()
    a = analyze(cx, graph_components=g.connected_components())
    timing["q_analysis"] = _elapsed_ms(t0)
    v = a.vectors
    report = AnalysisReport(
        input=input_desc,
        graph={"nodes": g.node_count, "edges": g.edge_count},
        q_max=a.q_max,
        simplices=a.simplex_count,
        Q=list(v.Q),
        Ns=list(v.Ns),
        f=list(v.f),
        Qhat=[round_sig(x) for x in v.Qhat],
        S=[round_sig(x) for x in a.entropy],
        max_dim=a.max_dim,
        node_dims=a.node_dims.tolist() if per_node else None,
        timing_ms=timing,
    )
    return PipelineResult(report, g, cx)


def run_pipeline(
    ts: TimeSeries,
    method: str = QUADRATIC,
    per_node: bool = False,
    source: str | None = None,
    parameters: dict | None = None,
) -> PipelineResult:
    """Series -> visibility graph -> maximal cliques -> characterisers."""
    t0 = time.perf_counter()
    g = build_visibility_graph(ts, method)
    timing = {"visibility": _elapsed_ms(t0)}
    return analyze_graph(g, describe_series(ts, source, parameters, method), per_node, timing)


# --------------------------------------------------------------------------- comparison


def _label(r: AnalysisReport, k: int) -> str:
    return str(r.input.get("label") or r.input.get("source") or f"report{k}")


def comparison_rows(reports: Sequence[AnalysisReport], deltas: bool = False) -> tuple[list[str], list[list[Any]]]:
    """Side-by-side table with one row per report.

    With ``deltas``, one extra row per report holds its difference from the
    first report.

    Columns are ``max_dim``, ``S(q)``, ``f(q)`` and ``Q(q)`` for every level
    present in any report; missing levels are left blank.
    """
    if len(reports) < 2:
        raise ValueError("need at least two reports to compare")
    versions = {r.schema_version for r in reports}
    if len(versions) > 1:
        raise SchemaMismatchError(f"reports mix schema versions {sorted(versions)}")
    levels = max(r.q_max for r in reports) + 1
    header = ["report", "max_dim"]
    for name in ("S", "f", "Q"):
        header += [f"{name}({q})" for q in range(levels)]

    def values(r: AnalysisReport) -> list[Any]:
        row: list[Any] = [r.max_dim]
        for vec in (r.S, r.f, r.Q):
            row += [vec[q] if q < len(vec) else None for q in range(levels)]
        return row

    base = values(reports[0])
    rows = [[_label(r, k)] + values(r) for k, r in enumerate(reports)]
    for k, r in enumerate(reports if deltas else ()):
        delta = []
        for a, b in zip(values(r), base):
            if a is None or b is None:
                delta.append(None)
            elif isinstance(a, float) or isinstance(b, float):
                delta.append(round_sig(a - b))
            else:
                delta.append(a - b)
        rows.append([f"delta:{_label(r, k)}"] + delta)
    return header, rows


def comparison_csv(reports: Sequence[AnalysisReport], deltas: bool = False) -> str:
    header, rows = comparison_rows(reports, deltas)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["" if x is None else x for x in row])
    return buf.getvalue()


def comparison_text(reports: Sequence[AnalysisReport], deltas: bool = False) -> str:
    header, rows = comparison_rows(reports, deltas)
    cells = [header] + [["" if x is None else str(x) for x in row] for row in rows]
    widths = [max(len(r[c]) for r in cells) for c in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
