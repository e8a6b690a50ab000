import csv
import json

import numpy as np
import pytest

from simplicial_tsnet import cli
from simplicial_tsnet.errors import InvariantViolation, SchemaMismatchError
from simplicial_tsnet.report import AnalysisReport, comparison_rows, run_pipeline
from simplicial_tsnet.series import LogisticParams, TimeSeries, logistic_series, save_series

READING = "EW,ER,ENW,ER,EW,ER,ENW,ER,EW,ER,ENW,ER,HW,HR,HNW,HR,HW,HR,HNW,HR,HW,HR,HNW,HR"


def run(*argv):
    return cli.main([str(a) for a in argv])


def test_generate_to_stdout(capsys):
    assert run("generate", "--mu", 2.0, "--x0", 0.5, "--n", 3) == 0
    assert capsys.readouterr().out == "0.5\n0.5\n0.5\n"


def test_generate_file_and_sidecar(tmp_path):
    out = tmp_path / "p16.csv"
    assert run("generate", "--mu", 3.566, "--x0", 0.4, "--n", 10000, "--transient", 1000, "--out", out) == 0
    assert len(out.read_text().splitlines()) == 10000
    meta = json.loads((tmp_path / "p16.csv.meta.json").read_text())
    assert meta == {"generator": "logistic", "mu": 3.566, "x0": 0.4, "n": 10000, "transient": 1000}


def test_generate_domain_error(capsys):
    assert run("generate", "--mu", 5.0, "--n", 3) == cli.EXIT_INPUT
    assert "mu must lie in" in capsys.readouterr().err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        run("generate", "--n", "3")
    assert info.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        run("compare", "only_one.json")
    assert info.value.code == cli.EXIT_USAGE


def test_analyze_flat_series(tmp_path, capsys):
    p = tmp_path / "flat.csv"
    p.write_text("2.0\n" * 5)
    assert run("analyze", "--input", p) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["q_max"] == 1 and rep["f"] == [0, 4] and rep["Q"] == [1, 4]
    assert rep["graph"] == {"nodes": 5, "edges": 4}
    assert rep["node_dims"] is None


def test_analyze_missing_input_is_attributed(tmp_path, capsys):
    assert run("analyze", "--input", tmp_path / "nope.csv") == cli.EXIT_INPUT
    assert "[load]" in capsys.readouterr().err


def test_analyze_invariant_violation_exit_code(tmp_path, monkeypatch):
    p = tmp_path / "s.csv"
    p.write_text("1\n3\n2\n")

    def broken(*args, **kwargs):
        raise InvariantViolation("forced")

    monkeypatch.setattr(cli, "run_pipeline", broken)
    assert run("analyze", "--input", p) == cli.EXIT_INVARIANT


def test_analyze_exports_and_bypass(tmp_path):
    y = logistic_series(LogisticParams(mu=3.9, x0=0.3, n=400, transient=100))
    series = tmp_path / "s.csv"
    save_series(y, series)
    rep1, edges, cl, dot = (tmp_path / n for n in ("r1.json", "e.txt", "c.txt", "g.dot"))
    assert run("analyze", "--input", series, "--report", rep1, "--edges", edges, "--cliques", cl, "--dot", dot) == 0
    rep2 = tmp_path / "r2.json"
    assert run("analyze", "--graph-input", edges, "--report", rep2) == 0
    a, b = AnalysisReport.load(rep1), AnalysisReport.load(rep2)
    assert a.canonical(include_input=False) == b.canonical(include_input=False)
    lines = cl.read_text().splitlines()
    assert len(lines) == a.simplices
    assert dot.read_text().count("--") == a.graph["edges"]


def test_analyze_is_deterministic(tmp_path):
    series = tmp_path / "s.csv"
    save_series(TimeSeries(np.random.default_rng(4).normal(size=300)), series)
    outs = []
    for k in range(2):
        out = tmp_path / f"r{k}.json"
        assert run("analyze", "--input", series, "--per-node", "--report", out) == 0
        d = json.loads(out.read_text())
        d.pop("timing_ms")
        outs.append(json.dumps(d, indent=2))
    assert outs[0] == outs[1]
    assert len(json.loads((tmp_path / "r0.json").read_text())["node_dims"]) == 300


def test_analyze_methods_agree(tmp_path):
    series = tmp_path / "s.csv"
    save_series(TimeSeries(np.random.default_rng(6).normal(size=300)), series)
    reports = []
    for method in ("quadratic", "divide-and-conquer"):
        out = tmp_path / f"{method}.json"
        assert run("analyze", "--input", series, "--method", method, "--report", out) == 0
        d = AnalysisReport.load(out).canonical(include_input=False)
        reports.append(d)
    assert reports[0] == reports[1]


def test_analyze_segmented_per_block(tmp_path):
    series = tmp_path / "reading.csv"
    save_series(logistic_series(LogisticParams(mu=3.9, x0=0.3, n=480, transient=100)), series)
    out = tmp_path / "reports"
    assert run("analyze", "--input", series, "--block-length", 20, "--labels", "EW,ER,ENW,ER", "--out-dir", out) == 0
    files = sorted(out.glob("*.json"))
    assert len(files) == 24
    labels = [AnalysisReport.load(f).input["label"] for f in files]
    assert labels == ["EW", "ER", "ENW", "ER"] * 6
    starts = [AnalysisReport.load(f).input["start_index"] for f in files]
    assert starts == list(range(0, 480, 20))


def test_analyze_segmented_concatenate(tmp_path):
    series = tmp_path / "reading.csv"
    save_series(logistic_series(LogisticParams(mu=3.9, x0=0.3, n=480, transient=100)), series)
    out = tmp_path / "reports"
    assert run(
        "analyze", "--input", series, "--block-length", 20, "--labels", READING,
        "--mode", "concatenate-by-label", "--out-dir", out,
    ) == 0
    reps = {AnalysisReport.load(f).input["label"]: AnalysisReport.load(f) for f in out.glob("*.json")}
    assert sorted(reps) == sorted(set(READING.split(",")))
    assert reps["ER"].input["length"] == 120
    assert len(reps["ER"].input["blocks"]) == 6


def test_analyze_segment_length_mismatch(tmp_path, capsys):
    series = tmp_path / "s.csv"
    save_series(TimeSeries(np.arange(25.0)), series)
    assert run("analyze", "--input", series, "--block-length", 20, "--out-dir", tmp_path) == cli.EXIT_INPUT
    assert "[segment]" in capsys.readouterr().err


def test_report_json_round_trip():
    rep = run_pipeline(TimeSeries(np.random.default_rng(2).normal(size=200)), per_node=True).report
    again = AnalysisReport.from_json(rep.to_json())
    assert again == rep
    assert again.to_json() == rep.to_json()
    assert all(len(v) == rep.q_max + 1 for v in (rep.Q, rep.Ns, rep.f, rep.Qhat, rep.S))


def test_report_schema_guard():
    rep = run_pipeline(TimeSeries([3.0, 1.0, 2.0])).report
    d = rep.to_dict()
    d["schema_version"] = 99
    with pytest.raises(SchemaMismatchError):
        AnalysisReport.from_dict(d)
    other = AnalysisReport.from_dict(rep.to_dict())
    other.schema_version = 2
    with pytest.raises(SchemaMismatchError):
        comparison_rows([rep, other])


def _report_file(tmp_path, name, values):
    rep = run_pipeline(TimeSeries(values)).report
    rep.input["label"] = name
    path = tmp_path / f"{name}.json"
    rep.save(path)
    return path


def test_compare_self_has_zero_deltas(tmp_path, capsys):
    p = _report_file(tmp_path, "a", np.random.default_rng(0).normal(size=200))
    table = tmp_path / "t.csv"
    assert run("compare", p, p, "--deltas", "--csv", table) == 0
    rows = list(csv.reader(table.open()))
    deltas = [r for r in rows if r[0].startswith("delta:")]
    assert len(deltas) == 2
    assert all(float(x) == 0 for r in deltas for x in r[1:] if x)
    assert "max_dim" in capsys.readouterr().out


def test_compare_table_layout(tmp_path):
    rng = np.random.default_rng(1)
    paths = [_report_file(tmp_path, f"seg{k}", rng.normal(size=20)) for k in range(6)]
    out = tmp_path / "t.csv"
    assert run("compare", *paths, "--csv", out, "--out", tmp_path / "t.txt") == 0
    rows = list(csv.reader(out.open()))
    assert rows[0][:2] == ["report", "max_dim"]
    assert {"S(0)", "S(1)", "S(2)"} <= set(rows[0])
    assert [r[0] for r in rows[1:]] == [f"seg{k}" for k in range(6)]
    assert (tmp_path / "t.txt").read_text().splitlines()[0].startswith("report")


def test_compare_regimes(tmp_path, period16, edge_of_chaos):
    paths = []
    for name, res in (("p16", period16), ("chaos", edge_of_chaos)):
        path = tmp_path / f"{name}.json"
        res.report.save(path)
        paths.append(path)
    out = tmp_path / "t.csv"
    assert run("compare", *paths, "--csv", out) == 0
    rows = {r[0]: r for r in csv.reader(out.open())}
    header = next(csv.reader(out.open()))
    col = header.index("max_dim")
    assert int(rows["logistic(mu=3.566, x0=0.4)"][col]) == 8
    assert int(rows["logistic(mu=3.56995, x0=0.4)"][col]) == 23
