"""End-to-end tests of the command-line interface.

All commands are driven through ``cli.main`` with an argv list, so the
tests exercise argument parsing, exit codes and the JSON/CSV documents
exactly as a shell user would see them.
"""

import json

import numpy as np
import pytest

from cycletimes import TimeSeries, write_series_csv
from cycletimes.cli import main


def run_cli(argv, capsys):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def write_circle(path, cycles=2.0, n=201):
    t = np.linspace(0.0, cycles, n)
    xy = np.column_stack([np.cos(2 * np.pi * t), np.sin(2 * np.pi * t)])
    write_series_csv(TimeSeries(t, xy), path)


def write_figure_eight(path, n=201):
    t = np.linspace(0.0, 1.0, n)
    xy = np.column_stack([np.sin(2 * np.pi * t), np.sin(4 * np.pi * t)])
    write_series_csv(TimeSeries(t, xy), path)


def write_monotone(path):
    t = np.linspace(0.0, 1.0, 101)
    write_series_csv(TimeSeries(t, 3.0 * t.reshape(-1, 1)), path)


# ------------------------------------------------------------ detect


def test_detect_circle_two_cycles(tmp_path, capsys):
    path = tmp_path / "circle.csv"
    write_circle(path)
    code, out, _ = run_cli(
        ["detect", str(path), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["schema_version"] == 1
    assert doc["method"] == 1
    assert doc["input"] == str(path)
    assert doc["recurrence_times"] == pytest.approx([0.0, 1.0, 2.0], abs=1e-9)
    assert doc["cycle_lengths"] == pytest.approx([1.0, 1.0], abs=1e-9)


def test_detect_no_recurrence_exit_code(tmp_path, capsys):
    path = tmp_path / "mono.csv"
    write_monotone(path)
    code, out, _ = run_cli(
        ["detect", str(path), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 4
    doc = json.loads(out)
    assert doc["no_recurrence"] is True
    assert doc["input"] == str(path)


def test_detect_malformed_csv_exit_code(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("t,v1\n0,1\n0.5,oops\n")
    code, _, err = run_cli(
        ["detect", str(path), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 3
    assert "row 3" in err


def test_detect_missing_file_exit_code(tmp_path, capsys):
    code, _, err = run_cli(
        ["detect", str(tmp_path / "nope.csv"), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 3
    assert "nope.csv" in err


@pytest.mark.parametrize(
    "extra",
    [
        ["--method", "2"],                              # missing embed/delay
        ["--method", "1", "--embed-dim", "3"],          # wrong method
        ["--method", "1", "--mode", "squared_fast"],
        ["--method", "2", "--embed-dim", "2", "--delay", "0.05"],  # no unit
        ["--method", "3", "--norm-p", "3"],
    ],
)
def test_detect_usage_errors(tmp_path, capsys, extra):
    path = tmp_path / "circle.csv"
    write_circle(path)
    code, _, err = run_cli(
        ["detect", str(path), "--epsilon", "0.3", "--delta", "0.6"] + extra,
        capsys,
    )
    assert code == 2
    assert err


def test_detect_delay_units_agree(tmp_path, capsys):
    # mean spacing is 0.01, so 5samples and 0.05s are the same delay
    path = tmp_path / "circle.csv"
    write_circle(path)
    base = ["detect", str(path), "--method", "2", "--epsilon", "0.3",
            "--delta", "0.6", "--embed-dim", "2"]
    code_a, out_a, _ = run_cli(base + ["--delay", "5samples"], capsys)
    code_b, out_b, _ = run_cli(base + ["--delay", "0.05s"], capsys)
    assert code_a == code_b == 0
    doc_a, doc_b = json.loads(out_a), json.loads(out_b)
    assert doc_a["params"]["delay"] == pytest.approx(
        doc_b["params"]["delay"], rel=1e-12
    )
    assert doc_a["recurrence_times"] == doc_b["recurrence_times"]
    assert doc_a["params"]["delay_input"] == "5samples"


def test_detect_method3_reports_candidate_lags(tmp_path, capsys):
    path = tmp_path / "circle.csv"
    write_circle(path)
    code, out, _ = run_cli(
        ["detect", str(path), "--method", "3", "--mode", "squared_fast",
         "--epsilon", "0.05", "--delta", "1.0"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["recurrence_times"] == pytest.approx([0.0, 1.0, 2.0], abs=1e-6)
    # lag 2.0 averages a single pair, below the reliability floor
    assert doc["candidate_lags"] == pytest.approx([1.0], abs=1e-6)
    assert doc["params"]["mode"] == "squared_fast"


# ----------------------------------------------------------- diagram


def test_diagram_circle(tmp_path, capsys):
    path = tmp_path / "circle.csv"
    write_circle(path)
    code, out, _ = run_cli(
        ["diagram", str(path), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 0
    doc = json.loads(out)
    essential = [p for p in doc["points"] if p["death"] is None]
    finite = [p for p in doc["points"] if p["death"] is not None]
    assert len(essential) == 1 and essential[0]["birth"] == 0.0
    # two interior returns, each born near 0 and dying at the global max 2
    assert len(finite) == 2
    for p in finite:
        assert abs(p["birth"]) < 1e-9
        assert p["death"] == pytest.approx(2.0, abs=1e-6)
    assert len(doc["surrogate"]["timestamps"]) == 201


def test_diagram_monotone_has_single_essential(tmp_path, capsys):
    path = tmp_path / "mono.csv"
    write_monotone(path)
    code, out, _ = run_cli(
        ["diagram", str(path), "--method", "1",
         "--epsilon", "0.3", "--delta", "0.6"],
        capsys,
    )
    assert code == 0  # diagram itself always exists, even with no cycles
    doc = json.loads(out)
    assert len(doc["points"]) == 1
    assert doc["points"][0]["death"] is None


def test_diagram_embedding_lifts_false_minimum(tmp_path, capsys):
    # the figure eight revisits the origin mid-cycle; method 1 sees a
    # spurious near-zero minimum there, the delay embedding lifts its
    # birth value above any reasonable epsilon
    path = tmp_path / "eight.csv"
    write_figure_eight(path)
    args = [str(path), "--epsilon", "0.3", "--delta", "0.6"]
    _, out1, _ = run_cli(["diagram"] + args + ["--method", "1"], capsys)
    _, out2, _ = run_cli(
        ["diagram"] + args
        + ["--method", "2", "--embed-dim", "2", "--delay", "0.05s"],
        capsys,
    )

    def significant(doc):
        return [p for p in doc["points"]
                if p["death"] is not None
                and p["birth"] < 0.3 and p["death"] - p["birth"] > 0.6]

    # method 1: the crossing at t=1/2 and the true return at t=1
    assert len(significant(json.loads(out1))) == 2
    # method 2: the crossing is born near 0.58, no longer below epsilon
    doc2 = json.loads(out2)
    assert significant(doc2) == []
    assert all(p["birth"] > 0.3 for p in doc2["points"]
               if p["death"] is not None)


# ---------------------------------------------------------- generate


SCENARIO = {
    "behavior": "periodic",
    "base_curve": "circle",
    "cycles": 3,
    "base_period": 1.0,
    "samples_per_cycle": 200,
}


def test_generate_is_deterministic(tmp_path, capsys):
    scen = tmp_path / "scen.json"
    scen.write_text(json.dumps(SCENARIO))
    for d in ("a", "b"):
        code, _, _ = run_cli(
            ["generate", str(scen), "--seed", "9",
             "--out-dir", str(tmp_path / d)],
            capsys,
        )
        assert code == 0
    assert (tmp_path / "a" / "scen.csv").read_bytes() == \
        (tmp_path / "b" / "scen.csv").read_bytes()
    assert (tmp_path / "a" / "scen.truth.json").read_bytes() == \
        (tmp_path / "b" / "scen.truth.json").read_bytes()


def test_generate_rejects_bad_scenario(tmp_path, capsys):
    scen = tmp_path / "scen.json"
    scen.write_text("{not json")
    code, _, err = run_cli(
        ["generate", str(scen), "--out-dir", str(tmp_path / "out")], capsys
    )
    assert code == 3

    bad = dict(SCENARIO, cycles=0)
    scen.write_text(json.dumps(bad))
    code, _, err = run_cli(
        ["generate", str(scen), "--out-dir", str(tmp_path / "out")], capsys
    )
    assert code == 3
    assert "cycles" in err

    unknown = dict(SCENARIO, extra_field=1)
    scen.write_text(json.dumps(unknown))
    code, _, err = run_cli(
        ["generate", str(scen), "--out-dir", str(tmp_path / "out")], capsys
    )
    assert code == 3
    assert "extra_field" in err


def test_generate_suite_writes_all_sections(tmp_path, capsys):
    out = tmp_path / "suite"
    code, _, _ = run_cli(
        ["generate", "--suite", "--out-dir", str(out),
         "--samples-per-cycle", "60"],
        capsys,
    )
    assert code == 0
    csvs = sorted(p.name for p in out.glob("*.csv"))
    truths = sorted(p.name for p in out.glob("*.truth.json"))
    assert len(csvs) == 18 and len(truths) == 18
    assert "I.1.csv" in csvs
    assert "II.2.5.csv" in csvs
    assert "III.1.3.truth.json" in truths


# ---------------------------------------------------------- evaluate


def _detect_to_file(csv_path, out_path, argv_tail, capsys):
    code, out, _ = run_cli(["detect", str(csv_path)] + argv_tail, capsys)
    out_path.write_text(out)
    return code


def test_evaluate_round_trip(tmp_path, capsys):
    scen = tmp_path / "ring.json"
    scen.write_text(json.dumps(SCENARIO))
    truth = tmp_path / "truth"
    run_cli(["generate", str(scen), "--seed", "3",
             "--out-dir", str(truth)], capsys)
    est = tmp_path / "est"
    est.mkdir()
    code = _detect_to_file(
        truth / "ring.csv", est / "ring.result.json",
        ["--method", "1", "--epsilon", "0.3", "--delta", "0.6"], capsys,
    )
    assert code == 0
    code, out, _ = run_cli(
        ["evaluate", "--estimates", str(est), "--truth", str(truth)], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["overall"]["n_cycles"] == 3
    assert doc["overall"]["mae_seconds"] == pytest.approx(0.0, abs=1e-9)
    assert doc["failures"] == []

    code, out, _ = run_cli(
        ["evaluate", "--estimates", str(est), "--truth", str(truth),
         "--table"],
        capsys,
    )
    assert code == 0
    assert "overall" in out and "ring" in out


def test_evaluate_counts_no_recurrence_as_failure(tmp_path, capsys):
    scen = tmp_path / "ring.json"
    scen.write_text(json.dumps(SCENARIO))
    truth = tmp_path / "truth"
    run_cli(["generate", str(scen), "--seed", "3",
             "--out-dir", str(truth)], capsys)
    est = tmp_path / "est"
    est.mkdir()
    # delta above the global range, so nothing is significant
    code = _detect_to_file(
        truth / "ring.csv", est / "ring.json",
        ["--method", "1", "--epsilon", "0.3", "--delta", "10"], capsys,
    )
    assert code == 4
    code, out, _ = run_cli(
        ["evaluate", "--estimates", str(est), "--truth", str(truth)], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["failures"] == ["ring"]
    assert doc["overall"]["mae_seconds"] is None


def test_evaluate_rejects_orphans(tmp_path, capsys):
    scen = tmp_path / "ring.json"
    scen.write_text(json.dumps(SCENARIO))
    truth = tmp_path / "truth"
    run_cli(["generate", str(scen), "--seed", "3",
             "--out-dir", str(truth)], capsys)
    est = tmp_path / "est"
    est.mkdir()
    (est / "other.result.json").write_text("{}")
    code, _, err = run_cli(
        ["evaluate", "--estimates", str(est), "--truth", str(truth)], capsys
    )
    assert code == 2
    assert "ring" in err and "other" in err


def test_evaluate_writes_boxplot_rows(tmp_path, capsys):
    scen = tmp_path / "ring.json"
    scen.write_text(json.dumps(SCENARIO))
    truth = tmp_path / "truth"
    run_cli(["generate", str(scen), "--seed", "3",
             "--out-dir", str(truth)], capsys)
    est = tmp_path / "est"
    est.mkdir()
    _detect_to_file(
        truth / "ring.csv", est / "ring.result.json",
        ["--method", "1", "--epsilon", "0.3", "--delta", "0.6"], capsys,
    )
    box = tmp_path / "box.csv"
    code, _, _ = run_cli(
        ["evaluate", "--estimates", str(est), "--truth", str(truth),
         "--boxplot-csv", str(box)],
        capsys,
    )
    assert code == 0
    lines = box.read_text().splitlines()
    assert lines[0] == "section,time_index,relative_error"
    # three cycles: per-time errors for indices 1..3
    assert len(lines) == 4
    assert lines[1].startswith("ring,1,")
