"""Command-line front end: exit codes, structured errors, determinism of the
written reports, and the published-values lookup."""

import json

import pytest

from inflab.cli import main
from inflab.errors import RangeError
from inflab.reference import (
    published_scalar,
    published_table,
    relative_deviation,
    table_ids,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def read_json(path):
    return json.loads(path.read_text(encoding="utf-8"))


def test_ingest_reports_fixture_summaries(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys, "ingest", "--data-dir", str(data_dir), "--out", str(tmp_path)
    )
    assert code == 0 and err == ""
    assert out.startswith("ingest:")
    payload = read_json(tmp_path / "ingest.json")
    assert {"gdp_deflator", "labor_force", "n15", "n14"} <= set(payload)
    for key in ("gdp_deflator", "labor_force", "n15", "n14"):
        row = payload[key]
        assert row["present"] is True
        assert {"file", "start_year", "end_year", "n", "mean"} <= set(row)
        assert row["end_year"] > row["start_year"]
    assert payload["revision_years"]["years"]
    assert (tmp_path / "ingest.csv").exists()


def test_missing_fixture_is_a_single_json_error(tmp_path, capsys):
    empty = tmp_path / "empty"
    empty.mkdir()
    code, out, err = run(
        capsys, "calibrate", "--data-dir", str(empty), "--out", str(tmp_path)
    )
    assert code == 1
    obj = json.loads(err)
    assert obj["error"] == "MissingFixture"
    assert "gdp_deflator" in obj["message"]


def test_usage_error_exits_two(tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        main(["montecarlo", "--suite", "bogus", "--out", str(tmp_path)])
    assert e.value.code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "UsageError"


def test_unknown_series_error_lists_catalog(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "unit-root",
        "--series",
        "nonexistent",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 1
    obj = json.loads(err)
    assert obj["error"] == "RangeError"
    assert "measured" in obj["message"]


def test_calibrate_writes_report(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys, "calibrate", "--data-dir", str(data_dir), "--out", str(tmp_path)
    )
    assert code == 0
    payload = read_json(tmp_path / "calibrate.json")
    assert {"a1", "a2", "lag", "n", "rmsfe_full", "rmsfe_segments"} <= set(payload)
    assert payload["lag"] == 2
    assert payload["rmsfe_full"] > 0
    assert len(payload["rmsfe_segments"]) == 2
    assert all(v > 0 for v in payload["rmsfe_segments"].values())
    assert (tmp_path / "calibrate.csv").exists()


def test_synthetic_reports_are_byte_stable(tmp_path, data_dir, capsys):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    for out in (out1, out2):
        code, _, _ = run(
            capsys, "synthetic", "--data-dir", str(data_dir), "--out", str(out)
        )
        assert code == 0
    for name in (
        "synthetic.json",
        "synthetic.csv",
        "synthetic_curves.svg",
        "synthetic_sweep.svg",
    ):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name


def test_synthetic_empty_amplitudes_writes_header_only(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "synthetic",
        "--amplitudes",
        "",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    assert (tmp_path / "synthetic.csv").read_text() == (
        "A,r2,dw,arch_p,eg_verdict,johansen_rank\n"
    )
    payload = read_json(tmp_path / "synthetic.json")
    assert payload["rows"] == [] and payload["control"] is None


def test_synthetic_rejects_bad_amplitude(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "synthetic",
        "--amplitudes",
        "0.01,-0.5",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 1
    assert json.loads(err)["error"] == "RangeError"


def test_montecarlo_rejects_tiny_rep_counts(tmp_path, capsys):
    code, out, err = run(
        capsys, "montecarlo", "--suite", "size", "--reps", "10", "--out", str(tmp_path)
    )
    assert code == 1
    assert json.loads(err)["error"] == "RangeError"


def test_montecarlo_size_suite_writes_rates(tmp_path, capsys):
    code, out, err = run(
        capsys,
        "montecarlo",
        "--suite",
        "size",
        "--reps",
        "150",
        "--n",
        "60",
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "montecarlo.json")
    tests = [r["test"] for r in payload["results"]]
    assert tests == ["adf_size", "breusch_godfrey", "arch_lm", "normality"]
    for r in payload["results"]:
        assert 0.0 <= r["rate"] <= 1.0
        assert r["rejections"] <= r["reps"] == 150
    lines = (tmp_path / "montecarlo.csv").read_text().strip().splitlines()
    assert lines[0] == "test,dgp,level,reps,rejections,rate"
    assert len(lines) == 5


def test_unit_root_command_both_tests(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "unit-root",
        "--series",
        "measured",
        "--test",
        "both",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "unit_root.json")
    assert payload["series"] == "measured"
    results = payload["results"]
    assert set(results) == {"adf", "dfgls"}
    assert results["adf"]["test"] == "adf"
    assert results["dfgls"]["test"] == "dfgls"
    assert set(results["adf"]["critical_values"]) == {"1%", "5%", "10%"}


def test_global_flags_accepted_in_both_positions(tmp_path, data_dir, capsys):
    before = tmp_path / "before"
    after = tmp_path / "after"
    code1, _, _ = run(
        capsys,
        "--data-dir",
        str(data_dir),
        "--out",
        str(before),
        "--lag",
        "3",
        "unit-root",
        "--series",
        "measured",
    )
    code2, _, _ = run(
        capsys,
        "unit-root",
        "--series",
        "measured",
        "--data-dir",
        str(data_dir),
        "--out",
        str(after),
        "--lag",
        "3",
    )
    assert code1 == code2 == 0
    p1 = read_json(before / "unit_root.json")
    p2 = read_json(after / "unit_root.json")
    assert p1 == p2
    assert p1["results"]["adf"]["lags"] == 3


def test_cointegrate_command_both_methods(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "cointegrate",
        "--y",
        "measured",
        "--x",
        "predicted",
        "--method",
        "both",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "cointegrate.json")
    assert {"engle_granger", "johansen"} <= set(payload)
    assert "cointegrated_at" in payload["engle_granger"]
    assert payload["johansen"]["selected_rank"] in (0, 1, 2)
    assert len(payload["johansen"]["rows"]) == 3


def test_var_command_reports_stability(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "var",
        "--endog",
        "measured,predicted2",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "var.json")
    assert {"companion_moduli", "lm_autocorrelation", "residual_normality"} <= set(
        payload
    )
    moduli = payload["companion_moduli"]
    assert all(m > 0 for m in moduli)
    assert moduli == sorted(moduli, reverse=True)
    assert len(payload["lm_autocorrelation"]) == 4


def test_vecm_command_embeds_rank_table(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "vecm",
        "--y",
        "measured",
        "--x",
        "shifted2",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "vecm.json")
    assert {"alpha", "beta", "rank_table", "notes"} <= set(payload)
    assert payload["beta"][0] == 1.0
    assert "selected_rank" in payload["rank_table"]


def test_granger_command_reports_both_directions(tmp_path, data_dir, capsys):
    code, out, err = run(
        capsys,
        "granger",
        "--y",
        "measured",
        "--x",
        "predicted2",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "granger.json")
    rows = payload["results"]
    assert len(rows) == 2
    directions = set()
    for row in rows:
        assert row["test"] == "granger_wald"
        assert 0.0 <= row["p_value"] <= 1.0
        comp = row["components"]
        directions.add((comp["equation"], comp["excluded"]))
    assert len(directions) == 2
    lines = (tmp_path / "granger.csv").read_text().strip().splitlines()
    assert lines[0] == "equation,excluded,chi2,df,p"


def test_reproduce_table_is_deterministic(tmp_path, data_dir, capsys):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    for out in (out1, out2):
        code, _, err = run(
            capsys,
            "reproduce-table",
            "6",
            "--data-dir",
            str(data_dir),
            "--out",
            str(out),
        )
        assert code == 0 and err == ""
    assert (out1 / "table_6.json").read_bytes() == (out2 / "table_6.json").read_bytes()
    assert (out1 / "table_6.csv").read_bytes() == (out2 / "table_6.csv").read_bytes()


def test_reproduce_table_entries_carry_deviations(tmp_path, data_dir, capsys):
    code, _, _ = run(
        capsys,
        "reproduce-table",
        "1",
        "--data-dir",
        str(data_dir),
        "--out",
        str(tmp_path),
    )
    assert code == 0
    payload = read_json(tmp_path / "table_1.json")
    assert payload["table"] == "1"
    assert payload["entries"]
    for entry in payload["entries"]:
        assert {"row", "column", "computed", "published"} <= set(entry)
        if entry["published"] not in (None, 0) and entry["computed"] is not None:
            expected = (entry["computed"] - entry["published"]) / abs(
                entry["published"]
            )
            assert entry["relative_deviation"] == pytest.approx(expected, abs=1e-12)


def test_reproduce_table_rejects_unknown_id(tmp_path, data_dir, capsys):
    with pytest.raises(SystemExit) as e:
        main(
            [
                "reproduce-table",
                "99",
                "--data-dir",
                str(data_dir),
                "--out",
                str(tmp_path),
            ]
        )
    assert e.value.code == 2
    err = capsys.readouterr().err
    assert json.loads(err)["error"] == "UsageError"


def test_published_values_lookup():
    assert set(table_ids()) == {"1", "2", "3", "4", "5", "6", "7", "8", "A1", "2A"}
    t6 = published_table("6")
    assert isinstance(t6["rows"], list) and len(t6["rows"]) == 4
    with pytest.raises(RangeError):
        published_table("17")
    eq = published_scalar("equation_2")
    assert eq["a1"] == pytest.approx(4.0)
    assert eq["a2"] == pytest.approx(-0.03075)
    assert published_scalar("rmsfe_full_1965_2002") == pytest.approx(0.008)
    with pytest.raises(RangeError):
        published_scalar("no_such_quantity")
    assert relative_deviation(1.1, 1.0) == pytest.approx(0.1)
    assert relative_deviation(None, 1.0) is None
    assert relative_deviation(1.0, 0.0) is None
