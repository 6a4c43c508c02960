"""Command-line behavior: parsing, output, exit codes."""

import json

import pytest

from dickeprobe import bench
from dickeprobe.cli import main


def test_table1_prints_report(capsys):
    assert main(["table1"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("result: PASS\n")
    assert "near-optimal Dicke pairs" in out


def test_table2_range_flag(capsys):
    assert main(["table2", "--n", "4:5"]) == 0
    out = capsys.readouterr().out
    assert " 4  " in out and " 5  " in out
    assert main(["table2", "--n", "5:4"]) == 2


def test_figure_preset_csv(capsys):
    assert main(["figure", "--preset", "fig1"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().split("\n")
    assert lines[0].startswith("schema,probe,")
    assert len(lines) == 78  # header + 77 rows


def test_figure_preset_json(capsys):
    assert main(["figure", "--preset", "fig1", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == bench.SCHEMA_ID
    assert len(payload["rows"]) == 77


def test_figure_custom_flags(capsys):
    rc = main(["figure", "--n", "4", "--probe", "ghz", "--noise", "depol",
               "--p-grid", "0:1:0.5"])
    assert rc == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 4
    assert lines[1].split(",")[1] == "ghz"


def test_figure_config_file_equivalent_to_flags(tmp_path, capsys):
    config = {"n": 4, "probes": ["ghz"], "noises": ["depol"],
              "p_grid": "0:1:0.5"}
    path = tmp_path / "run.json"
    path.write_text(json.dumps(config))
    assert main(["figure", "--config", str(path)]) == 0
    from_config = capsys.readouterr().out
    assert main(["figure", "--n", "4", "--probe", "ghz", "--noise", "depol",
                 "--p-grid", "0:1:0.5"]) == 0
    from_flags = capsys.readouterr().out
    assert from_config == from_flags


def test_figure_flag_conflicts(tmp_path):
    path = tmp_path / "run.json"
    path.write_text("{}")
    assert main(["figure", "--preset", "fig1", "--config", str(path)]) == 2
    assert main(["figure", "--preset", "fig2", "--probe", "ghz"]) == 2
    assert main(["figure", "--config", str(path), "--n", "5"]) == 2


def test_figure_config_errors(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["figure", "--config", str(bad)]) == 2
    unknown = tmp_path / "unknown.json"
    unknown.write_text(json.dumps({"probs": ["ghz"]}))
    assert main(["figure", "--config", str(unknown)]) == 2
    assert main(["figure", "--config", str(tmp_path / "missing.json")]) == 2


def test_figure_out_writes_file(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    rc = main(["figure", "--n", "3", "--probe", "ghz", "--noise", "none",
               "--out", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    text = out.read_text()
    assert text.startswith("schema,probe,")
    assert text.count("\n") == 2


def test_figure_error_exit_codes(capsys):
    assert main(["figure", "--n", "4", "--probe", "sparkle"]) == 2
    assert main(["figure", "--n", "16", "--probe", "ghz"]) == 3
    err = capsys.readouterr().err
    assert "error:" in err


def test_figure_capacity_override_is_plumbed_through(capsys):
    # Lowering the cap below the requested size must trip the guard.
    rc = main(["figure", "--n", "8", "--probe", "ghz", "--full-cap", "4"])
    assert rc == 3
    assert "exceeds cap 4" in capsys.readouterr().err


def test_preset_honors_p_grid_override(capsys):
    assert main(["figure", "--preset", "fig5", "--p-grid", "0:1:0.5"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert len(lines) == 7  # 2 series x 3 points + header


def test_verify_single_check(capsys):
    assert main(["verify", "--only", "closed_forms"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("[PASS] closed_forms:")
    assert out.rstrip().endswith("summary: 1/1 checks passed")


def test_verify_rejects_unknown_check():
    assert main(["verify", "--only", "nonsense"]) == 2


def test_verify_tight_tolerance_reports_failures(capsys):
    assert main(["verify", "--only", "table1", "--tolerance", "1e-12"]) == 1
    out = capsys.readouterr().out
    assert out.startswith("[FAIL] table1:")
    assert "summary: 0/1 checks passed" in out


def test_dump_state_csv(capsys):
    assert main(["dump-state", "--n", "4", "--probe", "ghz"]) == 0
    lines = capsys.readouterr().out.strip().split("\n")
    assert lines[0] == "l,M,amp_re,amp_im"
    assert lines[1].startswith("0,2,0.707106781187,")
    assert len(lines) == 6


def test_dump_state_json_optimal_probe(capsys):
    rc = main(["dump-state", "--n", "8", "--probe", "optimal",
               "--hamiltonian", "r=2", "--format", "json"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["probe"] == "optimal_r2"
    amps = {entry["l"]: entry["re"] for entry in payload["amplitudes"]}
    assert amps[0] == pytest.approx(2.0 ** -0.5)
    assert amps[4] == pytest.approx(0.5)
    assert amps[5] == pytest.approx(0.5)


def test_dump_state_bad_probe():
    assert main(["dump-state", "--n", "4", "--probe", "pair:2,2"]) == 2
