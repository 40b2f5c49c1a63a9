"""CLI tests, mostly in-process through cli.main for speed; one subprocess
check exercises the installed console script."""
import json
import math
import subprocess
import sys

import pytest

from qsph import cli
from qsph.harness import (
    ExperimentConfig,
    ExperimentRow,
    read_rows,
    run_convergence_sweep,
    run_experiment,
)


def test_run_writes_curve_file(tmp_path):
    out = tmp_path / "curve.csv"
    code = cli.main(["run", "--qubits", "4", "--points", "5", "--out", str(out)])
    assert code == 0
    expected = run_experiment(ExperimentConfig(qubits=4, eval_points=5))
    assert read_rows(str(out)) == expected


def test_run_streams_csv_to_stdout(capsys):
    assert cli.main(["run", "--qubits", "4", "--points", "3"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "x,f_exact,f_approx,abs_error"
    assert len(lines) == 4
    # 17 significant digits: parsing the text recovers the doubles bit-exactly
    expected = run_experiment(ExperimentConfig(qubits=4, eval_points=3))
    for line, row in zip(lines[1:], expected):
        x, fe, fa, ae = (float(tok) for tok in line.split(","))
        assert ExperimentRow(x, fe, fa, ae) == row


def test_run_respects_domain_flag(capsys):
    assert cli.main(["run", "--qubits", "4", "--points", "3",
                     "--domain", "0", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert float(lines[1].split(",")[0]) == 0.0
    assert float(lines[-1].split(",")[0]) == 2.0


def test_run_with_phase_estimator(capsys):
    assert cli.main(["run", "--qubits", "4", "--points", "3",
                     "--estimator", "phase", "--pe-qubits", "6"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4


def test_sweep_writes_expected_entries(tmp_path):
    out = tmp_path / "sweep.csv"
    code = cli.main(["sweep", "--m-min", "4", "--m-max", "6", "--points", "9",
                     "--kernel", "wendland", "--out", str(out)])
    assert code == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m,kernel,order,rms"
    assert [line.split(",")[0] for line in lines[1:]] == ["4", "5", "6"]
    assert all(line.split(",")[1] == "wendland" for line in lines[1:])
    expected = run_convergence_sweep(
        ExperimentConfig(kernel="wendland", eval_points=9), m_values=(4, 5, 6))
    for line, (_, rms) in zip(lines[1:], expected):
        assert float(line.split(",")[3]) == rms


def test_config_file_supplies_settings(tmp_path):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"qubits": 4, "points": 5}))
    out = tmp_path / "curve.csv"
    assert cli.main(["run", "--config", str(cfg), "--out", str(out)]) == 0
    assert read_rows(str(out)) == run_experiment(
        ExperimentConfig(qubits=4, eval_points=5))


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "exp.json"
    cfg.write_text(json.dumps({"qubits": 4, "points": 5}))
    assert cli.main(["run", "--config", str(cfg), "--points", "3"]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 4  # header + 3 rows


@pytest.mark.parametrize("content, fragment", [
    ('{"qubitz": 4}', "unknown keys"),
    ("{not json", "config file"),
    ('[1, 2]', "JSON object"),
])
def test_bad_config_files_exit_2(tmp_path, capsys, content, fragment):
    cfg = tmp_path / "exp.json"
    cfg.write_text(content)
    assert cli.main(["run", "--config", str(cfg)]) == 2
    assert fragment in capsys.readouterr().err


def test_missing_config_file_exits_2(tmp_path, capsys):
    assert cli.main(["run", "--config", str(tmp_path / "absent.json")]) == 2
    assert "config error" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["run", "--qubits", "1"],
    ["run", "--boundary-particles", "0"],
    ["sweep", "--m-min", "6", "--m-max", "4"],
    ["sweep", "--m-min", "1"],
    ["sweep", "--m-max", "17"],
])
def test_invalid_settings_exit_2(capsys, argv):
    assert cli.main(argv) == 2
    assert "config error" in capsys.readouterr().err


def test_unwritable_output_exits_2(tmp_path, capsys):
    target = tmp_path / "no" / "such" / "dir" / "out.csv"
    assert cli.main(["run", "--qubits", "4", "--points", "3",
                     "--out", str(target)]) == 2
    assert "config error" in capsys.readouterr().err


def test_non_finite_rows_exit_3(monkeypatch, capsys):
    bad = [ExperimentRow(0.0, 1.0, math.nan, math.nan)]
    monkeypatch.setattr(cli, "run_experiment", lambda config: bad)
    assert cli.main(["run", "--qubits", "4", "--points", "3"]) == 3
    assert "non-finite" in capsys.readouterr().err


def test_installed_console_script_runs():
    proc = subprocess.run(
        ["qsph", "run", "--qubits", "4", "--points", "3"],
        capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == "x,f_exact,f_approx,abs_error"
