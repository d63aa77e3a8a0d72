"""End-to-end checks of the command-line entry points.

Each subcommand is driven through ``main`` with a small workload; the
heavy statistical rows live in the validation suite and the acceptance
tests, not here.
"""

import json
import math

import numpy as np
import pytest

from dmlaw import cli, density


def _run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# --- density ------------------------------------------------------------------


def test_density_writes_loadable_table(tmp_path, capsys):
    out = str(tmp_path / "half.tsv")
    code, stdout, _ = _run(
        capsys,
        ["density", "--alpha", "0.5", "--h", str(2.0**-10), "--xmax", "6", "--out", out],
    )
    assert code == 0
    info = json.loads(stdout)
    grid = density.load_table(out)
    assert info["rows"] == len(grid.x)
    assert grid.alpha == 0.5
    # value at x = 1 is 1/pi for this exponent
    i = int(np.argmin(np.abs(grid.x - 1.0)))
    assert grid.x[i] == pytest.approx(1.0, abs=1e-12)
    assert grid.g[i] == pytest.approx(1.0 / math.pi, abs=1e-7)


def test_density_partials_file(tmp_path, capsys):
    out = str(tmp_path / "t.tsv")
    code, stdout, _ = _run(
        capsys,
        [
            "density",
            "--alpha",
            "0.5",
            "--h",
            str(2.0**-8),
            "--xmax",
            "4",
            "--out",
            out,
            "--partials",
        ],
    )
    assert code == 0
    partials = json.loads(stdout)["partials"]
    assert partials == out + ".partials.csv"
    lines = open(partials).read().splitlines()
    assert lines[0] == "x,sum0,sum1,sum2"
    assert len(lines) > 10


def test_density_rejects_bad_exponent(tmp_path, capsys):
    out = str(tmp_path / "x.tsv")
    code, _, stderr = _run(capsys, ["density", "--alpha", "1.5", "--out", out])
    assert code == 2
    assert "error:" in stderr


# --- moments ------------------------------------------------------------------


def test_moments_shifted_law(capsys):
    code, stdout, _ = _run(capsys, ["moments", "--alpha", "0.5"])
    assert code == 0
    info = json.loads(stdout)
    assert info["law"] == "shifted"
    assert info["mean"] == pytest.approx(2.0, rel=1e-12)
    assert info["variance"] == pytest.approx(4.0 / 3.0, rel=1e-12)
    assert info["mean_exact"] == "2"
    assert info["variance_exact"] == "4/3"


def test_moments_geometric_convolution(capsys):
    code, stdout, _ = _run(capsys, ["moments", "--alpha", "0.5", "--p", "0.75"])
    assert code == 0
    info = json.loads(stdout)
    assert info["law"] == "geometric-convolution"
    assert info["mean_exact"] == "8/3"
    assert info["variance_exact"] == "32/9"
    assert info["mean"] == pytest.approx(8.0 / 3.0, rel=1e-12)


def test_moments_rejects_bad_order(capsys):
    code, _, stderr = _run(capsys, ["moments", "--alpha", "0.5", "--order", "9"])
    assert code == 2
    assert "error:" in stderr
    code, _, stderr = _run(capsys, ["moments", "--alpha", "0.5", "--order", "0"])
    assert code == 2
    assert "error:" in stderr


# --- simulate-tsp ---------------------------------------------------------------


def test_simulate_tsp_exponential_regime(tmp_path, capsys):
    out = str(tmp_path / "trials.csv")
    code, stdout, _ = _run(
        capsys,
        [
            "simulate-tsp",
            "--alpha",
            "1.5",
            "--t",
            "200",
            "--runs",
            "400",
            "--seed",
            "11",
            "--out",
            out,
        ],
    )
    assert code == 0
    info = json.loads(stdout)
    assert info["meta"]["limit_law"] == "unit exponential"
    assert info["statistic"] >= 0.0
    lines = open(out).read().splitlines()
    assert lines[0] == "trial,y,i,normalized"
    assert len(lines) == 401


def test_simulate_tsp_rejects_nonpositive_threshold(tmp_path, capsys):
    out = str(tmp_path / "x.csv")
    code, _, stderr = _run(
        capsys,
        ["simulate-tsp", "--alpha", "1.5", "--t", "-3", "--runs", "10", "--out", out],
    )
    assert code == 2
    assert "error:" in stderr


# --- sample ---------------------------------------------------------------------


def test_sample_motzkin_csv_and_rerun_identical(tmp_path, capsys):
    out1 = tmp_path / "a.csv"
    out2 = tmp_path / "b.csv"
    argv = ["sample", "--model", "motzkin", "--n", "60", "--runs", "25", "--seed", "5"]
    code, stdout, _ = _run(capsys, argv + ["--out", str(out1)])
    assert code == 0
    summary = json.loads(stdout)
    assert summary["mean_normalized"] >= 1.0
    code, _, _ = _run(capsys, argv + ["--out", str(out2)])
    assert code == 0
    assert out1.read_bytes() == out2.read_bytes()
    lines = out1.read_text().splitlines()
    assert lines[0] == "run,total_ops,attempts"
    assert len(lines) == 26


def test_sample_sizeproc_reports_hit_fraction(tmp_path, capsys):
    out = str(tmp_path / "s.csv")
    code, stdout, _ = _run(
        capsys,
        [
            "sample",
            "--model",
            "sizeproc",
            "--n",
            "40",
            "--runs",
            "30",
            "--seed",
            "6",
            "--out",
            out,
            "--policy",
            "restart-at-sqrt",
        ],
    )
    assert code == 0
    summary = json.loads(stdout)
    assert summary["policy"] == "restart-at-sqrt"
    assert 0.0 < summary["exact_hit_fraction"] <= 1.0


def test_sample_wedge_passes_theta(tmp_path, capsys):
    out = str(tmp_path / "w.csv")
    code, stdout, _ = _run(
        capsys,
        [
            "sample",
            "--model",
            "wedge",
            "--n",
            "30",
            "--runs",
            "10",
            "--seed",
            "7",
            "--out",
            out,
            "--theta",
            str(math.pi),
        ],
    )
    assert code == 0
    assert json.loads(stdout)["theta"] == pytest.approx(math.pi)


def test_sample_rejects_unknown_model(tmp_path, capsys):
    with pytest.raises(SystemExit):
        cli.main(["sample", "--model", "pentagon", "--n", "10", "--out", "x.csv"])
    capsys.readouterr()


# --- validate -------------------------------------------------------------------


def _fake_rows(all_pass):
    rows = [
        {"test": "row-a", "statistic": 0.1, "threshold": 0.5, "pass": True, "meta": {}},
        {
            "test": "row-b",
            "statistic": 0.9,
            "threshold": 0.5,
            "pass": all_pass,
            "meta": {},
        },
    ]
    return rows


def test_validate_exit_codes_and_report(tmp_path, capsys, monkeypatch):
    report = tmp_path / "report.json"
    monkeypatch.setattr(cli, "_suite_rows", lambda suite, seed: _fake_rows(True))
    code, stdout, _ = _run(capsys, ["validate", "--out", str(report)])
    assert code == 0
    assert [r["test"] for r in json.loads(stdout)] == ["row-a", "row-b"]
    assert json.loads(report.read_text())[1]["pass"] is True

    monkeypatch.setattr(cli, "_suite_rows", lambda suite, seed: _fake_rows(False))
    code, stdout, _ = _run(capsys, ["validate"])
    assert code == 1
    assert json.loads(stdout)[1]["pass"] is False


def test_validate_suite_choice_is_forwarded(capsys, monkeypatch):
    seen = {}

    def spy(suite, seed):
        seen["suite"], seen["seed"] = suite, seed
        return _fake_rows(True)

    monkeypatch.setattr(cli, "_suite_rows", spy)
    code, _, _ = _run(capsys, ["validate", "--suite", "full", "--seed", "99"])
    assert code == 0
    assert seen == {"suite": "full", "seed": 99}


# --- module execution -------------------------------------------------------------


def test_package_is_runnable_as_module():
    import dmlaw.__main__  # noqa: F401  (console entry mirrors dmlaw.cli:main)

    assert callable(cli.main)
