import json
import pathlib

import numpy as np
import pytest

from fracou import lse
from fracou.cli import main
from fracou.fou import read_path_csv

DATA = pathlib.Path(__file__).parent / "data"

SIM_ARGS = [
    "simulate",
    "--theta", "1.0",
    "--hurst", "0.7",
    "--n", "64",
    "--delta", "0.1",
    "--seed", "7",
    "--stream", "3",
]


def run_cli(args):
    return main(args)


def test_missing_required_flag_exits_2(capsys):
    assert run_cli(["simulate", "--theta", "1.0"]) == 2


def test_unknown_subcommand_exits_2(capsys):
    assert run_cli(["frobnicate"]) == 2


def test_delta_gamma_mutually_exclusive(capsys):
    assert (
        run_cli(SIM_ARGS + ["--gamma", "0.6", "--out", "-"]) == 2
    )


def test_simulate_golden_csv(tmp_path, capsys):
    out = tmp_path / "path.csv"
    assert run_cli(SIM_ARGS + ["--out", str(out)]) == 0
    golden = (DATA / "golden_path.csv").read_bytes()
    assert out.read_bytes() == golden


def test_simulate_to_stdout(capsys):
    assert run_cli(SIM_ARGS + ["--out", "-"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "i,t,x"
    assert len(lines) == 66


def test_simulate_warns_above_clt_range(capsys):
    args = list(SIM_ARGS)
    args[args.index("0.7")] = "0.8"
    assert run_cli(args + ["--out", "-"]) == 0
    assert "H >= 3/4" in capsys.readouterr().err


def test_simulate_invalid_theta_exits_2(capsys):
    args = list(SIM_ARGS)
    args[args.index("1.0")] = "-1.0"
    assert run_cli(args + ["--out", "-"]) == 2


def test_estimate_roundtrip(tmp_path, capsys):
    out = tmp_path / "path.csv"
    assert run_cli(SIM_ARGS + ["--out", str(out)]) == 0
    capsys.readouterr()
    assert run_cli(["estimate", "--in", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    x, delta = read_path_csv(str(out))
    expect = lse.estimate_series(x, delta)
    assert doc["theta_hat"] == pytest.approx(expect.theta_hat, rel=1e-12)
    assert doc["n"] == 64
    assert doc["delta"] == pytest.approx(0.1, rel=1e-12)
    assert set(doc) == {"theta_hat", "numerator", "denominator", "n", "delta"}


def test_estimate_missing_file_exits_2(capsys):
    assert run_cli(["estimate", "--in", "/nonexistent/path.csv"]) == 2


def test_theory_json_keys(capsys):
    args = ["theory", "--theta", "1.0", "--hurst", "0.7", "--n", "1000", "--gamma", "0.6"]
    assert run_cli(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert set(doc) == {
        "alpha_n",
        "alpha_limit_rate",
        "a_theta_h",
        "ef2",
        "ef2_source",
        "lambda_n",
        "sigma_h2",
        "budget",
    }
    assert doc["budget"] is None
    assert doc["ef2_source"] == "asymptotic"
    assert doc["alpha_limit_rate"] == pytest.approx(0.6210846722521527, rel=1e-12)


def test_theory_budget_block(capsys):
    args = [
        "theory", "--theta", "1.0", "--hurst", "0.7", "--n", "1000",
        "--delta", "0.05", "--eta", "0.1", "--dlt", "0.1",
    ]
    assert run_cli(args) == 0
    doc = json.loads(capsys.readouterr().out)
    budget = doc["budget"]
    assert {"t1", "t2", "t3", "t4", "t5", "t6", "t7", "total", "constant_c"} <= set(budget)
    assert budget["constant_c"] == 1
    assert budget["total"] == pytest.approx(
        sum(budget[f"t{i}"] for i in range(1, 8)), rel=1e-12
    )


def test_theory_eta_without_dlt_exits_2(capsys):
    args = ["theory", "--theta", "1.0", "--hurst", "0.7", "--n", "1000",
            "--delta", "0.05", "--eta", "0.1"]
    assert run_cli(args) == 2


def test_theory_pole_exits_2(capsys):
    args = ["theory", "--theta", "1.0", "--hurst", "0.75", "--n", "1000", "--gamma", "0.6"]
    assert run_cli(args) == 2


def test_theory_gamma_outside_window_exits_2(capsys):
    args = ["theory", "--theta", "1.0", "--hurst", "0.7", "--n", "1000", "--gamma", "0.2"]
    assert run_cli(args) == 2
    assert "admissible interval" in capsys.readouterr().err


def _mc_config(tmp_path, **overrides):
    doc = {
        "theta": 1.0,
        "hurst": 0.6,
        "replications": 100,
        "seed": 11,
        "oversample": 2,
        "schedule": [{"n": 16, "delta": 0.25}],
    }
    doc.update(overrides)
    cfg = tmp_path / "mc.json"
    cfg.write_text(json.dumps(doc))
    return cfg


def test_mc_smoke_and_csv(tmp_path, capsys):
    out_json = tmp_path / "report.json"
    out_csv = tmp_path / "report.csv"
    cfg = _mc_config(tmp_path, out_json=str(out_json), out_csv=str(out_csv))
    assert run_cli(["mc", str(cfg), "--threads", "1"]) == 0
    report = json.loads(out_json.read_text())
    assert report["replications"] == 100
    assert len(report["schemes"]) == 1
    lines = out_csv.read_text().strip().splitlines()
    assert lines[0] == "n,delta,T,mean,sd,bias,ks,var_ratio,degenerate,budget_total,seconds"
    assert len(lines) == 2
    cells = lines[1].split(",")
    assert cells[0] == "16"
    assert float(cells[2]) == pytest.approx(4.0)
    assert cells[9] == ""  # no budget configured


def test_mc_unknown_key_exits_2(tmp_path, capsys):
    cfg = _mc_config(tmp_path, typo_key=1)
    assert run_cli(["mc", str(cfg)]) == 2
    assert "typo_key" in capsys.readouterr().err


def test_mc_missing_key_exits_2(tmp_path, capsys):
    doc = {"theta": 1.0, "hurst": 0.6, "schedule": [{"n": 16, "delta": 0.25}]}
    cfg = tmp_path / "mc.json"
    cfg.write_text(json.dumps(doc))
    assert run_cli(["mc", str(cfg)]) == 2


def test_mc_empty_schedule_exits_2(tmp_path, capsys):
    cfg = _mc_config(tmp_path, schedule=[])
    assert run_cli(["mc", str(cfg)]) == 2


def test_mc_schedule_and_gamma_conflict_exits_2(tmp_path, capsys):
    cfg = _mc_config(tmp_path, gamma=0.6)
    assert run_cli(["mc", str(cfg)]) == 2


def test_mc_gamma_outside_window_exits_2(tmp_path, capsys):
    cfg = _mc_config(tmp_path)
    doc = json.loads(cfg.read_text())
    del doc["schedule"]
    doc["n_list"] = [16]
    doc["gamma"] = 0.9
    cfg.write_text(json.dumps(doc))
    assert run_cli(["mc", str(cfg)]) == 2


def test_mc_malformed_json_exits_2(tmp_path, capsys):
    cfg = tmp_path / "mc.json"
    cfg.write_text("{not json")
    assert run_cli(["mc", str(cfg)]) == 2


def test_mc_thread_invariance(tmp_path, capsys):
    outs = []
    for threads, name in ((1, "a.json"), (3, "b.json")):
        out_json = tmp_path / name
        cfg = _mc_config(tmp_path, out_json=str(out_json))
        assert run_cli(["mc", str(cfg), "--threads", str(threads)]) == 0
        doc = json.loads(out_json.read_text())
        for row in doc["schemes"]:
            row.pop("seconds", None)
        outs.append(json.dumps(doc, sort_keys=True))
    assert outs[0] == outs[1]
