import json
import subprocess
import sys

from confheat.cli import main, run_experiment, validate_config


def write_config(tmp_path, doc, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_validate_minimal_config_fills_defaults():
    doc = {"experiment": "sample-poisson", "params": {"dim": 2, "radius": 1.0, "intensity": 1.0}}
    config, errors = validate_config(json.dumps(doc))
    assert errors == []
    assert config["seed"] == 0
    assert config["replicas"] == 20000
    assert config["output"] == "report"
    fm = {"experiment": "flat-metric", "params": {"g1": {"dim": 1, "window_radius": 1, "points": []},
                                                  "g2": {"dim": 1, "window_radius": 1, "points": []}}}
    config2, errors2 = validate_config(json.dumps(fm))
    assert errors2 == []
    assert config2["params"]["i_max"] == 20 and config2["params"]["i"] == 5


def test_validate_reports_all_errors():
    doc = {
        "experiment": "semigroup-exp",
        "bogus": 1,
        "params": {"dim": 2, "t": -0.5, "phi": {"family": "gaussian_bump", "amp": -0.3, "width": 1.0},
                   "nonsense": True},
    }
    config, errors = validate_config(json.dumps(doc))
    assert config is None
    assert len(errors) >= 3  # unknown top key, bad t, unknown param
    assert any("bogus" in e for e in errors)
    assert any("params.t" in e for e in errors)
    assert any("params.nonsense" in e for e in errors)


def test_validate_unknown_experiment_and_syntax():
    config, errors = validate_config("{not json")
    assert config is None and "syntax error" in errors[0]
    config, errors = validate_config(json.dumps({"experiment": "warp-drive"}))
    assert config is None and any("unknown experiment" in e for e in errors)


def test_run_semigroup_exp_zero_phi_passes(tmp_path):
    doc = {
        "experiment": "semigroup-exp",
        "seed": 3,
        "replicas": 500,
        "output": str(tmp_path / "zero"),
        "params": {
            "dim": 1,
            "t": 0.5,
            "phi": {"family": "gaussian_bump", "amp": 0.0, "width": 1.0},
            "gamma": {"dim": 1, "window_radius": 2.0, "points": [[[0.5], 1]]},
        },
    }
    config, errors = validate_config(json.dumps(doc))
    assert errors == []
    code, summary = run_experiment(config)
    assert code == 0 and summary["verdict"] == "pass"
    rows = summary["results"]
    assert any(r["measurement"] == "mc_estimate" and r["value"] == 1.0 for r in rows)
    assert (tmp_path / "zero.csv").exists() and (tmp_path / "zero.json").exists()


def test_run_rho_infinite_value_passes(tmp_path):
    doc = {
        "experiment": "rho",
        "output": str(tmp_path / "rho"),
        "params": {
            "g1": {"dim": 1, "window_radius": 2.0, "points": [[[0.0], 1]]},
            "g2": {"dim": 1, "window_radius": 2.0, "points": []},
        },
    }
    config, errors = validate_config(json.dumps(doc))
    assert errors == []
    code, summary = run_experiment(config)
    assert code == 0 and summary["verdict"] == "pass"
    text = (tmp_path / "rho.json").read_text()
    assert '"inf"' in text
    csv_text = (tmp_path / "rho.csv").read_text()
    assert "rho,inf" in csv_text.replace("\r\n", "\n")


def test_run_invariance_pad_too_small_is_error(tmp_path):
    doc = {
        "experiment": "invariance",
        "replicas": 100,
        "output": str(tmp_path / "inv"),
        "params": {"dim": 2, "functional": "count", "t": 0.5, "inner_radius": 1.0,
                   "outer_radius": 1.2, "leakage_tol": 1e-6},
    }
    config, errors = validate_config(json.dumps(doc))
    assert errors == []
    code, summary = run_experiment(config)
    assert code == 2 and "error" in summary


def test_cli_main_run_and_overrides(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {
            "experiment": "tail-tau",
            "seed": 9,
            "replicas": 20000,
            "params": {"dim": 2, "t": 1.0, "r_list": [0.5, 2.0], "check_certificate": False},
        },
    )
    out_prefix = str(tmp_path / "tt")
    code = main(["run", cfg, "--out", out_prefix, "--set", "params.t=0.5"])
    assert code == 0
    summary = json.loads((tmp_path / "tt.json").read_text())
    assert summary["config"]["params"]["t"] == 0.5
    assert summary["verdict"] == "pass"


def test_cli_validate_subcommand(tmp_path, capsys):
    cfg = write_config(
        tmp_path, {"experiment": "sample-poisson", "params": {"dim": 1, "radius": 1.0, "intensity": 2.0}}
    )
    assert main(["validate", cfg]) == 0
    bad = write_config(tmp_path, {"experiment": "sample-poisson", "params": {"dim": 1}}, "bad.json")
    assert main(["validate", bad]) == 2


def test_cli_exit_status_contract(tmp_path):
    # deliberately unsatisfiable statistical check -> nonzero exit
    cfg = write_config(
        tmp_path,
        {
            "experiment": "collision",
            "seed": 1,
            "replicas": 400,
            "output": str(tmp_path / "c"),
            "params": {"dim": 2, "starts": [[0.0, 0.0], [0.5, 0.0]], "horizon": 0.5, "dt": 0.01,
                       "epsilon_list": [0.5, 0.4, 0.39]},
        },
    )
    code = main(["run", cfg])
    summary = json.loads((tmp_path / "c.json").read_text())
    assert (code == 0) == (summary["verdict"] == "pass")


def test_cli_byte_identical_reports_and_thread_invariance(tmp_path):
    doc = {
        "experiment": "semigroup-exp",
        "seed": 12,
        "replicas": 4000,
        "params": {
            "dim": 1,
            "t": 0.4,
            "phi": {"family": "gaussian_bump", "amp": -0.4, "width": 1.0},
            "gamma": {"dim": 1, "window_radius": 2.0, "points": [[[0.0], 1], [[1.0], 2]]},
        },
    }
    cfg = write_config(tmp_path, doc)
    for sub in ("a", "b"):
        (tmp_path / sub).mkdir()
    code_a = main(["run", cfg, "--out", str(tmp_path / "a" / "r")])
    code_b = main(["run", cfg, "--out", str(tmp_path / "b" / "r"), "--threads", "4"])
    assert code_a == code_b == 0
    csv_a = (tmp_path / "a" / "r.csv").read_bytes()
    csv_b = (tmp_path / "b" / "r.csv").read_bytes()
    json_a = (tmp_path / "a" / "r.json").read_bytes()
    json_b = (tmp_path / "b" / "r.json").read_bytes()
    # outputs identical except for the echoed output prefix inside the JSON
    assert csv_a == csv_b
    assert json_a.replace(b"/a/r", b"/X/r") == json_b.replace(b"/b/r", b"/X/r")


def test_capacity_error_surfaces_as_exit_2(tmp_path):
    # a 25-point permanent exceeds the hard enumeration limit
    pts = [[float(i)] for i in range(25)]
    cfg = write_config(
        tmp_path,
        {"experiment": "permanent", "output": str(tmp_path / "p"),
         "params": {"eta": pts, "theta": pts, "t": 0.5}},
    )
    assert main(["run", cfg]) == 2


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "confheat.cli", "--help"], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert "run" in proc.stdout and "validate" in proc.stdout
