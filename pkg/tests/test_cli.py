"""Command-line pipeline: report schema, exit codes, bad input."""

import json
import os

from regulab.cli import main


def _write_config(tmp_path, **extra):
    cfg = {"example": "fermat3", "seed": 3}
    cfg.update(extra)
    path = os.path.join(tmp_path, "config.json")
    with open(path, "w") as fh:
        json.dump(cfg, fh)
    return path


def test_stage_subset_report(tmp_path, capsys):
    tmp = str(tmp_path)
    cfg = _write_config(tmp, stages=["verify", "homology", "periods"])
    out = os.path.join(tmp, "out")
    code = main(["all", "--config", cfg, "--out", out])
    assert code == 0
    with open(os.path.join(out, "report.json")) as fh:
        report = json.load(fh)
    assert report["schema_version"] == 1
    assert report["passed"] is True
    assert set(report["stages"]) == {"verify", "homology", "periods"}
    for st in report["stages"].values():
        assert st["status"] == "ran"
        assert all(v["pass"] for v in st["verdicts"])
    lines = capsys.readouterr().out.strip().splitlines()
    assert any("pass" in line for line in lines)


def test_single_stage_pulls_dependencies(tmp_path):
    tmp = str(tmp_path)
    cfg = _write_config(tmp)
    out = os.path.join(tmp, "out")
    code = main(["periods", "--config", cfg, "--out", out])
    assert code == 0
    with open(os.path.join(out, "report.json")) as fh:
        report = json.load(fh)
    assert "homology" in report["stages"]


def test_missing_config_is_exit_1(tmp_path):
    code = main(["verify", "--config",
                 os.path.join(str(tmp_path), "nope.json")])
    assert code == 1


def test_unknown_example_is_exit_1(tmp_path):
    tmp = str(tmp_path)
    cfg = _write_config(tmp, example="not-a-curve")
    code = main(["verify", "--config", cfg,
                 "--out", os.path.join(tmp, "out")])
    assert code == 1
