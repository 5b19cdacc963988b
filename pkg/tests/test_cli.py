import json

import pytest

from rdf_lab.cli import main
from rdf_lab.io import read_csv

FAST = ["--n", "1024", "--period", "32", "--trials", "3"]


def test_verify_exit_zero(tmp_path, capsys):
    assert main(["verify", "--seed", "7", "--out", str(tmp_path)]) == 0
    assert (tmp_path / "parseval.json").exists()
    assert (tmp_path / "identities.json").exists()
    manifest = json.loads((tmp_path / "manifest_verify.json").read_text())
    assert manifest["passed"] is True
    assert manifest["config_hash"] in capsys.readouterr().out


def test_sweep_csv_header(tmp_path):
    code = main(
        ["sweep", "--space", "F:4:2:0", "--op", "plain", "--M", "4,8", "--out", str(tmp_path), *FAST]
    )
    assert code == 0
    header, rows = read_csv(tmp_path / "sweep.csv")
    assert header == ["space", "op", "M", "ratio_max", "stable"]
    assert [r[:3] for r in rows] == [["F:4:2:0", "plain", "4"], ["F:4:2:0", "plain", "8"]]


def test_counterexample_files(tmp_path, capsys):
    assert main(["counterexample", "besov", "--M", "4,8,16,32", "--out", str(tmp_path)]) == 0
    assert "slope" in capsys.readouterr().out
    rep = json.loads((tmp_path / "counterexample_besov.json").read_text())
    assert rep["passed"] is True
    header, rows = read_csv(tmp_path / "counterexample_besov_sequence.csv")
    assert header[0] == "M" and len(rows) >= 5


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"n": 1024, "period": 32.0, "trials": 3, "seed": 5}))
    assert main(["pointwise", "--config", str(cfg), "--out", str(tmp_path / "o")]) == 0
    saved = json.loads((tmp_path / "o" / "config.json").read_text())
    assert saved["seed"] == 5 and saved["n"] == 1024


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["verify", "--nope"],
        ["verify", "--delta", "0.6"],
        ["sweep", "--space", "F:4:inf:0.5", "--op", "plain"],
        ["sweep", "--space", "F:4:2"],
        ["pointwise", "--M", "4,8"],
        [],
    ],
)
def test_config_errors_exit_two(argv, tmp_path):
    assert main([*argv, "--out", str(tmp_path)] if argv and argv[0] != "bogus" else argv) == 2


def test_region_named_on_error(tmp_path, capsys):
    main(["sweep", "--space", "F:4:inf:0.5", "--op", "plain", "--out", str(tmp_path)])
    assert "region" in capsys.readouterr().err


def test_bad_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"delta": 0.6, "colour": "red"}))
    assert main(["verify", "--config", str(cfg), "--out", str(tmp_path)]) == 2
    assert "colour" in capsys.readouterr().err


def test_failing_check_exits_one(tmp_path):
    # with M starting at 2 the rotated companion has not yet reached its plateau
    assert main(["counterexample", "bmo", "--M", "2,4,8", "--out", str(tmp_path)]) == 1
