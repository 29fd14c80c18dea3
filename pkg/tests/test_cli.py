import json
import math
import os

import pytest

from entroloss.cli import run


def write_config(tmp_path, payload, name="config.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def read_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def test_quantity_entropy(tmp_path, capsys):
    cfg = write_config(
        tmp_path,
        {
            "command": "quantity",
            "quantity": {"name": "entropy", "state": {"kind": "diag", "values": [0.5, 0.5]}},
            "output": {"dir": str(tmp_path), "format": "both"},
        },
    )
    assert run(["--config", cfg]) == 0
    record = read_json(tmp_path / "quantity.json")
    assert record["value"] == pytest.approx(0.693147, abs=1e-6)
    assert record["provenance"] == "exact"


def test_quantity_mutual_information_bell(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "quantity",
            "quantity": {"name": "mutual_information", "state": {"kind": "bell"}},
            "output": {"dir": str(tmp_path), "format": "json"},
        },
    )
    assert run(["--config", cfg]) == 0
    record = read_json(tmp_path / "quantity.json")
    assert record["value"] == pytest.approx(1.386294, abs=1e-6)


def test_quantity_formation_bell_flags_direction(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "quantity",
            "seed": 2,
            "quantity": {"name": "entanglement_of_formation", "state": {"kind": "bell"}},
            "output": {"dir": str(tmp_path), "format": "both"},
        },
    )
    assert run(["--config", cfg]) == 0
    record = read_json(tmp_path / "quantity.json")
    assert record["value"]["direction"] == "upper_bound"
    assert record["value"]["value"] == pytest.approx(math.log(2.0), abs=1e-6)


def test_sequence_command(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "sequence",
            "sequence": {
                "family": "sharp",
                "params": {"energy": 1.0},
                "grid": [2**k for k in range(4, 11)],
                "functionals": ["entropy", "pinched_entropy"],
            },
            "output": {"dir": str(tmp_path), "format": "both"},
        },
    )
    assert run(["--config", cfg]) == 0
    data = read_json(tmp_path / "sequence_sharp.json")
    assert "entropy" in data["estimates"]
    assert data["estimates"]["entropy"]["loss_closed_form"] is not None
    assert (tmp_path / "sequence_sharp.csv").exists()


def test_sequence_command_lifted_family(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "sequence",
            "sequence": {
                "family": "sharp_lifted",
                "params": {"energy": 1.0},
                "grid": [2**k for k in range(4, 11)],
                "functionals": ["mutual_information", "marginal_entropy"],
            },
            "output": {"dir": str(tmp_path), "format": "json"},
        },
    )
    assert run(["--config", cfg]) == 0
    data = read_json(tmp_path / "sequence_sharp_lifted.json")
    mi = data["estimates"]["mutual_information"]
    marg = data["estimates"]["marginal_entropy"]
    assert mi["loss_closed_form"] == pytest.approx(2 * marg["loss_closed_form"], abs=1e-10)


def test_suite_command_writes_reports(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "suite",
            "suite": {"ids": ["P4"], "params": {"energy": 1.0}},
            "output": {"dir": str(tmp_path), "format": "both"},
        },
    )
    assert run(["--config", cfg]) == 0
    report = read_json(tmp_path / "P4_report.json")
    assert report["passed"] is True
    assert (tmp_path / "P4_checks.csv").exists()
    assert (tmp_path / "P4_series.csv").exists()


def test_report_command(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "suite",
            "suite": {"ids": ["P4", "C1"]},
            "output": {"dir": str(tmp_path), "format": "json"},
        },
    )
    assert run(["--config", cfg]) == 0
    rep_cfg = write_config(
        tmp_path,
        {"command": "report", "report": {"dir": str(tmp_path)}, "output": {"dir": str(tmp_path)}},
        name="report.json",
    )
    assert run(["--config", rep_cfg]) == 0
    summary = read_json(tmp_path / "summary.json")
    assert {row["suite_id"] for row in summary["suites"]} == {"P4", "C1"}


def test_report_missing_artifacts(tmp_path):
    empty = tmp_path / "empty"
    empty.mkdir()
    cfg = write_config(
        tmp_path,
        {"command": "report", "report": {"dir": str(empty)}, "output": {"dir": str(tmp_path)}},
    )
    assert run(["--config", cfg]) == 2


def test_unknown_key_rejected(tmp_path):
    cfg = write_config(tmp_path, {"command": "quantity", "mystery": 1})
    assert run(["--config", cfg]) == 2


def test_bad_command_rejected(tmp_path):
    cfg = write_config(tmp_path, {"command": "dance"})
    assert run(["--config", cfg]) == 2


def test_malformed_json_reports_line(tmp_path, capsys):
    path = tmp_path / "broken.json"
    path.write_text('{"command": "quantity",\n  bad}')
    assert run(["--config", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_unknown_suite_id(tmp_path):
    cfg = write_config(tmp_path, {"command": "suite", "suite": {"ids": ["NOPE"]}})
    assert run(["--config", cfg, "--out", str(tmp_path)]) == 2


def test_reruns_byte_identical(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "suite",
            "seed": 9,
            "suite": {"ids": ["P4", "T1", "C7"]},
            "output": {"format": "both"},
        },
    )
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert run(["--config", cfg, "--out", str(out1)]) == 0
    assert run(["--config", cfg, "--out", str(out2)]) == 0
    for name in sorted(os.listdir(out1)):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_full_registry_summary_has_fourteen_rows(tmp_path):
    cfg = write_config(
        tmp_path,
        {"command": "suite", "suite": {"ids": "all"}, "output": {"format": "json"}},
    )
    out = tmp_path / "all"
    assert run(["--config", cfg, "--out", str(out)]) == 0
    rep_cfg = write_config(
        tmp_path,
        {"command": "report", "report": {"dir": str(out)}, "output": {"dir": str(out)}},
        name="rollup.json",
    )
    assert run(["--config", rep_cfg]) == 0
    summary = read_json(out / "summary.json")
    assert len(summary["suites"]) >= 14
    assert all(row["status"] == "pass" for row in summary["suites"])


def test_seed_flag_overrides_config(tmp_path):
    cfg = write_config(
        tmp_path,
        {
            "command": "quantity",
            "seed": 1,
            "quantity": {
                "name": "entanglement_of_formation",
                "state": {"kind": "bell"},
            },
            "output": {"format": "json"},
        },
    )
    assert run(["--config", cfg, "--out", str(tmp_path), "--seed", "99"]) == 0
