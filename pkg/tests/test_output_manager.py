"""
Tests for organized file output.
"""

import json

import pandas as pd

from snevily_verifier.core.output_manager import OutputManager


def test_directories_created(tmp_path):
    manager = OutputManager(str(tmp_path / "out"))
    for category in ("witnesses", "reports", "metrics"):
        assert (tmp_path / "out" / category).is_dir()


def test_save_and_list_runs(tmp_path):
    manager = OutputManager(str(tmp_path))
    witness_path = manager.save_witness({"kind": "theorem1", "group": "3"}, "theorem1_z3")
    manager.save_sweep_report({"suite": "lemma4", "passed": True}, "lemma4")
    metrics_path = manager.save_sweep_metrics(
        pd.DataFrame([{"check": "unique_signature", "instances": 4, "violations": 0}]), "lemma4")

    assert witness_path.endswith("witnesses/theorem1_z3_witness.json")
    with open(witness_path) as f:
        assert json.load(f)["group"] == "3"
    assert pd.read_csv(metrics_path).loc[0, "instances"] == 4

    assert manager.list_all_runs() == ["lemma4", "theorem1_z3"]
    files = manager.get_run_files("lemma4")
    assert len(files["reports"]) == 1
    assert len(files["metrics"]) == 1
    assert files["witnesses"] == []

    summary = manager.get_output_summary()
    assert summary["total_runs"] == 2
    assert summary["output_directories"] == {"witnesses": 1, "reports": 1, "metrics": 1}
    assert "runs=2" in str(manager)


def test_saving_is_byte_identical(tmp_path):
    manager = OutputManager(str(tmp_path))
    first = manager.save_witness({"b": 1, "a": [1, 2]}, "run")
    with open(first) as f:
        content = f.read()
    manager.save_witness({"a": [1, 2], "b": 1}, "run")
    with open(first) as f:
        assert f.read() == content


def test_timestamped_names(tmp_path):
    manager = OutputManager(str(tmp_path), include_timestamps=True)
    path = manager.save_witness({}, "run")
    assert path.endswith(".json")
    assert "run_witness_" in path
    assert manager.list_all_runs() == ["run"]
