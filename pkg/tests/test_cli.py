"""
Tests for the command-line interface.
"""

import json

import pytest

from snevily_verifier.cli import main


@pytest.fixture
def run(capsys, tmp_path):
    """Run the CLI with an isolated settings file; returns (exit code, stdout)"""
    def _run(*args):
        code = main(["--config", str(tmp_path / "absent.json"), *args])
        return code, capsys.readouterr().out
    return _run


def test_group_info(run):
    code, out = run("group", "info", "--group", "2,3")
    assert code == 0
    assert out.splitlines()[0] == "order 6, exponent 6"
    assert "(1,2)" in out


def test_group_info_json(run):
    code, out = run("group", "info", "--group", "2,3,9", "--format", "json")
    data = json.loads(out)
    assert (data["order"], data["exponent"]) == (54, 18)
    assert len(data["elements"]) == 54


def test_field_build(run):
    code, out = run("field", "build", "--group", "3", "--field", "gf:2")
    assert code == 0
    assert "q 4" in out.splitlines()
    assert "zeta [0,1]" in out.splitlines()


def test_chartable(run):
    code, out = run("chartable", "--group", "2,2", "--field", "gf:3")
    assert code == 0
    assert out.splitlines()[-1] == "nonzero"
    code, out = run("chartable", "--group", "3", "--field", "gf:2", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "(0),(1),(2)"


def test_theorem1_witness(run):
    code, out = run("theorem1", "--group", "3", "--field", "gf:2", "--set-a", "(0);(1)", "--set-b", "(0);(1)")
    assert code == 0
    assert out.splitlines()[0] == "witness {(0),(1)}"
    assert "verified true" in out


def test_theorem2_witness(run):
    code, out = run("theorem2", "--group", "5", "--chars-x", "(0);(1)", "--chars-psi", "(0);(4)",
                    "--format", "json")
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_lemma4(run):
    code, out = run("lemma4", "--group", "3", "--field", "gf:2", "--set-a", "(0);(1);(2)",
                    "--set-b", "(0);(1);(2)")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "pi [0,2,1]"
    assert lines[1] == "signature [0,0,0]"
    assert "unique" in lines
    assert "det L at phi [1,0]" in lines


def test_snevily_none_for_z2(run):
    code, out = run("snevily", "--group", "2", "--set-a", "(0);(1)", "--set-b", "(0);(1)")
    assert code == 0
    assert out.strip() == "none"


def test_snevily_found(run):
    code, out = run("snevily", "--group", "5", "--set-a", "(0);(1)", "--set-b", "(0);(2)")
    assert code == 0
    assert out.splitlines()[0] == "pi [0,1]"


def test_poly(run):
    code, out = run("poly", "--group", "5", "--set-a", "(0);(1)", "--set-b", "(0);(2)", "--format", "json")
    assert json.loads(out)["terms"] == {"[0,3]": 1, "[1,2]": -1}
    code, out = run("poly", "--group", "5", "--set-a", "(0);(1)", "--set-b", "(0);(2)", "--mod", "2")
    assert out.splitlines() == ["[0,3] 1", "[1,2] 1"]


def test_verify_identities(run):
    code, out = run("verify", "cauchy-binet", "--trials", "3", "--seed", "5")
    assert code == 0
    assert out.startswith("PASS identities")
    code, out = run("verify", "char2", "--trials", "3")
    assert code == 0


def test_saved_witness_reverifies(run, tmp_path):
    outputs = tmp_path / "outputs"
    code, _ = run("--output-dir", str(outputs), "theorem1", "--group", "2,3", "--field", "gf:5",
                  "--set-a", "(0,0);(1,1)", "--set-b", "(0,1);(1,2)", "--save")
    assert code == 0
    witness_file = outputs / "witnesses" / "theorem1_z2x3_witness.json"
    assert witness_file.exists()
    code, out = run("verify", "witness", "--witness-file", str(witness_file))
    assert code == 0
    assert out.strip() == "verified true"

    code, out = run("--output-dir", str(outputs), "status")
    assert code == 0
    assert "Total runs: 1" in out


def test_saved_permutation_witness_reverifies(run, tmp_path):
    outputs = tmp_path / "outputs"
    run("--output-dir", str(outputs), "snevily", "--group", "7", "--set-a", "(0);(1);(2)",
        "--set-b", "(0);(3);(5)", "--save", "--run-name", "z7")
    code, out = run("verify", "witness", "--witness-file", str(outputs / "witnesses" / "z7_witness.json"))
    assert (code, out.strip()) == (0, "verified true")


def test_tampered_witness_is_a_violation(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"kind": "theorem1", "group": "3", "field": "gf:2", "set_a": [[0], [1]],
                                "set_b": [[0], [1]], "characters": [[1], [1]]}))
    code, out = run("verify", "witness", "--witness-file", str(path))
    assert (code, out.strip()) == (1, "verified false")


def test_sweep(run):
    code, out = run("sweep", "--suite", "lemma4", "--max-m", "4", "--max-k", "2")
    assert code == 0
    assert out.startswith("PASS lemma4")
    code, out = run("sweep", "--suite", "theorem3", "--max-m", "5", "--max-k", "2", "--instances", "3",
                    "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "check,group,field,instances,violations,suite"


@pytest.mark.parametrize("suite,expected", [
    ("oracle", {"max_m": 6, "max_k": 2, "instances": 3}),
    ("identities", {"max_m": 6, "max_k": 2, "trials": 3}),
    ("coherence", {"max_m": 6, "max_k": 2, "trials": 3}),
    ("theorem1", {"max_m": 6, "max_k": 2, "random_instances": 3}),
    ("lemma4", {"max_m": 6, "max_k": 2}),
])
def test_sweep_bounds_reach_the_report(run, suite, expected):
    code, out = run("sweep", "--suite", suite, "--max-m", "6", "--max-k", "2", "--instances", "3",
                    "--format", "json")
    assert code == 0
    [report] = json.loads(out)
    assert {key: report["parameters"][key] for key in expected} == expected


def test_characters_sweep_bounds(run):
    code, out = run("sweep", "--suite", "characters", "--max-m", "4", "--instances", "1", "--format", "json")
    assert code == 0
    [report] = json.loads(out)
    assert (report["parameters"]["max_m"], report["parameters"]["trials"]) == (4, 1)
    code, _ = run("sweep", "--suite", "characters", "--max-k", "2")
    assert code == 2


def test_theorem3_sweep_lists_its_groups(run):
    code, out = run("sweep", "--suite", "theorem3", "--max-m", "15", "--max-k", "1", "--instances", "0",
                    "--format", "json")
    assert code == 0
    [report] = json.loads(out)
    assert report["parameters"]["orders"] == [3, 5, 7, 9, 15]
    assert "3,5" in report["parameters"]["groups"]
    assert "15" in report["parameters"]["groups"]


def test_output_is_deterministic(run):
    args = ("sweep", "--suite", "identities", "--instances", "4", "--format", "json")
    assert run(*args) == run(*args)


@pytest.mark.parametrize("args", [
    ("group", "info", "--group", "2,x"),
    ("theorem1", "--group", "3", "--set-a", "(0);(5)", "--set-b", "(0);(1)"),
    ("field", "build", "--group", "3", "--field", "gf:3"),
    ("theorem1", "--group", "3", "--set-a", "(0);(1)", "--set-b", "(0)"),
    ("group", "info", "--group", "3", "--format", "csv"),
    ("verify", "witness"),
])
def test_errors_exit_with_usage_code(run, args):
    code, _ = run(*args)
    assert code == 2


def test_argparse_usage_error(run):
    with pytest.raises(SystemExit) as excinfo:
        run("theorem1", "--group", "3")
    assert excinfo.value.code == 2
