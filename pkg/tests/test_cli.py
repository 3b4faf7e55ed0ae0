"""Command-line interface: outputs, determinism and exit codes."""

import json

import pytest

from fk3hh.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_bracket_with_grading_class(capsys):
    code, rep = run_json(capsys, "bracket", "X_8", "X_14")
    assert code == 0
    assert rep["result"]["value"] == "6*X14"      # [PAPER]
    assert rep["result"]["coordinates"] == ["6"]


def test_bracket_of_central_classes(capsys):
    code, rep = run_json(capsys, "bracket", "X_1", "X_2")
    assert code == 0 and rep["result"]["value"] == "0"   # [TRIVIAL]


@pytest.mark.parametrize("method", ["hh1", "oracle"])
def test_bracket_methods_agree(capsys, method):
    _, rep = run_json(capsys, "bracket", "X_4", "X_12", "--method", method)
    assert rep["result"]["value"] == "2*X1*X9"


def test_bracket_method_that_does_not_apply_is_an_error(capsys):
    code, _, err = run(capsys, "bracket", "X_9", "X_10", "--method", "hh0")
    assert code == 2 and "degree-zero" in err


def test_cup_command(capsys):
    _, rep = run_json(capsys, "cup", "X_8", "X_13")
    assert rep["result"]["value"] == "6*X3*X14"


def test_polynomial_arguments(capsys):
    _, rep = run_json(capsys, "bracket", "X_8", "X_9*X_10")
    assert rep["result"]["value"] == "4*X9*X10"


def test_table_json_is_complete_and_byte_identical(capsys):
    code, first, _ = run(capsys, "table", "--json")
    _, second, _ = run(capsys, "table", "--json", "--jobs", "2")
    assert code == 0
    assert first == second
    rep = json.loads(first)
    assert rep["result"]["count"] == 196
    assert {e["status"] for e in rep["result"]["entries"]} == {"match"}


def test_human_output(capsys):
    code, out, _ = run(capsys, "dims")
    assert code == 0 and "HH^0" in out and "PASS" in out


def test_rejects_small_characteristic(capsys):
    code, _, err = run(capsys, "dims", "--field", "fp:3")
    assert code == 2 and "greater than 3" in err


def test_missing_data_directory(capsys, tmp_path):
    code, _, err = run(capsys, "dims", "--data", str(tmp_path))
    assert code == 2 and "missing data file" in err


def test_failed_verification_gives_nonzero_exit(capsys, tmp_path):
    import shutil

    from fk3hh.algebra import DATA_DIR
    data = tmp_path / "data"
    shutil.copytree(DATA_DIR, data)
    path = data / "facts_liftings.json"
    raw = json.loads(path.read_text())
    raw["liftings"][0]["values"][0]["image"][0][0] = "7"
    path.write_text(json.dumps(raw))
    code, rep = run_json(capsys, "verify-facts", "--data", str(data))
    assert code == 1 and rep["checks"]["liftings"] == "fail"


def test_cache_round_trip(capsys, tmp_path):
    code, _, _ = run(capsys, "build", "--cache", str(tmp_path))
    assert code == 0
    files = list(tmp_path.glob("resolution-*.pkl"))
    assert len(files) == 1
    code, rep = run_json(capsys, "bracket", "X_3", "X_9", "--cache", str(tmp_path))
    assert code == 0 and rep["result"]["value"] == "-2*X4"


def test_cache_mismatch_is_reported(capsys, tmp_path):
    run(capsys, "build", "--cache", str(tmp_path))
    src = next(tmp_path.glob("resolution-*.pkl"))
    target = tmp_path / "other.pkl"
    src.rename(target)
    code, _, _ = run(capsys, "build", "--cache", str(target), "--depth", "6")
    assert code == 2


@pytest.mark.parametrize("command", ["verify-resolution", "verify-facts", "bv-check", "axioms"])
def test_verification_commands_pass(capsys, command):
    code, rep = run_json(capsys, command)
    assert code == 0 and rep["status"] == "pass"
