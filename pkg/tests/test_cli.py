import json

import pytest

from fibcobweb.cli import run


def test_triangle_csv(capsys):
    assert run(["triangle", "--seq", "fibonacci", "--rows", "7", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 8
    assert lines[7] == "1,13,104,260,260,104,13,1"


def test_triangle_json_shape(capsys):
    assert run(["triangle", "--seq", "gaussian:2", "--rows", "3", "--format", "json",
                "--method", "recurrence"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data == {
        "sequence": "gaussian:2",
        "method": "recurrence",
        "rows": [["1"], ["1", "1"], ["1", "3", "1"], ["1", "7", "7", "1"]],
    }


def test_triangle_table(capsys):
    assert run(["triangle", "--seq", "natural", "--rows", "4"]) == 0
    assert capsys.readouterr().out.splitlines()[-1].split() == ["1", "4", "6", "4", "1"]


def test_unsupported_recurrence_is_usage_error(capsys):
    assert run(["triangle", "--seq", "one", "--rows", "5", "--method", "recurrence"]) == 2
    err = capsys.readouterr().err
    assert "UnsupportedRecurrence" in err and len(err.strip().splitlines()) == 1


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["triangle", "--rows", "3"],
        ["triangle", "--seq", "lucas", "--rows", "3"],
        ["triangle", "--seq", "fibonacci", "--rows", "600"],
        ["triangle", "--seq", "fibonacci", "--rows", "3", "--format", "xml"],
        ["cobweb", "verify", "--seq", "natural", "--levels", "0"],
        ["lgv", "verify", "--family", "grid", "--sources", "0,1", "--sinks", "2,3"],
        ["lgv", "verify", "--family", "fib", "--sources", "0,x", "--sinks", "4,5"],
        ["lgv", "verify", "--family", "fib", "--sources", "0,1", "--sinks", "4,5", "--n", "3"],
        ["report", "all", "--cap", "-4"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert run(argv) == 2
    assert capsys.readouterr().err


def test_binomial_check_json(capsys):
    assert run(["cobweb", "binomial-check", "--seq", "fibonacci", "--levels", "4",
                "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["is_binomial"] is False
    assert data["by_length"]["2"] == ["1", "2"]
    assert [c["chains"] for c in data["counterexample"]] == ["1", "2"]


@pytest.mark.parametrize(
    "seq, levels, expect, code",
    [
        ("fibonacci", "5", "not-binomial", 0),
        ("fibonacci", "5", "binomial", 1),
        ("one", "6", "binomial", 0),
        ("one", "6", "not-binomial", 1),
    ],
)
def test_binomial_check_expect_flag(seq, levels, expect, code, capsys):
    argv = ["cobweb", "binomial-check", "--seq", seq, "--levels", levels, "--expect", expect]
    assert run(argv) == code


def test_cobweb_verify(capsys):
    assert run(["cobweb", "verify", "--seq", "fibonacci", "--levels", "6", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["passed"]
    names = {c["name"] for c in data["checks"]}
    assert {"chains k=0 n=6", "quotient k=2 n=6", "mobius-convolution"} <= names


def test_verify_interpretations(capsys):
    assert run(["verify", "interpretations", "--format", "csv"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "check,closed_form,oracle,result"
    assert "subspaces n=4 k=2 q=2,35,35,PASS" in out


def test_lgv_verify_fib_and_grid(capsys):
    assert run(["lgv", "verify", "--family", "fib", "--sources", "0,1", "--sinks", "4,5",
                "--format", "json"]) == 0
    fib = json.loads(capsys.readouterr().out)
    assert fib["determinant"] == fib["brute_force"] == "1"
    assert run(["lgv", "verify", "--family", "grid", "--size", "4x4", "--sources", "0,1;1,0",
                "--sinks", "2,3;3,2", "--format", "json"]) == 0
    grid = json.loads(capsys.readouterr().out)
    assert grid["determinant"] == grid["brute_force"] == "20"
    assert grid["matrix"] == [["6", "4"], ["4", "6"]]


def test_lgv_permutable_warns_but_checks_signed_form(capsys):
    assert run(["lgv", "verify", "--family", "fib", "--sources", "0,1", "--sinks", "5,6"]) == 0
    assert "not nonpermutable" in capsys.readouterr().err


def test_lgv_explore(capsys):
    assert run(["lgv", "explore", "--max-m", "6", "--format", "json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert "no identity" in data["note"]
    first = data["rows"][0]
    assert first == {"k": 2, "m": 2, "sinks": [1, 2], "determinant": "-1", "fibonomial": "1"}


def test_out_file(tmp_path, capsys):
    out = tmp_path / "t.csv"
    assert run(["triangle", "--seq", "natural", "--rows", "2", "--format", "csv",
                "--out", str(out)]) == 0
    assert capsys.readouterr().out == ""
    assert out.read_text() == "1\n1,1\n1,2,1\n"


def test_report_bad_expected_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["report", "all", "--expected", str(bad)]) == 2
    partial = tmp_path / "partial.json"
    partial.write_text(json.dumps({"triangle": {}}))
    assert run(["report", "all", "--expected", str(partial)]) == 2
    assert run(["report", "all", "--expected", str(tmp_path / "missing.json")]) == 2


def test_report_corrupted_expected_fails(corrupted_expected, capsys):
    assert run(["report", "all", "--expected", str(corrupted_expected), "--format", "json"]) == 1
    data = json.loads(capsys.readouterr().out)
    assert not data["passed"]
    failed = [c["criterion"] for c in data["criteria"] if not c["passed"]]
    assert failed == [2]


def test_module_entry_point(cli):
    proc = cli("triangle", "--seq", "natural", "--rows", "3", "--format", "csv")
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "1,3,3,1"
