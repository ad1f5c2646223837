import json

import pytest

from qborel.cli import run
from qborel.report import validate_report


def out(capsys, *argv):
    code = run(list(argv))
    cap = capsys.readouterr()
    return code, cap.out.strip(), cap.err


@pytest.mark.parametrize("argv, expected", [
    (["nf", "--algebra", "qm", "--size", "2", "X[2,2]*X[1,1]"],
     "X[1,1]*X[2,2] - (q - q^-1)*X[1,2]*X[2,1]"),
    (["nf", "--algebra", "borel+", "--size", "2", "X[2,2]"], "X[1,1]^-1"),
    (["nf", "--algebra", "qm", "--size", "2", "X[1,1]*X[1,2] - q*X[1,2]*X[1,1]"], "0"),
    (["qdet", "--size", "2"], "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]"),
    (["minor", "--size", "3", "--rows", "1,2", "--cols", "1,2"], "X[1,1]*X[2,2] - q*X[1,2]*X[2,1]"),
    (["pair", "--size", "2", "--left", "F[1]", "--right", "E[1]"], "-qhat^-1"),
    (["counit", "--algebra", "borel+", "--size", "2", "X[1,2] + X[1,1]"], "1"),
    (["antipode", "--size", "2", "--entry", "1,1"], "X[2,2]"),
    (["eval", "--size", "2", "--functional", "X[1,2]", "--element", "K{2}*E[1]"], "q"),
])
def test_examples(capsys, argv, expected):
    code, text, _ = out(capsys, *argv)
    assert code == 0
    assert text == expected


def test_antipode_reports_convention(capsys):
    code, text, err = out(capsys, "antipode", "--size", "2", "--entry", "1,2")
    assert code == 0
    assert text == "-q^-1*X[1,2]"
    assert "note:" in err
    code, text, _ = out(capsys, "antipode", "--size", "2", "--entry", "1,2", "--convention", "plain-q")
    assert text == "q^-1*X[1,2]"


def test_specialized_q(capsys):
    code, text, _ = out(capsys, "nf", "--size", "2", "--q", "2", "X[2,2]*X[1,1] - X[1,1]*X[2,2]")
    assert code == 0
    assert text == "-3/2*X[1,2]*X[2,1]"


@pytest.mark.parametrize("argv, code", [
    (["nf", "--size", "2", "X[1,"], 2),
    (["nf", "--size", "2", "X[1,1] ++"], 2),
    (["nf", "--size", "2", "--algebra", "nope", "X[1,1]"], 2),
    (["nf", "--size", "2", "X[3,1]"], 3),
    (["qdet", "--size", "7"], 3),
    (["qdet", "--size", "1"], 3),
    (["qdet", "--size", "2", "--q", "1"], 3),
    (["qdet", "--size", "2", "--q", "-1"], 3),
    (["qdet", "--size", "2", "--q", "0"], 3),
    (["verify", "--suite", "psi", "--size", "2", "--max-len", "0"], 3),
    (["pair", "--size", "2", "--left", "E[1]", "--right", "E[1]"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert run(argv) == code
    capsys.readouterr()


def test_bad_subcommand_exits_2(capsys):
    assert run(["frobnicate"]) == 2
    assert "error" in capsys.readouterr().err


def test_force_allows_large_size(capsys):
    code, text, _ = out(capsys, "counit", "--size", "7", "--force", "X[1,2]")
    assert code == 0 and text == "0"


def test_json_output(capsys):
    code, text, _ = out(capsys, "qdet", "--size", "2", "--format", "json")
    assert code == 0
    data = json.loads(text)
    assert data
    code, text, _ = out(capsys, "delta", "--size", "2", "--format", "json", "X[1,2]")
    assert code == 0
    json.loads(text)


@pytest.mark.parametrize("suite", ["psi", "unipotent", "hopf"])
def test_verify_json_validates(capsys, suite):
    code, text, _ = out(capsys, "verify", "--suite", suite, "--size", "3", "--format", "json")
    assert code == 0
    data = json.loads(text)
    validate_report(data)
    assert data["suite"] == suite
    ids = [c["id"] for c in data["cases"]]
    assert ids == sorted(ids)
    assert all(c["status"] == "pass" for c in data["cases"])


def test_verify_text(capsys):
    code, text, _ = out(capsys, "verify", "--suite", "gram", "--size", "3")
    assert code == 0
    assert "fail" not in text.lower().replace("0 failed", "")


def test_determinism(capsys):
    argv = ["verify", "--suite", "coinv", "--size", "3", "--seed", "7", "--format", "json"]
    first = out(capsys, *argv)
    second = out(capsys, *argv)
    assert first == second
