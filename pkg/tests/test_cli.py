import json

import pytest

from gassmann.cli import EXIT_BUDGET, EXIT_OK, parse_budget, parse_params, run
from gassmann.errors import BadParameter
from gassmann.verify import CLAIMS

H2 = "I+[[0,1],[0,0]]p;I+[[0,0],[0,1]]p"
H3_0 = "I+[[0,1],[0,0]]p;I+[[1,0],[0,0]]p"


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_classify(capsys):
    assert run(["classify", "-p", "3", "-g", "[[1,1],[0,1]]"]) == EXIT_OK
    assert _json(capsys) == {"matrix": "[[1,1],[0,1]]", "l": 0, "d": 0, "tr": 2, "det": 1}


def test_similarity(capsys):
    assert run(["similarity", "-p", "3", "-g", "diag(2,1)"]) == EXIT_OK
    out = _json(capsys)
    assert out["kind"] == "split"
    assert out["representative"] == "[[1,0],[0,2]]"


def test_locconj_kernel_pair(capsys):
    assert run(["locconj", "-p", "3", "--H1", H2, "--H2", H3_0]) == EXIT_OK
    out = _json(capsys)
    assert out["locally_conjugate"] is True
    assert out["conjugate"] is False
    assert out["orders"] == [9, 9]


def test_conjugate_gives_witness(capsys):
    assert run(["conjugate", "-p", "3", "-H1", "diag(8,1)", "-H2", "diag(1,8)"]) == EXIT_OK
    out = _json(capsys)
    assert out["conjugate"] is True
    assert out["witness"]


def test_family_pair(capsys):
    assert run(["family", "glp-pair", "-p", "3", "-k", "1", "-D", "diag(2,1)"]) == EXIT_OK
    out = _json(capsys)
    assert out["locally_conjugate"] is True
    assert out["H1"]["order"] == 6


def test_family_kernel(capsys):
    assert run(["family", "ker2.h3", "-p", "5", "--param", "d=2"]) == EXIT_OK
    assert _json(capsys)["order"] == 25


def test_verify_list(capsys):
    assert run(["verify", "--list"]) == EXIT_OK
    listed = _json(capsys)
    assert [row["claim"] for row in listed] == list(CLAIMS)


def test_verify_one_claim(capsys):
    assert run(["verify", "--claim", "similarity-reps", "-p", "3"]) == EXIT_OK
    report = _json(capsys)
    assert report["claim"] == "similarity-reps"
    assert report["status"] == "verified"


def test_verify_out_of_budget(capsys):
    code = run(["verify", "--claim", "class-invariants", "-p", "3", "--budget", "0.000001"])
    assert code == EXIT_BUDGET
    report = _json(capsys)
    assert report["status"] == "skipped"
    assert report["stats"]["reason"] == "budget"


def test_export_csv(capsys):
    assert run(["export", "--table", "similarity-reps", "-p", "3"]) == EXIT_OK
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "kind,w,z,y,matrix,trace,det"
    assert len(lines) == 1 + 12


@pytest.mark.parametrize(
    "argv, kind",
    [
        (["classify", "-p", "3", "-g", "12x"], "parse_error"),
        (["classify", "-p", "11", "-g", "I"], "bad_parameter"),
        (["verify", "--claim", "nope"], "bad_parameter"),
        (["family", "Q8", "-p", "3"], "bad_parameter"),
        (["family", "cartan-pair", "-p", "3"], "bad_parameter"),
    ],
)
def test_usage_errors(capsys, argv, kind):
    assert run(argv) == 2
    assert json.loads(capsys.readouterr().err)["error"] == kind


def test_bad_budget_is_an_argparse_error():
    with pytest.raises(SystemExit) as info:
        run(["verify", "--list", "--budget", "soon"])
    assert info.value.code == 2


def test_parsers():
    assert parse_budget("90s") == 90.0
    assert parse_params(["a=1", "b=-2"]) == {"a": 1, "b": -2}
    with pytest.raises(BadParameter):
        parse_params(["a"])
