"""
Tests for the gorenstein command line
"""

import json
import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), ".."))

from gorenstein.errors import VerificationError, create_error_report
from gorenstein.main import COMMANDS, build_parser, main

WORKED = "X1^8*X2^3 - X1^6*X2^2*X3^3"


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_commands_registered():
    assert list(COMMANDS) == ["hilbert", "basis", "hessian", "wlp", "slp", "classify", "search", "verify-paper"]


def test_hilbert_text_and_json(capsys):
    status, out, _ = run(capsys, "hilbert", "X1^3 - X2^3")
    assert status == 0
    assert "h = (1,2,2,1)" in out
    status, out, _ = run(capsys, "hilbert", "X1^3 - X2^3", "--json")
    assert status == 0
    payload = json.loads(out)
    assert payload["hvector"] == [1, 2, 2, 1]
    assert payload["socle_degree"] == 3


def test_basis(capsys):
    status, out, _ = run(capsys, "basis", "X1*X2", "--degree", "1")
    assert status == 0
    assert out.strip() == "x1, x2"


def test_hessian_symbolic(capsys):
    status, out, _ = run(capsys, "hessian", "X1*X2", "--t", "1", "--symbolic")
    assert status == 0
    assert "det = -1" in out


def test_hessian_evaluated(capsys):
    status, out, _ = run(capsys, "hessian", WORKED, "--t", "5", "--eval", "1,0,0", "--json")
    assert status == 0
    payload = json.loads(out)
    assert payload["full_rank"] is True
    assert payload["evaluated_rank"] == 12


def test_wlp(capsys):
    status, out, _ = run(capsys, "wlp", "X1^3 - X2^3")
    assert status == 0
    assert "WLP: HOLDS" in out
    _, out, _ = run(capsys, "wlp", "X1^3 - X2^3", "--ell", "0,1")
    assert "WLP: UNKNOWN" in out
    _, out, _ = run(capsys, "wlp", "X1^3 - X2^3", "--ell", "1,1", "--json")
    assert json.loads(out)["status"] == "HOLDS"


def test_classify_json(capsys):
    status, out, _ = run(capsys, "classify", WORKED, "--json")
    assert status == 0
    payload = json.loads(out)
    assert payload["report"]["overall"] == "SLP"
    assert payload["normalized"]["spec"]["a"] == [6, 2, 0]


def test_search(capsys, tmp_path):
    out_file = str(tmp_path / "sweep.jsonl")
    status, out, _ = run(
        capsys, "search", "--max-vars", "2", "--max-degree", "3", "--out", out_file, "--no-progress", "--json"
    )
    assert status == 0
    assert json.loads(out)["total"] == 7
    assert os.path.exists(out_file)


def test_input_error_exit_status(capsys):
    status, out, err = run(capsys, "hilbert", "X1^2 + X2")
    assert status == 2
    assert "error:" in err
    assert out == ""


def test_capacity_error_exit_status(capsys):
    status, out, _ = run(capsys, "hilbert", "X1^21", "--json")
    assert status == 3
    assert json.loads(out)["code"] == "CAPACITY_EXCEEDED"


def test_verification_error_report():
    report = create_error_report(VerificationError("theorem contradicted"))
    assert report.exit_code == 4
    assert report.code == "VERIFICATION_FAILED"


def test_usage_errors_exit():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["basis", "X1*X2"])
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_verify_paper_accepts_jobs():
    args = build_parser().parse_args(["verify-paper", "--jobs", "3"])
    assert (args.scale, args.jobs) == ("quick", 3)
