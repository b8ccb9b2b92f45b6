#!/usr/bin/env python3
"""
Test the gfe CLI - status lines, JSON documents, exit codes
"""

import json

import pytest
from sympy import Rational, oo

from gfemod.cli import EXIT_FAILURE, EXIT_OK, encode, main


def run_json(capsys, *argv):
    code = main(["--json", *argv])
    return code, json.loads(capsys.readouterr().out)


def test_classify_json(capsys):
    code, doc = run_json(capsys, "classify", "--a", "3", "--b", "-2")
    assert code == EXIT_OK
    assert doc["status"] == "Ok"
    assert doc["payload"]["curve"] == "864b1"
    assert (doc["payload"]["i2"], doc["payload"]["i3"]) == (6, 3)


def test_classify_status_line(capsys):
    assert main(["classify", "--a", "3", "--b", "-2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("✅ classify: Ok")
    assert "864b1" in out


def test_domain_error_becomes_error_status(capsys):
    code, doc = run_json(capsys, "classify", "--a", "2", "--b", "4")
    assert code == EXIT_FAILURE
    assert doc["status"] == "Error"
    assert doc["payload"]["type"] == "NotCoprimeAt2"


def test_composite_p(capsys):
    code, doc = run_json(capsys, "twistplan", "--p", "15")
    assert code == EXIT_FAILURE
    assert doc["payload"]["type"] == "CompositeP"


def test_twistplan_with_nominus(capsys):
    code, doc = run_json(capsys, "twistplan", "--p", "11", "--nominus")
    assert code == EXIT_OK
    assert "288a2" in doc["payload"]["nominus"]
    assert doc["payload"]["table"] == doc["payload"]["derived"]


def test_usage_errors_exit_with_two():
    with pytest.raises(SystemExit) as info:
        main(["classify", "--a", "3"])
    assert info.value.code == 2
    with pytest.raises(SystemExit) as info:
        main(["classify", "--a", "3", "--b", "-2", "--json"])
    assert info.value.code == 2


def test_invalid_global_setting(capsys):
    code, doc = run_json(capsys, "--precision", "0", "verify-known")
    assert code == EXIT_FAILURE
    assert doc["status"] == "Error"


def test_x013_j(capsys):
    _, doc = run_json(capsys, "x013-j", "--v", "0")
    assert doc["payload"] == {"v": "0", "j": "576", "w13": "-12"}
    _, doc = run_json(capsys, "x013-j", "--v", "oo")
    assert doc["payload"]["j"] == "oo"
    assert doc["payload"]["w13"] == "1"


def test_localsolve(capsys):
    code, doc = run_json(capsys, "localsolve", "--coeffs=-1,0,-1", "--ell", "2", "3")
    assert code == EXIT_OK
    assert doc["payload"]["soluble"] == {"2": False, "3": True}


def test_glgroup(capsys):
    _, doc = run_json(capsys, "glgroup", "--group", "H8", "--p", "7")
    assert doc["payload"]["quotient_order"] == 24
    assert doc["payload"]["det_pattern"] == "AllSquare"


def test_tate_module(capsys):
    code, doc = run_json(capsys, "tate-module", "--ell", "2", "--p", "5", "--e1", "1", "--e2", "2")
    assert code == EXIT_OK
    assert doc["payload"]["equivariant"] is True
    assert doc["payload"]["symplectic_type"] == doc["payload"]["criterion"]


def test_registry_label(capsys):
    _, doc = run_json(capsys, "registry", "--label", "27a1")
    assert doc["payload"]["label"] == "27a1"


def test_verify_paper_writes_report(capsys, tmp_path):
    target = tmp_path / "reports" / "acceptance.json"
    code, doc = run_json(capsys, "verify-paper", "--only", "good_j", "x013_jmap", "--output", str(target))
    assert code == EXIT_OK
    written = json.loads(target.read_text(encoding="utf-8"))
    assert written["passed"] is True
    assert [c["name"] for c in written["checks"]] == ["x013_jmap", "good_j"]
    assert doc["payload"] == written
    assert doc["command"] == "verify-paper"
    assert doc["citations"] == ["special values of the X0(13) j-map", "good j-invariants"]


def test_encode():
    assert encode({1: Rational(1, 2), "s": {3, 1}}) == {"1": "1/2", "s": [1, 3]}
    assert encode(oo) == "oo"
    assert encode((Rational(4), None)) == ["4", None]


def test_verify_paper_status_lines_list_citations(capsys):
    assert main(["verify-paper", "--level", "fast", "--only", "good_j"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("✅ verify-paper: Ok")
    assert "   • good j-invariants" in out


def test_x011_disk_reports_fiber_only(capsys):
    code, doc = run_json(capsys, "x011", "--terms", "4", "--disk", "2^9+2^11Z2")
    assert code == EXIT_OK
    disk = doc["payload"]["disk"]
    assert (disk["kind"], disk["error"], disk["rational_roots"]) == ("fiber_only", "NoRationalRoot", 0)
    _, doc = run_json(capsys, "x011", "--terms", "4", "--disk", "2^-5t^-11")
    assert doc["payload"]["disk"]["shadow"]["offset"] == "5/11"
    with pytest.raises(SystemExit) as info:
        main(["x011", "--disk", "2^8+2^11Z2"])
    assert info.value.code == 2
