import json

import pytest

from spinfour.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_degree_power_map_integral(capsys):
    code, out, _ = run(capsys, "degree", "--map", "pow:2", "--method", "integral")
    assert code == 0
    assert "degree(q^2) = 2" in out


def test_degree_word_components(capsys):
    code, out, _ = run(capsys, "degree", "--map", "eta", "--component", "1")
    assert code == 0 and "= 1" in out
    code, out, _ = run(capsys, "degree", "--map", "eta", "--component", "2")
    assert code == 0 and "= 0" in out


def test_degree_constant_power(capsys):
    code, out, _ = run(capsys, "degree", "--map", "pow:0")
    assert code == 0 and "= 0" in out


def test_degree_preimage_method(capsys):
    code, out, _ = run(capsys, "degree", "--map", "pow:-2", "--method", "preimage",
                       "--seeds", "256")
    assert code == 0 and "= -2" in out


def test_degree_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "degree", "--map", "pow:x")
    assert code == 1 and "error" in err
    code, _, err = run(capsys, "degree", "--map", "gamma^2")
    assert code == 1


def test_degree_resolution_failure_exit_code(capsys):
    code, _, err = run(capsys, "degree", "--map", "pow:3", "--method", "integral",
                       "--resolution", "6", "6", "3")
    assert code == 2 and "resolution insufficient" in err


def test_classify_words(capsys):
    code, out, _ = run(capsys, "classify", "eta")
    assert code == 0
    assert "chi = 1" in out and "p1 = -2" in out
    code, out, _ = run(capsys, "classify", "eta^2 * nu^-1")
    assert "chi = 2" in out and "p1 = 0" in out
    code, out, _ = run(capsys, "classify", "")
    assert "chi = 0" in out and "p1 = 0" in out


def test_classify_numeric_matches_exact(capsys):
    code, out, _ = run(capsys, "classify", "nu", "--numeric",
                       "--resolution", "32", "32", "16")
    assert code == 0
    assert "chi = 0" in out and "p1 = -4" in out


def test_classify_json_single_document(capsys):
    code, out, _ = run(capsys, "classify", "nu", "--json")
    assert code == 0
    doc = json.loads(out)
    assert doc["euler"] == 0 and doc["pontryagin"] == -4 and doc["phi"] == [0, 1]


def test_lift_command(capsys):
    code, out, _ = run(capsys, "lift", "eta^2 * nu^-1")
    assert code == 0
    assert "f1(q) = q^1" in out and "f2(q) = q^-1" in out


def test_lift_numeric_comparison(capsys):
    code, out, _ = run(capsys, "lift", "nu", "--numeric",
                       "--resolution", "24", "24", "12")
    assert code == 0
    assert "global sign" in out


def test_check_catalog_entries(capsys):
    code, out, _ = run(capsys, "check", "--catalog", "T4")
    assert code == 0 and "T4: PARALLELIZABLE" in out
    code, out, _ = run(capsys, "check", "--catalog", "S4")
    assert code == 0
    assert "NOT parallelizable" in out and "(1, -1)" in out
    code, out, _ = run(capsys, "check", "--catalog", "CP2")
    assert code == 0
    assert "failing: w2" in out and "unavailable" in out


def test_check_file_and_errors(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([
        {"name": "flat", "w2_zero": True, "p1": 0, "euler": 0},
        {"name": "odd-parity", "w2_zero": True, "p1": 0, "euler": 1},
    ]))
    code, out, _ = run(capsys, "check", "--file", str(path))
    assert code == 0
    assert "flat: PARALLELIZABLE" in out
    # parity failures are reported per entry, not fatal
    assert "parity" in out
    code, _, err = run(capsys, "check", "--file", str(tmp_path / "missing.json"))
    assert code == 1
    path.write_text(json.dumps([{"name": "x", "w2_zero": True, "p1": 0,
                                 "euler": 0, "extra": 1}]))
    code, _, err = run(capsys, "check", "--file", str(path))
    assert code == 1 and "extra" in err


def test_check_json_document(capsys):
    code, out, _ = run(capsys, "check", "--catalog", "K3", "--json")
    assert code == 0
    doc = json.loads(out)
    entry = doc["manifolds"][0]
    assert entry["parallelizable"] is False
    assert entry["p1"] == -48 and entry["euler"] == 24
    # linear solve: d1 - d2 = 24, d1 + d2 = 24
    assert entry["obstruction_degrees"] == [24, 0]


def test_catalog_command(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0
    for name in ("S4", "S1xS3", "T4", "S2xS2", "CP2", "K3"):
        assert name in out
    code, out, _ = run(capsys, "catalog", "--json")
    assert len(json.loads(out)["manifolds"]) == 6


def test_verify_forced_low_resolution_fails(capsys):
    code, out, _ = run(capsys, "verify-paper", "--resolution", "4", "4", "2")
    assert code == 3
    assert "FAIL" in out
    # the exact symbolic identities still pass; only quadrature blocks fail
    assert "PASS  phi-eta" in out


def test_verify_json_goes_to_stdout_text_to_stderr(capsys):
    code, out, err = run(capsys, "verify-paper", "--resolution", "4", "4", "2",
                         "--json")
    assert code == 3
    doc = json.loads(out)
    assert doc["passed"] is False
    assert any(not c["passed"] for c in doc["checks"])
    assert "FAIL" in err


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["degree"])  # missing required --map
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1
