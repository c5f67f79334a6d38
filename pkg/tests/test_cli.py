import io
import json
import subprocess
import sys

import jsonschema
import pytest

from toric_hartogs.cli import PolynomialSyntaxError, main, parse_box, parse_polynomial

REPORT_SCHEMA = {
    "type": "object",
    "required": ["divisor", "effective", "nef", "square_zero", "polytope_dim", "decision", "basis", "caveats"],
    "properties": {
        "divisor": {"type": "array", "items": {"type": "integer"}},
        "effective": {"type": "boolean"},
        "nef": {"type": "boolean"},
        "square_zero": {"type": "boolean"},
        "polytope_dim": {"oneOf": [{"type": "integer"}, {"const": "empty"}]},
        "decision": {"enum": ["HARTOGS", "NO_HARTOGS", "INAPPLICABLE"]},
        "basis": {"type": "string"},
        "caveats": {"type": "array", "items": {"type": "string"}, "minItems": 1},
    },
}


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def test_parse_examples():
    assert set(parse_polynomial("1 + z1 + z2", 2).terms) == {(0, 0), (1, 0), (0, 1)}
    assert set(parse_polynomial("3*z1^-2*z2 - z2^4", 2).terms) == {(-2, 1), (0, 4)}
    assert set(parse_polynomial("1 + 1/z2", 2).terms) == {(0, 0), (0, -1)}
    s = parse_polynomial("2*z1 + z2 - z1", 2)
    assert set(s.terms) == {(1, 0), (0, 1)}
    assert s.coefficients[(1, 0)] == 1
    assert set(parse_polynomial("-z1^2*z1", 1).terms) == {(3,)}


@pytest.mark.parametrize("text", ["z1 - z1", "", "   ", "z3", "1 + + z1", "z1^", "2 z1", "z1 & z2", "z0"])
def test_parse_errors(text):
    with pytest.raises(PolynomialSyntaxError):
        parse_polynomial(text, 2)


def test_error_position():
    with pytest.raises(PolynomialSyntaxError) as info:
        parse_polynomial("1 + z1 # 2", 2)
    assert info.value.position == 7


def test_parse_box():
    assert parse_box("-3,3;0,2") == [(-3, 3), (0, 2)]
    with pytest.raises(ValueError):
        parse_box("a,b")


def test_analyze_examples():
    code, text = run("analyze", "--fan", "P2", "--poly", "1+z1+z2", "--json")
    assert code == 0 and json.loads(text)["decision"] == "HARTOGS"
    code, text = run("analyze", "--fan", "Hirzebruch:1", "--poly", "z2", "--json")
    assert code == 2 and json.loads(text)["decision"] == "INAPPLICABLE"
    code, text = run("analyze", "--fan", "P1xP1", "--poly", "1+z1")
    assert code == 0 and "NO_HARTOGS" in text


def test_intersect_example():
    assert run("intersect", "--fan", "Hirzebruch:3", "--divisors", "0,0,0,1;0,0,0,1") == (0, "3\n")
    code, text = run("intersect", "--fan", "P2", "--divisors", "1,0,0;0,1,0", "--json")
    assert json.loads(text)["intersection"] == 1


@pytest.mark.parametrize("fan,poly", [("P2", "1+z1+z2"), ("Hirzebruch:2", "z1^-1 + z2^3 - 4*z1*z2"),
                                      ("P1xP1", "z1"), ("P3", "1 + z1 + z2 + z3")])
def test_json_round_trip_and_determinism(fan, poly):
    first = run("analyze", "--fan", fan, "--poly", poly, "--json")[1]
    assert first == run("analyze", "--fan", fan, "--poly", poly, "--json")[1]
    report = json.loads(first)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n" == first


def test_poly_and_divisor_agree():
    _, a = run("analyze", "--fan", "Hirzebruch:1", "--poly", "1+z1+z2", "--json")
    a = json.loads(a)
    coeffs = ",".join(map(str, a["divisor"]))
    _, b = run("analyze", "--fan", "Hirzebruch:1", "--divisor", coeffs, "--json")
    b = json.loads(b)
    assert a.pop("polynomial") == "1+z1+z2"
    assert a == b


def test_divisor_flags_exclusive(capsys):
    assert run("analyze", "--fan", "P2")[0] == 1
    assert run("analyze", "--fan", "P2", "--poly", "1", "--divisor", "0,0,0")[0] == 1
    assert "exactly one" in capsys.readouterr().err


def test_errors_exit_one(capsys, tmp_path):
    assert run("analyze", "--fan", "P2", "--poly", "z1 - z1")[0] == 1
    assert run("analyze", "--fan", "P2", "--divisor", "1,2")[0] == 1
    assert run("analyze", "--fan", str(tmp_path / "missing.json"), "--poly", "1")[0] == 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [1, 2], [-1, -1]], "max_cones": [[0, 1], [1, 2], [0, 2]]}))
    assert run("analyze", "--fan", str(bad), "--poly", "1")[0] == 1
    assert "error:" in capsys.readouterr().err


def test_fan_check(tmp_path):
    code, text = run("fan-check", "--fan", "Hirzebruch:2", "--json")
    assert code == 0 and json.loads(text) == {"smooth": True, "complete": True, "failures": []}
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [-1, 0]], "max_cones": [[0, 1], [1, 2]]}))
    report = json.loads(run("fan-check", "--fan", str(bad), "--json")[1])
    assert report["smooth"] and not report["complete"]
    assert {f["kind"] for f in report["failures"]} == {"unpaired facet"}


def test_nef_output():
    report = json.loads(run("nef", "--fan", "Hirzebruch:2", "--divisor", "0,1,0,0", "--json")[1])
    assert report["nef"] is False
    assert any(row["violations"] for row in report["cones"])
    code, text = run("nef", "--fan", "P2", "--poly", "1+z1+z2")
    assert code == 0 and text.startswith("nef: True")


def test_cohomology_output():
    report = json.loads(run("cohomology", "--fan", "P2", "--divisor=-1,-1,-1", "--json")[1])
    assert report["h"] == [0, 0, 1]
    assert report["breakdown"] == [{"m": [0, 0], "contributions": {"2": 1}}]
    code, text = run("cohomology", "--fan", "P2", "--divisor", "0,0,2", "--box=-3,3;-3,3")
    assert code == 0 and text.startswith("h0=6 h1=0 h2=0")
    report = json.loads(run("cohomology", "--fan", "P2", "--divisor", "0,0,1", "--m-max", "3")[1])
    assert report["fatal"] is False and len(report["rows"]) == 3
    assert run("cohomology", "--fan", "Hirzebruch:1", "--divisor", "0,0,1,0", "--m-max", "2")[0] == 1


def test_hirzebruch_output():
    report = json.loads(run("hirzebruch", "--r", "1", "--poly", "1+z2", "--json")[1])
    assert report["l"] == [0, 0, 0, -1]
    assert report["printed_claim1"] is False and report["derived_claim1"] is True
    assert [d["check"] for d in report["discrepancies"]] == ["printed_claim1"]


def test_usage_errors_exit_one():
    with pytest.raises(SystemExit) as info:
        main(["analyze"])
    assert info.value.code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "toric_hartogs", "intersect", "--fan", "P2",
                           "--divisors", "0,0,1;0,0,1"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "1\n"
    proc = subprocess.run([sys.executable, "-m", "toric_hartogs", "--help"], capture_output=True, text=True)
    assert "z1..zn" in proc.stdout and "0-based" in proc.stdout
