import json

import pytest

from superlim.cli import main, parse_complex, parse_point
from superlim.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_complex():
    assert parse_complex("2") == 2
    assert parse_complex("-i") == -1j
    assert parse_complex("1+2i") == 1 + 2j
    assert parse_complex("0.5-3.5i") == 0.5 - 3.5j
    with pytest.raises(ParseError):
        parse_complex("x")


def test_parse_point():
    assert parse_point("0,0,2") == (0, 0, 2)
    assert parse_point("1+i;0;2i") == (1 + 1j, 0, 2j)
    assert parse_point("1,0;0,1;2,0") == (1, 1j, 2)
    with pytest.raises(ParseError):
        parse_point("1,2")


def test_classify_system_json(capsys):
    code, out, _ = run(capsys, "classify", "--system", "VII", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "superlim/1"
    assert data["label"]["label"] == "[51]"
    assert sorted(r["multiplicity"] for r in data["roots"]) == [1, 5]


def test_classify_poly_file(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text(json.dumps({"coeffs": [[0, 0], [0, 0], [0, 0], [3, 0], [0, 0], [0, 0], [0, 3]]}))
    code, out, _ = run(capsys, "classify", "--poly", str(f))
    assert code == 0
    assert out.startswith("[3111] b")


def test_classify_bad_input(tmp_path, capsys):
    f = tmp_path / "q.json"
    f.write_text("{")
    assert run(capsys, "classify", "--poly", str(f))[0] == 2
    assert run(capsys, "classify", "--system", "XIII")[0] == 2


def test_classify_system_label_text(capsys):
    code, out, _ = run(capsys, "classify", "--system", "I")
    assert code == 0
    assert "system class: [111111a/b]" in out


def test_contract_named(capsys):
    code, out, _ = run(capsys, "contract", "--name", "VII->A", "--format", "json")
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["status"] == "pass" and rep["name"] == "VII-to-A"


def test_contract_truncation_floor(capsys):
    code, _, err = run(capsys, "contract", "--all", "--trunc", "6")
    assert code == 2
    assert "at least 24" in err


def test_verify_all_writes_file(tmp_path, capsys):
    out_file = tmp_path / "report.txt"
    code, out, _ = run(capsys, "verify-all", "--out", str(out_file))
    assert code == 0 and out == ""
    assert out_file.read_text().rstrip().endswith("14/14 pass")


def test_recover_q(capsys):
    code, out, _ = run(capsys, "recover-q", "--system", "IV", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["pass"] and data["defect"] <= 1e-8


def test_potential_limit(capsys):
    assert run(capsys, "potential-limit")[0] == 0
    assert run(capsys, "potential-limit", "--rescaling", "0,0,0,0,0")[0] == 1
    assert run(capsys, "potential-limit", "--rescaling", "1,2")[0] == 2


def test_diagram(capsys, tmp_path):
    code, out, _ = run(capsys, "diagram")
    assert code == 0 and out.count("->") == 13
    assert run(capsys, "diagram", "--format", "png")[0] == 2
    f = tmp_path / "d.dot"
    run(capsys, "diagram", "--out", str(f))
    assert f.read_text() == out
