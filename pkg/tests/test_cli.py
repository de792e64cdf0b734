import json

import pytest

from eclocal.cli import (
    curve_from_json,
    curve_to_json,
    element_text,
    main,
    parse_curve_text,
    parse_element,
    structure_from_json,
    structure_to_json,
)
from eclocal.errors import CurveFileError

from conftest import DATA_DIR

STRANGE = str(DATA_DIR / "strange_ex1.curve")
SINGULAR = str(DATA_DIR / "singular.curve")
SHORT5 = str(DATA_DIR / "short_form_p5.curve")
DLP1 = str(DATA_DIR / "dlp_example_p2_k10.curve")


def test_parse_curve_text_extended():
    ring, curve = parse_curve_text(
        "p = 3\ne = 1\nk = 20\na1 = 0,0,0,0,1\na2=0,0,0,0,0,0,0,0,1\na4 = 1\n"
    )
    assert ring.k == 20 and ring.p == 3
    assert curve.a1 == ring.eps(4)
    assert curve.a3.is_zero()


def test_parse_curve_text_short():
    ring, curve = parse_curve_text("p=5\nk=6\nA=1\nB=2\n")
    assert curve.a4 == ring.one()
    assert curve.a6 == ring.embed_int(2)
    assert curve.a1.is_zero()


def test_parse_curve_errors():
    with pytest.raises(CurveFileError):
        parse_curve_text("p=5\n")  # missing k
    with pytest.raises(CurveFileError):
        parse_curve_text("p=5\nk=2\nbogus\n")
    with pytest.raises(CurveFileError):
        parse_curve_text("p=5\nk=2\nA=1\na4=1\n")
    with pytest.raises(CurveFileError):
        parse_curve_text("p=5\nk=2\na4=1,2,3\n")  # too many coefficients
    err = None
    try:
        parse_curve_text("p=5\nk=2\n\nnot a pair\n")
    except CurveFileError as exc:
        err = exc
    assert err is not None and err.line == 4


def test_element_encoding_round_trip():
    ring, _ = parse_curve_text("p=3\nk=4\na4=1\n")
    x = parse_element(ring, "1,2,0,1")
    assert element_text(x) == "1,2,0,1"


def test_curve_json_round_trip():
    _, curve = parse_curve_text(open(STRANGE).read())
    doc = json.loads(json.dumps(curve_to_json(curve)))
    assert curve_from_json(doc) == curve


def test_validate_exit_codes(capsys):
    assert main(["validate", STRANGE]) == 0
    out = capsys.readouterr().out
    assert "elliptic: yes" in out and "exceptional, d=8" in out
    assert main(["validate", SINGULAR]) == 2
    out = capsys.readouterr().out
    assert "elliptic: no" in out
    assert main(["validate", SINGULAR, "--allow-singular"]) == 0


def test_validate_missing_file(capsys):
    assert main(["validate", "/nonexistent.curve"]) == 2


def test_structure_command(capsys):
    assert main(["structure", SHORT5, "--brute-force"]) == 0
    out = capsys.readouterr().out
    assert "MATCH" in out
    assert main(["structure", STRANGE, "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    gs = structure_from_json(doc)
    assert gs.factors == ((9, 3), (3, 13))
    assert structure_to_json(gs) == doc


def test_psi_command_eval(capsys):
    assert main([
        "psi", "--imax", "9", "--form", "extended",
        "--eval", "3", "--curve", STRANGE,
    ]) == 0
    out = capsys.readouterr().out
    lines = dict(line.split(" = ") for line in out.strip().splitlines())
    assert lines["psi_3(3)"] == "0,0,0,0,0,0,0,0,2,0,0,0,0,0,0,0,0,0,0,0"
    assert lines["psi_9(3)"] == "2,0,0,0,0,0,0,0,0,0,0,0,0,0,0,0,1,0,0,0"


def test_psi_command_table(capsys, tmp_path):
    out_file = tmp_path / "table.txt"
    assert main(["psi", "--imax", "4", "--out", str(out_file)]) == 0
    from eclocal.infinity.psi import MultPolyTable

    table = MultPolyTable.from_text(out_file.read_text())
    assert table.i_max == 4


def test_dlp_command(capsys):
    assert main([
        "dlp", DLP1, "0,1,0,1,0,0,1,1,0,1", "0,1,0,1,1,1,1,0,0,0", "--json",
    ]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["n"] == 13
    assert doc["digits"] == [1, 0, 1, 1]


def test_dlp_no_solution_exit(capsys):
    # Q has smaller minimal degree than P: outside <P>
    assert main(["dlp", DLP1, "0,0,1", "0,1"]) == 3
    out = capsys.readouterr().out
    assert "no solution" in out


def test_scan_command(capsys):
    assert main(["scan", "--p", "5"]) == 0
    assert capsys.readouterr().out.strip() == "1/5"


def test_count_command(capsys):
    assert main(["count", STRANGE]) == 0
    assert capsys.readouterr().out.strip() == "4"


def test_verify_quick(capsys):
    assert main(["verify", "--quick"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "addition-law-expansion" in out
