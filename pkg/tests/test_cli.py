import json
from pathlib import Path

import pytest

from quadgor.cli import main

GOLDEN = Path(__file__).parent / "golden"

CASES = [
    ("family_c7", ["family", "--c", "7"]),
    ("family_c8", ["family", "--c", "8"]),
    ("example_g6", ["example-g6"]),
    ("grid", ["grid"]),
]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,argv", CASES)
@pytest.mark.parametrize("mode", ["json", "txt"])
def test_golden(name, argv, mode, capsys):
    args = argv + (["--json"] if mode == "json" else [])
    code, out, _ = run(args, capsys)
    assert code == 0
    assert out == (GOLDEN / f"{name}.{mode}").read_text()


@pytest.mark.parametrize("argv", [["family", "--c", "7", "--json"], ["pfaffian", "--c", "4", "--seed", "5", "--json"]])
def test_structured_output_is_byte_identical(argv, capsys):
    first = run(argv, capsys)[1]
    second = run(argv, capsys)[1]
    assert first == second


def test_report_echoes_config(capsys):
    data = json.loads(run(["pfaffian", "--c", "4", "--seed", "5", "--json"], capsys)[1])
    assert data["config"]["seed"] == 5
    assert data["config"]["field"] == "gf:32003"
    assert data["version"]
    assert data["result"]["ok"] is True


def test_family_c7_report(capsys):
    data = json.loads((GOLDEN / "family_c7.json").read_text())["result"]
    assert data["h_vector"] == [1, 7, 14, 7, 1]
    assert data["betti"]["table"]["totals"] == [1, 14, 57, 126, 126, 57, 14, 1]
    assert data["koszul"]["witness"] == [3, 4, 1]
    assert data["beta_R_3_4"]["agrees"] is True


def test_family_c6_warns(capsys):
    code, out, err = run(["family", "--c", "6", "--json"], capsys)
    assert code == 0
    assert "9 of degree 2, 2 of degree 3" in err
    assert json.loads(out)["result"]["generator_counts"] == {"2": 9, "3": 2}


def test_example_g6_over_rationals(capsys):
    data = json.loads((GOLDEN / "example_g6.json").read_text())
    assert data["config"]["field"] == "q"
    res = data["result"]
    assert res["betti"]["table"]["betti"][2] == [2, 3, 4]
    assert res["degree2_bound"]["verdict"] == "NotKoszul"
    assert res["quadratic_gorenstein_with_h_1_6_12_6_1"] is True


@pytest.fixture
def files(tmp_path):
    (tmp_path / "ci.ideal").write_text("ring x y z\nx^2, y^2, z^2\n")
    (tmp_path / "i.ideal").write_text("ring x y z\nx^2, y^2, z^2, x*y\n")
    (tmp_path / "f.inv").write_text("ring y0 y1 y2\ny0^2*y1 + y2^3\n")
    (tmp_path / "bad.ideal").write_text("ring x y\nx^2 + @\n")
    return tmp_path


def test_ann(files, capsys):
    code, out, _ = run(["ann", "--input", str(files / "f.inv"), "--json"], capsys)
    assert code == 0
    res = json.loads(out)["result"]
    assert res["h_vector"] == [1, 3, 3, 1]
    assert res["generators"] == ["x1^2", "x0*x2", "x1*x2", "x0^3", "x0^2*x1 - x2^3"]


def test_link_command(files, capsys):
    code, out, _ = run(["link", "--ci", str(files / "ci.ideal"), "--ideal", str(files / "i.ideal"),
                        "--involution", "--json"], capsys)
    assert code == 0
    rep = json.loads(out)["result"]["report"]
    assert rep["identity_holds"] and rep["involution"]
    assert rep["h_J"] == [1, 1]


@pytest.mark.parametrize("cmd", ["res", "betti", "hilbert", "koszul"])
def test_ideal_commands(files, cmd, capsys):
    code, out, _ = run([cmd, "--ideal", str(files / "ci.ideal"), "--json"], capsys)
    assert code == 0
    assert json.loads(out)["command"] == cmd


def test_tensor_command(files, capsys):
    code, out, _ = run(["tensor", "--ideal", str(files / "ci.ideal"), "--ideal2", str(files / "ci.ideal"),
                        "--json"], capsys)
    assert code == 0
    assert json.loads(out)["result"]["h_vector"] == [1, 6, 15, 20, 15, 6, 1]


def test_out_file(files, capsys):
    target = files / "report.json"
    assert main(["hilbert", "--ideal", str(files / "i.ideal"), "--json", "--out", str(target)]) == 0
    assert json.loads(target.read_text())["result"]["hilbert"]["h_vector"] == [1, 3, 2]


@pytest.mark.parametrize("argv,code", [
    (["betti"], 2),
    (["nonsense"], 2),
    (["family"], 2),
    (["family", "--c", "2"], 1),
    (["koszul", "--ideal", "missing.ideal"], 2),
])
def test_exit_codes(argv, code, capsys):
    assert run(argv, capsys)[0] == code


def test_parse_error_exit_code(files, capsys):
    code, _, err = run(["betti", "--ideal", str(files / "bad.ideal")], capsys)
    assert code == 2
    assert "line 2" in err


def test_order_flag_does_not_change_betti(files, capsys):
    a = json.loads(run(["betti", "--ideal", str(files / "i.ideal"), "--json"], capsys)[1])
    b = json.loads(run(["betti", "--ideal", str(files / "i.ideal"), "--order", "lex", "--json"], capsys)[1])
    assert a["result"]["betti"] == b["result"]["betti"]
