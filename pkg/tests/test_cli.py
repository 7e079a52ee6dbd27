from __future__ import annotations

import json

import pytest

from chenruan.cli import EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, canonical, main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv", [
    ["periods", "--k", "1"],
    ["obstruction", "--n", "2", "--k", "3"],
    ["obstruction", "--n", "4", "--k", "4"],
    ["localize"],
    ["cupprod", "--psi", "3"],
])
def test_subcommands_pass(argv, capsys):
    code, out, _ = run(argv, capsys)
    assert code == EXIT_OK
    assert "[FAIL]" not in out and "[PASS]" in out


def test_triangle_check_reports_the_printed_lambda2(capsys):
    code, out, _ = run(["triangle-check"], capsys)
    assert code == EXIT_MISMATCH
    fails = [line for line in out.splitlines() if "[FAIL]" in line]
    assert len(fails) == 1 and "printed: lambda2^5" in fails[0]


def test_json_output_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["periods", "--k", "2", "--json", str(a)], capsys)[0] == EXIT_OK
    assert run(["periods", "--k", "2", "--json", str(b)], capsys)[0] == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    data = json.loads(a.read_text())
    assert data["passed"] is True
    assert len(data["data"]["solutions"]) == 4


def test_rationals_are_canonical():
    from fractions import Fraction
    assert canonical({"x": Fraction(-5000, 3), (1, 2): Fraction(4, 2)}) == {"x": "-5000/3", "1,2": "2"}


def test_projective_space_report_is_empty(tmp_path, capsys):
    out = tmp_path / "p4.json"
    code, text, _ = run(["report", "--fixture", "projective-space", "--json", str(out)], capsys)
    assert code == EXIT_OK
    rep = json.loads(out.read_text())
    sec = rep["sections"]["sectors"]["data"]
    assert sec["twisted_sectors"] == 0 and sec["twisted_table"] == []
    assert sec["tricyclic_by_type"] == {"identity": 1}
    assert list(rep["sections"]) == ["sectors"]


def test_quintic_only_subcommands_reject_other_fans(capsys):
    code, _, err = run(["localize", "--fixture", "projective-space"], capsys)
    assert code == EXIT_INPUT and "mirror quintic" in err


def test_fan_file_input(tmp_path, capsys):
    good = tmp_path / "p2.json"
    good.write_text(json.dumps({"dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]],
                                "max_cones": [[0, 1], [1, 2], [0, 2]]}))
    assert run(["sectors", "--fixture", str(good)], capsys)[0] == EXIT_OK
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n "rays": [[1, 0], [0]],\n "max_cones": []}')
    code, _, err = run(["sectors", "--fixture", str(bad)], capsys)
    assert code == EXIT_INPUT and "rays[1]" in err
    broken = tmp_path / "broken.json"
    broken.write_text('{"dim": 2,\n "rays": [[1, 0],, ]}')
    code, _, err = run(["sectors", "--fixture", str(broken)], capsys)
    assert code == EXIT_INPUT and "line 2" in err


def test_input_errors(capsys):
    assert run(["cupprod", "--psi", "-5"], capsys)[0] == EXIT_INPUT
    assert run(["cupprod", "--psi", "abc"], capsys)[0] == EXIT_INPUT
    assert run(["sectors", "--fixture", "no-such-fan"], capsys)[0] == EXIT_INPUT
    with pytest.raises(SystemExit) as exc:
        main(["periods", "--k", "7"])
    assert exc.value.code == 2
