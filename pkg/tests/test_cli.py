import json

import pytest

import oracles
from borel_descent.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_invariants_table(capsys):
    code, out, _ = run(capsys, "invariants", "table", "--n-max", "2")
    assert code == 0 and out == oracles.CLI_INVARIANTS_2


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "table", "--n-max", "3", "--format", "json")
    assert code == 0 and json.loads(out)[2]["lambda"] == 97


def test_normalform(capsys):
    assert run(capsys, "ring", "normalform", "2a")[:2] == (0, "0\n")
    assert run(capsys, "ring", "normalform", "u2*s^8*u1*s^4")[1] == "u1*u2*s^12\n"


def test_normalform_bad_element(capsys):
    code, _, err = run(capsys, "ring", "normalform", "q^2")
    assert code == 2 and "error" in err


def test_ss_compare_exit_codes(capsys, tmp_path):
    args = ["ss", "compare", "--n-max", "1", "--sigma-window", "-8:8", "--a-max", "8", "--max-weight", "3"]
    assert run(capsys, *args)[0] == 0
    gens = tmp_path / "u.json"
    gens.write_text(json.dumps({"generators": [{"k": 1, "expansion_in_v": [[3, [1]]]}]}))
    assert run(capsys, *args, "--generators", str(gens))[0] == 0


def test_ss_run_deterministic(capsys, tmp_path):
    args = ["ss", "run", "--n-max", "1", "--sigma-window", "-6:6", "--a-max", "5", "--max-weight", "2"]
    for fmt in ("text", "json"):
        a = run(capsys, *args, "--format", fmt)[1]
        b = run(capsys, *args, "--format", fmt)[1]
        assert a == b and a
    s1, s2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(capsys, *args, "--format", "svg", "--out", str(s1))[0] == 0
    assert run(capsys, *args, "--format", "json", "--chart", str(s2))[0] == 0
    assert s1.read_bytes() == s2.read_bytes() and s1.read_text().lstrip().startswith("<?xml")


def test_window_file(capsys, tmp_path):
    w = tmp_path / "w.json"
    w.write_text(json.dumps({"n_max": 1, "sigma_window": [-4, 4], "a_max": 4, "max_weight": 1}))
    code, out, _ = run(capsys, "ss", "run", "--window", str(w), "--format", "json")
    assert code == 0 and json.loads(out)["r"] == 4


@pytest.mark.parametrize("content, needle", [
    ("{bad", "line 1"),
    ('{"generators": 5}', "generators"),
    ('{"generators": [{"k": 1}]}', "expansion_in_v"),
    ('{"generators": [{"k": 9, "expansion_in_v": []}]}', "outside"),
    ('{"generators": [{"k": 1, "expansion_in_v": [[2, [1]]]}]}', "unit"),
])
def test_malformed_generators_exit_2(capsys, tmp_path, content, needle):
    g = tmp_path / "g.json"
    g.write_text(content)
    code, _, err = run(capsys, "ss", "run", "--n-max", "1", "--generators", str(g))
    assert code == 2 and needle in err


def test_bad_flags_exit_2(capsys):
    assert run(capsys, "ss", "run", "--sigma-window", "3:1")[0] == 2
    assert run(capsys, "ss", "run", "--a-max", "-1")[0] == 2
    assert run(capsys, "ss", "run", "--generators", "/nonexistent.json")[0] == 2
    assert run(capsys, "nosuch")[0] == 2


def test_descent_check(capsys):
    code, out, _ = run(capsys, "descent", "check", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and len(rows) == 9
    assert all(r["galois"] == r["expected"] for r in rows)


def test_descent_check_bad_corpus(capsys, tmp_path):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"extensions": [{"name": "x", "A": {"type": "Zmod", "n": 2},
                                             "B": {"type": "Zmod", "n": 2}, "group": {"cyclic": 2},
                                             "action": {"y": "1"}}]}))
    code, _, err = run(capsys, "descent", "check", "--corpus", str(c))
    assert code == 2 and "unknown generator" in err


def test_descent_check_reports_mismatch(capsys, tmp_path):
    c = tmp_path / "c.json"
    c.write_text(json.dumps({"extensions": [{"name": "x", "A": {"type": "Zmod", "n": 2},
                                             "B": {"type": "GF", "p": 2, "poly": [1, 1, 1]},
                                             "group": {"cyclic": 2}, "action": {"x": "x+1"},
                                             "expect_galois": False}]}))
    assert run(capsys, "descent", "check", "--corpus", str(c))[0] == 1


def test_descent_roundtrip(capsys):
    code, out, _ = run(capsys, "descent", "roundtrip", "--name", "F2->F4", "--bound", "16", "--format", "json")
    rows = json.loads(out)
    assert code == 0 and rows[0]["report"]["complete"]
