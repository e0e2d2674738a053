import json

import pytest

from gcpseudo.cli import main
from gcpseudo.fixtures import F_EXAMPLE, F_HAT


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def write(tmp_path):
    def _write(name, obj):
        p = tmp_path / name
        p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(p)

    return _write


def test_gen_cone_text(capsys):
    code, out, _ = run(capsys, "gen-cone", "paper-4-2")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "# K3: 32 inequalities + 8 nonnegativity"
    assert len(lines) == 41


def test_gen_cone_json_and_latex(capsys):
    code, out, _ = run(capsys, "--format", "json", "gen-cone", "paper-4-2")
    doc = json.loads(out)
    assert code == 0 and len(doc["inequalities"]) == 40
    code, out, _ = run(capsys, "gen-cone", "paper-4-2", "--format", "latex")
    assert r"\le" in out


def test_gen_cone_binary(capsys, write):
    code, out, _ = run(capsys, "gen-cone", write("h.json", {"q": 2, "entries": [[1, 1, 1]]}))
    assert code == 0
    assert "# K2: 3 inequalities + 3 nonnegativity" in out
    assert "f_1 <= f_2 + f_3" in out


def test_malformed_json_reports_position(capsys, write):
    code, _, err = run(capsys, "gen-cone", write("bad.json", '{"q": 3,\n "entries": [[1, 2]'))
    assert code == 2
    assert "bad.json:2:" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "gen-cone", "no-such-file.json")
    assert code == 2 and "not a built-in fixture" in err


def test_check_example(capsys):
    code, out, _ = run(capsys, "check", "paper-4-2", "paper-f")
    assert code == 0
    assert "pseudocodeword: yes" in out
    assert "mod-3 residues: 0 0" in out


def test_check_zero_and_violation(capsys, write):
    code, out, _ = run(capsys, "check", "paper-4-2", write("z.json", [[0] * 4, [0] * 4]))
    assert code == 0 and "pseudocodeword: yes" in out
    code, out, _ = run(capsys, "check", "paper-4-2", write("v.json", [[3, 0, 0, 0], [0, 0, 0, 0]]))
    assert code == 1
    assert "cone violation: 2 f_1^{(1)} + f_1^{(2)} <= " in out


def test_check_rational_point(capsys, write):
    code, out, _ = run(capsys, "check", "paper-4-2", write("r.json", [["1/2"] * 4, ["1/2", "1/2", 0, 0]]))
    assert code == 1
    assert "cone membership: yes" in out and "n/a" in out


def test_check_dimension_mismatch(capsys, write):
    code, _, err = run(capsys, "check", "paper-4-2", write("d.json", [[1, 1, 1], [0, 0, 0]]))
    assert code == 2 and "shape" in err
    code, _, _ = run(capsys, "check", "paper-4-2", write("q.json", {"q": 2, "entries": [[1, 1, 1, 1]]}))
    assert code == 2


def test_lift_trace_and_round_trip(capsys, tmp_path):
    out_file = tmp_path / "cover.json"
    code, out, _ = run(capsys, "lift", "paper-hs", "paper-fhat", "--trace", "--choose", "3,1", "--choose", "3,1",
                       "--out", str(out_file))
    assert code == 0
    assert "M' = 4, M = 10" in out
    assert "F = [[2, 2, 1, 0], [1, 2, 0, 2]]" in out
    assert "F = [[2, 2, 0, 0], [0, 2, 0, 2]]" in out
    assert "type-1 pairs: {1,3}; type-2 pairs: {1,4}" in out
    code, out, _ = run(capsys, "verify", str(out_file))
    assert code == 0
    assert f"F = {F_HAT}" in out


def test_lift_full_round_trip(capsys, tmp_path):
    out_file = tmp_path / "cover.json"
    code, _, _ = run(capsys, "lift", "paper-4-2", "paper-f", "--out", str(out_file))
    assert code == 0
    code, out, _ = run(capsys, "verify", str(out_file))
    assert code == 0 and f"F = {F_EXAMPLE}" in out


def test_lift_zero_and_failures(capsys, write, tmp_path):
    out_file = tmp_path / "zero-cover.json"
    code, _, _ = run(capsys, "lift", "paper-4-2", write("z.json", [[0] * 4, [0] * 4]), "--out", str(out_file))
    assert code == 0 and json.loads(out_file.read_text())["M"] == 1
    code, _, err = run(capsys, "lift", "paper-4-2", write("m.json", [[3, 3, 3, 3], [3, 3, 0, 1]]))
    assert code == 1 and "mod-3 condition fails" in err
    code, _, err = run(capsys, "lift", "paper-4-2", "paper-f", "--choose", "1,2")
    assert code == 2


def test_bad_choose_argument(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["lift", "paper-hs", "paper-fhat", "--choose", "x"])
    assert exc.value.code == 2


def test_verify_shipped_cover(capsys):
    code, out, _ = run(capsys, "verify", "paper-cover-16")
    assert code == 0
    assert f"F = {F_EXAMPLE}" in out


def test_verify_tampered_label(capsys, write):
    _, out, _ = run(capsys, "fixture", "paper-cover-16")
    doc = json.loads(out)
    doc["labels"][0][0] = 0
    code, out, _ = run(capsys, "verify", write("t.json", doc))
    assert code == 1
    assert "parity check fails at v_1,3" in out


def test_verify_broken_structure(capsys, write):
    _, out, _ = run(capsys, "fixture", "paper-cover-16")
    doc = json.loads(out)
    doc["perms"]["1,1"] = [1, 1, 2, 3]
    code, out, _ = run(capsys, "verify", write("s.json", doc))
    assert code == 1
    assert "do not form a perfect matching" in out


def test_enumerate(capsys):
    code, out, _ = run(capsys, "--format", "json", "enumerate", "paper-4-2", "--degree", "2")
    assert code == 0 and json.loads(out)["count"] == 81


def test_theorems(capsys):
    code, out, _ = run(capsys, "theorems", "paper-4-2", "--necessity", "2", "--full")
    assert code == 0 and "checked 90: ok" in out
    code, out, _ = run(capsys, "theorems", "paper-4-2", "--sufficiency", "3")
    assert code == 0 and "checked 4916: ok" in out
    code, out, _ = run(capsys, "--seed", "3", "theorems", "paper-hs", "--lemmas", "2", "--random", "1")
    assert code == 0 and "[lemmas]" in out


def test_absurd_budget(capsys):
    code, _, err = run(capsys, "enumerate", "paper-4-2", "--degree", "9")
    assert code == 3 and "budget" in err
    code, _, _ = run(capsys, "theorems", "paper-4-2", "--necessity", "3", "--budget", "10")
    assert code == 3


def test_approx(capsys, write):
    code, out, _ = run(capsys, "approx", "paper-4-2", write("z.json", [["1/2"] * 4, ["1/2", "1/2", 0, 0]]))
    assert code == 0
    assert "c = 1/6" in out and "F = [[3, 3, 3, 3], [3, 3, 0, 0]]" in out
    code, _, _ = run(capsys, "approx", "paper-4-2", write("o.json", [["1/2", 0, 0, 0], [0, 0, 0, 0]]))
    assert code == 1
    code, _, _ = run(capsys, "approx", "paper-4-2", write("f.json", [[0.5] * 4, [0] * 4]))
    assert code == 2


def test_fixture_listing(capsys):
    code, out, _ = run(capsys, "fixture", "paper-htilde")
    assert code == 0 and json.loads(out)["rows"] == 8
    code, _, err = run(capsys, "fixture", "nope")
    assert code == 2 and "paper-4-2" in err


def test_deterministic_output(capsys):
    first = run(capsys, "--seed", "1", "theorems", "paper-4-2", "--lemmas", "2", "--random", "2")
    second = run(capsys, "--seed", "1", "theorems", "paper-4-2", "--lemmas", "2", "--random", "2")
    assert first == second
