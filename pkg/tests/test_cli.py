import json
import shutil
import subprocess
import sys

import pytest

from gcgw.cli import main
from gcgw.io import fixture_dir


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, doc, name="prob.json"):
    p = tmp_path / name
    p.write_text(json.dumps(doc))
    return str(p)


IWASAWA_DOC = {
    "schema": "gcgw/problem/1",
    "lie_algebra": {"dim": 6, "d": {"e5": "e1^e3 + e4^e2", "e6": "e1^e4 + e2^e3"}},
    "gcs": {"spinor": {"omega": "e5^e6", "theta": ["e1 + i e2", "e3 - i e4"]}},
    "tasks": ["validate", {"op": "calabi_yau", "strong": True}, {"op": "cohomology", "flavor": "D"}],
}


def test_iwasawa_run(tmp_path, capsys):
    code, out, _ = run(capsys, "run", write(tmp_path, IWASAWA_DOC), "--json")
    rep = json.loads(out)
    assert code == 0 and rep["passed"] and rep["schema"] == "gcgw/report/1"
    assert [t["verdict"] for t in rep["tasks"]] == ["pass"] * 3
    assert rep["tasks"][2]["values"]["dims"]["D"] == [1, 4, 6, 4, 1]


def test_projective_line_atiyah(capsys):
    code, out, _ = run(capsys, "atiyah", "p1_o(1)")
    assert code == 0
    assert "xi_U0,U1 = (1/z)*dz" in out
    assert "no connection within bound 4" in out


def test_malformed_form_exit_2(tmp_path, capsys):
    doc = {"lie_algebra": {"dim": 3, "d": {"e3": "e1^^e2"}}, "tasks": ["validate"]}
    code, _, err = run(capsys, "run", write(tmp_path, doc))
    assert code == 2
    assert "/lie_algebra/d/e3" in err and "position 3" in err


@pytest.mark.parametrize(
    "doc",
    [
        {"bogus": 1},
        {"schema": "gcgw/problem/0"},
        {"lie_algebra": {"dim": 2}, "gcs": {"matrix": {}, "spinor": {}}},
        {"tasks": [{"op": "no_such_task"}]},
        {"tasks": [3]},
    ],
)
def test_schema_errors_exit_2(tmp_path, capsys, doc):
    code, _, err = run(capsys, "run", write(tmp_path, doc))
    assert code == 2 and err.startswith("gcgw: ")


def test_bad_json_and_missing_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "run", str(p))[0] == 2
    assert run(capsys, "run", "no_such_fixture")[0] == 2


def test_failed_verdict_exit_1(capsys):
    code, out, _ = run(capsys, "run", "iwasawa_literal")
    assert code == 1
    assert "[FAIL] calabi_yau" in out and "d rho = 2*e1^e2^e3^e4^e5 + 2 i*e1^e2^e3^e4^e6" in out


def test_invalid_lie_table_reported(tmp_path, capsys):
    doc = {"lie_algebra": {"dim": 4, "d": {"e3": "e1^e2", "e2": "e3^e4"}}}
    code, out, _ = run(capsys, "check", write(tmp_path, doc))
    assert code == 1 and "[FAIL] validate" in out


def test_contract_violation_exit_3(tmp_path, capsys):
    # a non-GH transition makes the Atiyah computation a contract violation
    doc = {
        "bundle": {
            "charts": ["U0", "U1"],
            "vars": {"U0": ["z"], "U1": ["w"]},
            "glue": {"U0,U1": {"w": "1/z"}},
            "transition": {"U0,U1": [["zbar"]]},
        },
        "tasks": ["atiyah"],
    }
    code, out, _ = run(capsys, "run", write(tmp_path, doc))
    assert code == 3 and "[ERROR] atiyah" in out


def test_corrupted_plane_witness(capsys):
    code, out, _ = run(capsys, "check", "corrupted_plane")
    assert code == 1 and "witness" in out


def test_deterministic_output(capsys):
    first = run(capsys, "run", "iwasawa", "--json")[1]
    second = run(capsys, "run", "iwasawa", "--json")[1]
    assert first == second
    a = run(capsys, "run", "p1_o(1)")[1]
    b = run(capsys, "run", "p1_o(1)")[1]
    assert a == b


def test_subprocess_byte_identical():
    cmd = [sys.executable, "-m", "gcgw.cli", "run", "p1_rank2_jordan", "--json"]
    outs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]


def test_fixture_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    names = out.split()
    assert code == 0 and "iwasawa" in names and "p1_o(1)" in names
    assert json.loads(run(capsys, "fixtures", "--json")[1]) == names


def test_empty_fixture_override(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("GCGW_FIXTURES", str(tmp_path))
    assert run(capsys, "fixtures", "--json")[1].strip() == "[]"
    assert run(capsys, "run", "iwasawa")[0] == 2


def test_fixture_override_serves_copies(tmp_path, monkeypatch, capsys):
    shutil.copy(fixture_dir() / "torus4.json", tmp_path / "mine.json")
    monkeypatch.setenv("GCGW_FIXTURES", str(tmp_path))
    assert run(capsys, "fixtures")[1].split() == ["mine"]
    assert run(capsys, "type", "mine")[0] == 0


@pytest.mark.parametrize("name", ["iwasawa", "iwasawa_complex", "kodaira_thurston", "torus4", "torus6", "complex_plane", "symplectic_plane", "p1_o(1)", "p1_o(-1)", "p1_o(0)", "p1_rank2_flat", "p1_rank2_jordan", "p1_rank2_diag", "p2_o(1)", "p2_tangent"])
def test_shipped_fixtures_pass(capsys, name):
    code, out, _ = run(capsys, "run", name)
    assert code == 0, out


def test_p1_leaf_fixture_fails(capsys):
    code, out, _ = run(capsys, "run", "p1_leaf")
    assert code == 1 and "p1" in out


def test_approx_is_marked(capsys):
    code, out, _ = run(capsys, "chern", "p1_o(1)", "--approx")
    assert code == 0 and "non-authoritative" in out
    rep = json.loads(run(capsys, "chern", "p1_o(1)", "--approx", "--json")[1])
    assert any("approx" in t for t in rep["tasks"])
    plain = json.loads(run(capsys, "chern", "p1_o(1)", "--json")[1])
    assert not any("approx" in t for t in plain["tasks"])


def test_subcommands(capsys):
    assert run(capsys, "bott", "--n", "1", "--m", "-3", "--q", "1")[1].count("2") >= 1
    code, out, _ = run(capsys, "bott", "--n", "1", "--m", "2", "--json")
    assert code == 0 and json.loads(out)["tasks"][0]["values"]["dim"] == 3
    code, out, _ = run(capsys, "oracle", "p1", "--m", "2", "--q", "0", "--json")
    assert code == 0 and json.loads(out)["tasks"][0]["values"]["dim"] == 3
    code, _, err = run(capsys, "oracle", "p1", "--m", "4", "--q", "0", "--truncation", "5")
    assert code in (2, 3)
    code, out, _ = run(capsys, "picard", "p1_o(1)", "--with", "p1_o(-1)")
    assert code == 0 and "trivial" in out
    assert run(capsys, "cy", "iwasawa", "--strong")[0] == 0
    assert run(capsys, "cohomology", "iwasawa", "--flavor", "dL")[0] == 0
    assert run(capsys, "hodge", "torus6")[0] == 0
    assert run(capsys, "chern", "p1_rank2_diag", "--degree", "2", "--convention", "principal")[0] == 0
    assert run(capsys, "type", "symplectic_plane")[0] == 0


def test_every_verdict_reproducible_from_library(capsys):
    from gcgw.gcs import check_calabi_yau
    from gcgw.io import load_problem

    prob = load_problem("iwasawa")
    rep = json.loads(run(capsys, "cy", "iwasawa", "--strong", "--json")[1])
    lib = check_calabi_yau(prob.lie, prob.spinor, strong=True)
    assert (rep["tasks"][0]["verdict"] == "pass") == lib.passed
