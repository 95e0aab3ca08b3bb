import json

import pytest

from almonoid.algebra import builtin
from almonoid.cli import main
from almonoid.profiles import ProfileReport
from almonoid.terms import ClaimReport
from almonoid.textformat import format_algebra, parse_algebras


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, uri in (("b2", "boolean:2"), ("mv3", "mv:3")):
        p = tmp_path / f"{name}.alg"
        p.write_text(format_algebra(builtin(uri)))
        paths[name] = str(p)
    nostar = format_algebra(builtin("boolean:2")).split("star")[0] + "star derived\n"
    (tmp_path / "b4_nostar.alg").write_text(nostar)
    paths["nostar"] = str(tmp_path / "b4_nostar.alg")
    broken = format_algebra(builtin("boolean:1")).replace("plus\n0 1\n1 1", "plus\n0 1\n1 9")
    (tmp_path / "broken.alg").write_text(broken)
    paths["broken"] = str(tmp_path / "broken.alg")
    (tmp_path / "mine.clm").write_text("claim wrong : forall a b :\n  a + b = a\n")
    paths["claims"] = str(tmp_path / "mine.clm")
    (tmp_path / "bad.clm").write_text("claim bad : forall a : a = q\n")
    paths["badclaims"] = str(tmp_path / "bad.clm")
    (tmp_path / "part.json").write_text("[[0, 1], [2, 3]]")
    paths["part"] = str(tmp_path / "part.json")
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_pass(files, capsys):
    code, out, _ = run(capsys, "check", files["b2"], "--profile", "al-monoid")
    assert code == 0 and "Holds" in out


def test_check_top_model_drl(capsys):
    code, out, _ = run(capsys, "check", "intwithtop", "--builtin", "--profile", "drl")
    assert code == 1 and "DRL2: Fails" in out and "U" in out


def test_check_broken_file(files, capsys):
    code, _, err = run(capsys, "check", files["broken"])
    assert code == 2 and "error" in err


def test_usage_errors(capsys):
    assert run(capsys, "check")[0] == 2
    assert run(capsys, "check", "boolean:2", "--profile", "nope")[0] == 2
    assert run(capsys, "check", "no/such/file.alg")[0] == 2


def test_claims_builtin(capsys):
    code, out, _ = run(capsys, "claims", "--builtin", "mv:4")
    assert code == 1 and "Tl_pixley_xyy: Fails" in out
    code, out, _ = run(capsys, "claims", "--builtin", "int:20", "--format", "json")
    data = json.loads(out)[0]
    assert code == 1
    assert {"L1", "L6", "T1_2", "T1_3", "L10", "Tl_pixley_xyy", "Tl_pixley_yyx", "Tl_pixley_xyx"} <= set(data["fails"])
    for d in data["claims"]:
        assert ClaimReport.from_dict(d).to_dict() == d


def test_user_claims(files, capsys):
    code, out, _ = run(capsys, "claims", files["b2"], "--claims", files["claims"])
    assert code == 1 and "wrong: Fails" in out and "a=0, b=1" in out
    code, _, err = run(capsys, "claims", files["b2"], "--claims", files["badclaims"])
    assert code == 2 and "line 1" in err


def test_search(capsys):
    code, out, _ = run(capsys, "search", "--size", "2", "--satisfy", "al-monoid", "--canonical")
    assert code == 0 and len(parse_algebras(out)) == 1
    code, out, _ = run(capsys, "search", "--size", "4", "--canonical")
    assert len(parse_algebras(out)) == 5
    code, out, _ = run(capsys, "search", "--size", "5", "--violate", "AX4", "--canonical", "--format", "json")
    assert code == 1 and len(json.loads(out)) == 1


def test_analyze(files, capsys):
    code, out, _ = run(capsys, "analyze", files["mv3"], "--complemented")
    assert code == 0 and "complemented: {0, 2}" in out
    code, out, _ = run(capsys, "analyze", "boolean:2", "--format", "json")
    data = json.loads(out)[0]
    assert data["reports"]["complemented"]["elements"] == [0, 1, 2, 3]
    assert data["cone"]["verdict"] == "Holds"
    assert run(capsys, "analyze", "int:5")[0] == 2


def test_congruences(capsys):
    code, out, _ = run(capsys, "congruences", "mv:3", "--lattice")
    assert code == 0 and "[[0],[1],[2]]" in out and "[[0,1,2]]" in out
    code, out, _ = run(capsys, "congruences", "boolean:2", "--format", "json")
    assert len(json.loads(out)[0]["congruences"]) == 4


def test_construct(files, capsys):
    code, out, _ = run(capsys, "construct", "drl2al", files["nostar"])
    assert code == 0
    assert parse_algebras(out)[0].star_table == builtin("boolean:2").star_table
    code, out, _ = run(capsys, "construct", "product", "boolean:1", "mv:3")
    assert code == 0 and parse_algebras(out)[0].size == 6
    code, out, _ = run(capsys, "construct", "quotient", "boolean:2", files["part"])
    assert code == 0 and parse_algebras(out)[0].size == 2
    code, out, _ = run(capsys, "construct", "sub", "boolean:2", "0,3")
    assert code == 0 and parse_algebras(out)[0].size == 2
    assert run(capsys, "construct", "quotient", "mv:3", "[[0,1],[2]]")[0] == 1
    assert run(capsys, "construct", "drl2al", "intu:20")[0] == 1
    assert run(capsys, "construct", "sub", "boolean:2")[0] == 2


def test_independence(capsys):
    code, out, _ = run(capsys, "independence")
    assert code == 0
    assert "V d (V ^ U) + (V ^ U) = V d U + U = V + U = U != V" in out
    assert "not-AX4: independent" in out


def test_json_profile_round_trip(capsys):
    code, out, _ = run(capsys, "check", "boolean:2", "--format", "json", "--profile", "drl")
    data = json.loads(out)[0]
    rep = ProfileReport("drl", {d["id"]: ClaimReport.from_dict(d) for d in data["axioms"]})
    assert rep.verdict == data["verdict"] == "Holds"


def test_output_independent_of_jobs(capsys, monkeypatch):
    first = run(capsys, "claims", "int:8", "--jobs", "1")
    second = run(capsys, "claims", "int:8", "--jobs", "3")
    assert first == second
    monkeypatch.setenv("ALMONOID_JOBS", "2")
    assert run(capsys, "search", "--size", "4", "--canonical") == run(capsys, "search", "--size", "4", "--canonical", "--jobs", "1")
