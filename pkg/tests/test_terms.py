import pytest
from hypothesis import given, settings, strategies as st

from almonoid.algebra import builtin
from almonoid.catalog import CATALOG, get_claim
from almonoid.terms import (App, ClaimReport, ClaimSyntaxError, Const, UnboundVariable, Var, check_claim,
                            eval_term, format_claim, format_term, is_violation, parse_claim, parse_claims,
                            parse_term)

VARS = ("x", "y", "z")


def terms():
    leaf = st.one_of(st.sampled_from([Var(v) for v in VARS]), st.sampled_from([Const("0"), Const("1")]))
    return st.recursive(leaf, lambda t: st.builds(App, st.sampled_from("+|^d"), t, t), max_leaves=8)


@given(terms())
def test_term_print_parse_round_trip(t):
    assert parse_term(format_term(t), VARS) == t


@given(terms(), st.data())
@settings(max_examples=60)
def test_printed_term_evaluates_the_same(t, data):
    A = builtin("mv:4")
    env = {v: data.draw(st.integers(0, 3)) for v in VARS}
    assert eval_term(A, parse_term(format_term(t), VARS), env) == eval_term(A, t, env)


@pytest.mark.parametrize("cid", list(CATALOG))
def test_catalog_claims_round_trip(cid):
    c = CATALOG[cid]
    again = parse_claim(format_claim(c))
    assert (again.vars, again.hypotheses, again.conclusion) == (c.vars, c.hypotheses, c.conclusion)


def test_same_operator_chains_left():
    t = parse_term("x + y + z", VARS)
    assert t == App("+", App("+", Var("x"), Var("y")), Var("z"))


@pytest.mark.parametrize("src", [
    "claim a : forall x : x + x | x = x",
    "claim a : forall x : x = 2",
    "claim a : forall x x : x = x",
    "claim a : forall x : x = x & x = x",
    "claim a : forall : 0 = 0",
    "claim a : forall x : (x + x = x",
])
def test_syntax_errors(src):
    with pytest.raises(ClaimSyntaxError):
        parse_claim(src)


def test_unbound_variable_position():
    with pytest.raises(UnboundVariable) as e:
        parse_claim("claim a : forall x :\n  x = y")
    assert e.value.lineno == 2


def test_claims_file_line_numbers():
    text = "# mine\nclaim ok : forall a : a = a\n\nclaim bad : forall a :\n  a = b\n"
    with pytest.raises(UnboundVariable) as e:
        parse_claims(text)
    assert e.value.lineno == 5
    assert [c.id for c in parse_claims(text.replace("a = b", "a = a"))] == ["ok", "bad"]


def test_quasi_identity_hypotheses():
    c = parse_claim("claim q : forall a b : a <= b & b <= a ==> a = b")
    assert len(c.hypotheses) == 2
    assert check_claim(builtin("boolean:2"), c).holds


def test_first_violation_is_lexicographic():
    A = builtin("mv:3")
    r = check_claim(A, CATALOG["Tl_pixley_xyy"])
    assert r.fails and r.witness == {"x": 2, "y": 1}
    assert is_violation(A, CATALOG["Tl_pixley_xyy"], r.witness)


def test_false_user_claim():
    c = parse_claim("claim wrong : forall a b : a + b = a")
    r = check_claim(builtin("boolean:2"), c)
    assert r.fails and r.witness == {"a": 0, "b": 1}


def test_window_skips_make_inconclusive():
    A = builtin("int:20")
    r = check_claim(A, CATALOG["L2_5"])
    assert r.verdict == "Inconclusive"
    assert r.checked + r.skipped == 41 ** 2 and r.skipped > 0


def test_unity_claim_without_unity():
    r = check_claim(builtin("int:5"), CATALOG["UNITY"])
    assert r.verdict == "Inconclusive" and r.reason == "NoUnity"


@pytest.mark.parametrize("cid", ["L1", "T1_3", "L2_7", "Tl_pixley_xyx"])
def test_parallel_scan_matches_serial(cid):
    A = builtin("int:6")
    assert check_claim(A, CATALOG[cid], jobs=3) == check_claim(A, CATALOG[cid], jobs=1)


def test_report_json_round_trip():
    A = builtin("intu:4")
    r = check_claim(A, CATALOG["AX2"])
    for rep in (r, check_claim(builtin("int:20"), CATALOG["L1"])):
        assert ClaimReport.from_dict(rep.to_dict(), A) == rep


def test_lookup_case_insensitive():
    assert get_claim("l2_5") is CATALOG["L2_5"]
    with pytest.raises(KeyError):
        get_claim("nope")
