"""One test per acceptance criterion; each prints a PASS/FAIL line with its runtime."""
import itertools
import json

from almonoid.algebra import U, V, builtin
from almonoid.catalog import CATALOG
from almonoid.cli import main
from almonoid.congruence import all_congruences, check_con_distributive, check_con_permutable, pixley_check
from almonoid.constructions import closure, congruence_quotient, product, subalgebra
from almonoid.profiles import check_al_monoid, check_drl
from almonoid.search import SearchSpec, canonical_form, enumerate_models, models
from almonoid.structure import complemented, idempotents, positive_cone, translation_isometry_scan
from almonoid.terms import check_claim

import oracle

COMPLIANT_CLAIMS = ["AX2", "AX4", "CONTR_plus", "CONTR_join", "CONTR_meet", "CONTR_star", "L2_1", "L2_2",
                    "L2_3", "L2_4", "L2_5", "L2_6", "L2_7", "T23_1", "T23_2", "T23_3", "T23_4", "L9",
                    "STARFACT", "SYMDIFF"]
INT_FAILS = ["L1", "L6", "T1_2", "T1_3", "L10", "Tl_pixley_xyy", "Tl_pixley_yyx", "Tl_pixley_xyx"]


def cli_json(capsys, *argv):
    code = main(list(argv) + ["--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def enumerated(max_size):
    return [A for n in range(1, max_size + 1) for A in models(n)]


def witness_args(cid, witness):
    return tuple(witness[v] for v in CATALOG[cid].vars)


def test_criterion_1_top_model(criterion, capsys):
    with criterion(1, "intu:20 is an AL-monoid in-window but not DRl", limit=10):
        code, data = cli_json(capsys, "check", "intu:20", "--profile", "al-monoid")
        axioms = {d["id"]: d for d in data[0]["axioms"]}
        assert {"AX1", "AX2", "AX4"} <= set(axioms) and any(k.startswith("CONTR_") for k in axioms)
        assert all(d["verdict"] != "Fails" for d in axioms.values())
        assert all(d["checked"] > 0 for d in axioms.values())
        assert code == 0
        code, data = cli_json(capsys, "check", "intu:20", "--profile", "drl")
        drl = {d["id"]: d for d in data[0]["axioms"]}
        assert code == 1 and drl["DRL2"]["verdict"] == "Fails"
        assert "U" in drl["DRL2"]["witness"].values()


def test_criterion_2_independence(criterion, capsys):
    with criterion(2, "intuv:20 keeps AX1, contractions, AX4 and fails AX2 at (V,U)", limit=10):
        code, data = cli_json(capsys, "independence")
        d2 = data["directions"][0]
        assert code == 0 and d2["direction"] == "not-AX2" and d2["verdict"] == "independent"
        assert d2["AX2"]["verdict"] == "Fails"
        assert all(v != "Fails" for v in d2["other_axioms"].values())
        assert d2["explicit"]["computation"].startswith("V d (V ^ U) + (V ^ U) = V d U + U = V + U = U != V")
        W = builtin("intuv:20")
        m = W.meet(V, U)
        assert m == U and W.star(V, m) == V and W.plus(V, U) == U != V


def test_criterion_3_catalog_on_compliant_models(criterion):
    with criterion(3, "catalog identities hold with no skips on compliant models", limit=60):
        corpus = [builtin(f"boolean:{k}") for k in (1, 2, 3)] + [builtin(f"mv:{n}") for n in (3, 4, 5)]
        corpus += enumerated(4)
        bad = []
        for A in corpus:
            for cid in COMPLIANT_CLAIMS:
                r = check_claim(A, CATALOG[cid])
                if not r.holds or r.skipped:
                    bad.append((A.name, cid, r.verdict))
        assert not bad, bad


def test_criterion_4_discrepancies(criterion):
    with criterion(4, "int:20 fails l1,l6,T1_2,T1_3,l10,Pixley; oracle confirms witnesses", limit=30):
        A = builtin("int:20")
        for cid in INT_FAILS:
            r = check_claim(A, CATALOG[cid])
            assert r.fails, cid
            assert oracle.is_violation(A, cid, witness_args(cid, r.witness)), cid
        r = check_claim(builtin("mv:3"), CATALOG["Tl_pixley_xyy"])
        assert r.fails and r.witness == {"x": 2, "y": 1}
        assert oracle.is_violation(builtin("mv:3"), "Tl_pixley_xyy", (2, 1))


def test_criterion_5_variety_closure(criterion):
    with criterion(5, "products, subalgebras, quotients of size<=3 models stay AL-monoids", limit=120):
        base = enumerated(3)
        failures = []

        def verify(A, what):
            if not check_al_monoid(A).holds or not check_claim(A, CATALOG["L2_6"]).holds:
                failures.append(what)

        for A, B in itertools.product(base, repeat=2):
            P = product(A, B)
            verify(P, ("product", A.name, B.name))
            for M in (A, P):
                seen = set()
                for r in range(1, M.size + 1):
                    for seed in itertools.combinations(M.elements(), r):
                        S = tuple(closure(M, seed))
                        if S in seen:
                            continue
                        seen.add(S)
                        verify(subalgebra(M, seed)[0], ("sub", M.name, S))
                for theta in all_congruences(M, max_size=M.size):
                    verify(congruence_quotient(M, theta)[0], ("quotient", M.name, theta))
        assert not failures, failures


def _variants(A, ops):
    for op in ops:
        for a, b in itertools.product(A.elements(), repeat=2):
            for v in A.elements():
                if v != A.table(op)[a][b]:
                    yield A.patched(op, a, b, v)


def test_criterion_6_oracle_equivalence(criterion):
    with criterion(6, "check_claim agrees with the nested-loop oracle on every size<=4 model"):
        corpus = enumerated(4)
        corpus += [builtin(u) for u in ("one", "boolean:1", "boolean:2", "mv:2", "mv:3", "mv:4",
                                        "godel:2", "godel:3", "godel:4")]
        # every single-cell corruption of every table, so failing verdicts are exercised too
        for A in enumerated(4):
            corpus += list(_variants(A, ("plus", "join", "meet", "star")))
        disagreements = []
        for A in corpus:
            for cid, c in CATALOG.items():
                r = check_claim(A, c)
                verdict, wit, _ = oracle.oracle_check(A, cid)
                got = None if r.witness is None else witness_args(cid, r.witness)
                if r.verdict != verdict or got != wit:
                    disagreements.append((A.name, cid, r.verdict, verdict, got, wit))
                elif got is not None and not oracle.is_violation(A, cid, got):
                    disagreements.append((A.name, cid, "witness does not violate"))
        assert len(corpus) > 1000
        assert not disagreements, disagreements[:5]


SIZE_COUNTS = {1: 1, 2: 1, 3: 2, 4: 5}


def test_criterion_7_enumeration_fixtures(criterion):
    with criterion(7, "model counts 1,1,2,5 match the oracle; deterministic across runs and jobs"):
        for n, expected in SIZE_COUNTS.items():
            ms = list(enumerate_models(SearchSpec(n)))
            assert len(ms) == expected
            keys = {oracle.algebra_key(A) for A in ms}
            if n >= 3:
                assert keys == oracle.enumerate_al_monoids(n)
            again = list(enumerate_models(SearchSpec(n)))
            parallel = list(enumerate_models(SearchSpec(n), jobs=2))
            assert [canonical_form(A) for A in ms] == [canonical_form(A) for A in again] \
                == [canonical_form(A) for A in parallel]
            assert [A.star_table for A in ms] == [A.star_table for A in parallel]
        assert {oracle.algebra_key(A) for A in models(3)} == oracle.brute_force_al_monoids_3()


def test_criterion_8_structure(criterion):
    with criterion(8, "complemented, idempotents, isometry biconditional, positive cone"):
        B = builtin("boolean:2")
        rep = complemented(B)
        assert rep.elements == [0, 1, 2, 3] and rep.holds
        assert all(rep.data["complement"][a] == B.star(a, 3) for a in B.elements())
        mv = builtin("mv:3")
        assert complemented(mv).elements == [0, 2]
        assert idempotents(mv).elements == [0, 2]
        for A in enumerated(4):
            scan = translation_isometry_scan(A)
            assert scan.holds, A.name
            assert scan.elements == oracle.translation_isometries(A) and \
                set(scan.data["invertible"]) == set(oracle.units(A))
            C, cone = positive_cone(A)
            assert check_drl(C).holds and cone.holds, A.name
            assert cone.axioms["RESIDUAL_IS_STAR"].holds


def test_criterion_9_congruences(criterion):
    with criterion(9, "Con(mv:3), Con(boolean:2), Pixley implies arithmetical"):
        mv, B = builtin("mv:3"), builtin("boolean:2")
        assert all_congruences(mv) == [(0, 1, 2), (0, 0, 0)]
        assert len(all_congruences(B)) == 4
        for A in (mv, B):
            assert check_con_permutable(A).holds and check_con_distributive(A).holds
        checked = 0
        for A in enumerated(4) + [builtin(u) for u in ("one", "boolean:1", "boolean:2", "mv:3", "mv:4")]:
            if all(r.holds for r in pixley_check(A)):
                checked += 1
                assert check_con_permutable(A).holds and check_con_distributive(A).holds, A.name
        assert checked >= 1
