import pytest

from almonoid.algebra import FiniteAlgebra, NoUnity, builtin
from almonoid.structure import (AMBIGUOUS_UNITY, NotClosed, complemented, find_unity, idempotents,
                                invertible_formulas_check, invertibles, is_isometry, positive_cone,
                                star_translation_scan, translation_isometry_scan)

import oracle


@pytest.mark.parametrize("uri", ["boolean:2", "mv:3", "one"])
def test_only_zero_is_invertible(uri):
    rep = invertibles(builtin(uri))
    assert rep.elements == [0] and rep.holds
    assert rep.data["inverse"] == {0: 0}


def test_invertibles_in_integer_window():
    A = builtin("int:20")
    rep = invertibles(A)
    assert len(rep.elements) == 41
    assert all(A.plus(a, rep.data["inverse"][a]) == 0 for a in rep.elements)
    # the inverse of x is -x, not 0 * x = |x|
    assert rep.failed() == ["inverse-is-zero-star"]


def test_integer_formulas():
    rep = invertible_formulas_check(builtin("int:20"))
    assert rep.holds and rep.data["checked"] > 0


def test_vacuous_formulas():
    rep = invertible_formulas_check(builtin("boolean:2"))
    assert rep.holds and rep.notes == ["vacuous: only 0 is invertible"]


def test_idempotents():
    assert idempotents(builtin("boolean:2")).elements == [0, 1, 2, 3]
    rep = idempotents(builtin("mv:3"))
    assert rep.elements == [0, 2] and rep.holds
    assert idempotents(builtin("int:20")).elements == [0]


def test_unity():
    assert find_unity(builtin("boolean:2"))[0] == 3
    u, rep = find_unity(builtin("mv:3"))
    assert u == 2 and rep.holds
    assert find_unity(builtin("int:20"))[0] is None


CHAIN2 = ([[0, 1], [1, 1]], [[0, 0], [0, 1]])


def test_ambiguous_unity_flag():
    # with + as addition mod 2 both elements satisfy a + (a * u) = u + u
    A = FiniteAlgebra.from_tables([[0, 1], [1, 0]], *CHAIN2, [[0, 0], [1, 1]])
    u, rep = find_unity(A)
    assert rep.elements == [0, 1] and u == 0
    assert AMBIGUOUS_UNITY in rep.notes


def test_complemented():
    rep = complemented(builtin("boolean:3"))
    assert rep.elements == list(range(8)) and rep.holds
    rep = complemented(builtin("mv:3"))
    assert rep.elements == [0, 2] and rep.holds
    rep = complemented(builtin("one"))
    assert rep.elements == [0] and rep.holds
    no_unity = FiniteAlgebra.from_tables([[0, 1], [1, 1]], *CHAIN2, [[0, 0], [0, 0]])
    with pytest.raises(NoUnity):
        complemented(no_unity)


def test_isometries():
    B = builtin("boolean:2")
    assert is_isometry(B, list(B.elements()))[0]
    assert is_isometry(B, [B.star(x, 3) for x in B.elements()])[0]
    A = builtin("mv:3")
    ok, w = is_isometry(A, [A.plus(x, 1) for x in A.elements()])
    assert not ok and w[0] == "not-bijective"


@pytest.mark.parametrize("uri", ["boolean:2", "mv:3", "one", "godel:4"])
def test_translation_scan_matches_oracle(uri):
    A = builtin(uri)
    rep = translation_isometry_scan(A)
    assert rep.holds
    assert rep.elements == oracle.translation_isometries(A)


def test_star_translation_scan():
    rep = star_translation_scan(builtin("boolean:2"))
    assert rep.data["premise"] and rep.holds and rep.elements == [0, 1, 2, 3]
    rep = star_translation_scan(builtin("mv:3"))
    assert not rep.data["premise"] and rep.data["premise_witness"][0] == 1
    assert star_translation_scan(builtin("one")).holds


@pytest.mark.parametrize("uri", ["boolean:2", "mv:3", "mv:5"])
def test_positive_cone(uri):
    A = builtin(uri)
    C, rep = positive_cone(A)
    assert C.size == A.size and rep.holds
    assert rep.axioms["RESIDUAL_IS_STAR"].holds


def test_proper_cone():
    # 3-chain with zero in the middle: -1 < 0 < 1, truncated sum, star = truncated |a - b|
    vals = [-1, 0, 1]
    clamp = lambda v: vals.index(max(-1, min(1, v)))
    T = lambda f: [[f(vals[i], vals[j]) for j in range(3)] for i in range(3)]
    A = FiniteAlgebra(3, 1, T(lambda a, b: clamp(a + b)), T(lambda a, b: vals.index(max(a, b))),
                      T(lambda a, b: vals.index(min(a, b))), T(lambda a, b: clamp(abs(a - b))))
    C, rep = positive_cone(A)
    assert rep.extra["embedding"] == (1, 2) and C.size == 2
    assert rep.holds


def test_cone_not_closed():
    # zero is the middle of a 3-chain and 1 * 2 = 0 leaves the cone {1, 2}
    plus = [[0, 0, 0], [0, 1, 2], [0, 2, 2]]
    join = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
    meet = [[0, 0, 0], [0, 1, 1], [0, 1, 2]]
    star = [[1, 2, 2], [2, 1, 0], [2, 0, 1]]
    A = FiniteAlgebra(3, 1, plus, join, meet, star)
    with pytest.raises(NotClosed) as e:
        positive_cone(A)
    assert e.value.witness == ("star", 1, 2)
