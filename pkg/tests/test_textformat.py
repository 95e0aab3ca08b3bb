import pytest

from almonoid.algebra import builtin
from almonoid.textformat import AlgebraParseError, format_algebra, format_algebras, parse_algebra, parse_algebras


@pytest.mark.parametrize("uri", ["one", "boolean:2", "mv:4", "godel:3"])
def test_round_trip(uri):
    A = builtin(uri)
    B = parse_algebra(format_algebra(A, "a comment"))
    assert B == A


def test_several_models():
    ms = [builtin("boolean:1"), builtin("mv:3")]
    assert parse_algebras(format_algebras(ms)) == ms


def test_star_derived():
    B = builtin("boolean:2")
    text = format_algebra(B).split("star")[0] + "star derived\n"
    assert parse_algebra(text).star_table == B.star_table


def test_bad_row_has_line_number():
    text = format_algebra(builtin("boolean:1")).replace("1 1\n", "1 7\n", 1)
    with pytest.raises((AlgebraParseError, ValueError)):
        parse_algebra(text)


def test_missing_header():
    with pytest.raises(AlgebraParseError) as e:
        parse_algebra("# nothing\nzero 0\n")
    assert e.value.line == 2
