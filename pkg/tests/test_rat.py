from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from umx.errors import RatParseError
from umx.rat import as_rat, format_rat, parse_rat


@pytest.mark.parametrize(
    "text, value",
    [("0", Fraction(0)), ("3", Fraction(3)), ("1/5", Fraction(1, 5)), ("22/7", Fraction(22, 7)), (4, Fraction(4))],
)
def test_parse_canonical(text, value):
    assert parse_rat(text) == value


@pytest.mark.parametrize("text", ["2/4", "3/1", "0/5", "007", "01/2", "-1", "1/-2", "0.5", " 1", "1/0", "", "+1", "a/b"])
def test_rejects_non_canonical(text):
    with pytest.raises(RatParseError):
        parse_rat(text)


def test_non_reduced_error_names_the_reduced_form():
    with pytest.raises(RatParseError, match="1/2"):
        parse_rat("2/4")


@pytest.mark.parametrize("bad", [True, 0.5, -3, None, [1]])
def test_rejects_other_types(bad):
    with pytest.raises(RatParseError):
        parse_rat(bad)


def test_as_rat_refuses_float():
    with pytest.raises(RatParseError):
        as_rat(0.25)
    assert as_rat(Fraction(1, 4)) == Fraction(1, 4)


@given(st.fractions(min_value=0, max_value=10**6))
def test_roundtrip(q):
    assert parse_rat(format_rat(q)) == q
