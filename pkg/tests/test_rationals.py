import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from jumpnum import format_rational, frac, parse_rational

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=997
)


@given(rationals)
def test_floor_plus_frac_is_identity(x):
    assert math.floor(x) + frac(x) == x


@given(rationals)
def test_frac_in_unit_interval(x):
    assert 0 <= frac(x) < 1


@given(rationals)
def test_parse_format_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_parse_rational_forms():
    assert parse_rational("3/7") == Fraction(3, 7)
    assert parse_rational("-4/6") == Fraction(-2, 3)
    assert parse_rational("5") == Fraction(5)


@pytest.mark.parametrize("bad", ["", "1.5", "a/b", "1/0", "1/-2"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_lowest_terms_positive_denominator():
    x = Fraction(6, -4)
    assert (x.numerator, x.denominator) == (-3, 2)
