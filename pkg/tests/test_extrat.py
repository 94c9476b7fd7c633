from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conelab.extrat import INF, ext, fmt, scalar

finite = st.fractions(min_value=0, max_value=100, max_denominator=12)
extended = finite | st.just(INF)


def test_absorption_and_zero_convention():
    assert Fraction(3) + INF is INF
    assert INF + INF is INF
    assert Fraction(1, 2) * INF is INF
    assert 0 * INF == 0
    assert INF * Fraction(0) == 0
    assert INF * INF is INF


def test_order():
    assert Fraction(10**9) < INF
    assert not INF < INF
    assert INF <= INF
    assert max(Fraction(2), INF) is INF
    assert min(Fraction(2), INF) == 2


def test_subtraction_is_undefined():
    with pytest.raises(ArithmeticError):
        INF - Fraction(1)
    with pytest.raises(ArithmeticError):
        Fraction(1) - INF


def test_sum_starts_from_int_zero():
    assert sum([Fraction(1), INF]) is INF


@pytest.mark.parametrize(
    "raw, expected",
    [("3", Fraction(3)), ("3/2", Fraction(3, 2)), (4, Fraction(4)), ("inf", INF), (INF, INF)],
)
def test_parse(raw, expected):
    assert ext(raw) == expected


@pytest.mark.parametrize("raw", ["-1", "0.5", "1e3", -2])
def test_parse_rejects(raw):
    with pytest.raises(ValueError):
        ext(raw)


def test_scalar_rejects_infinity():
    with pytest.raises(ValueError):
        scalar("inf")


def test_fmt_roundtrip():
    for value in (Fraction(0), Fraction(7), Fraction(3, 2), INF):
        assert ext(fmt(value)) == value


@given(extended, extended, extended)
def test_semiring_laws(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(extended, extended)
def test_min_max_closed(a, b):
    assert min(a, b) <= max(a, b)
    assert min(a, b) in (a, b)
