import random

import pytest
from hypothesis import given, strategies as st

from kalikow.ordinal import (
    Ordinal,
    OrdinalError,
    format_ordinal,
    omega_power,
    ord_code,
    ord_compare,
    ord_decode,
    ord_level,
    parse_ordinal,
)

W = parse_ordinal


def ordinals(degree=4):
    return st.lists(st.integers(0, 20), min_size=degree, max_size=degree).map(Ordinal.from_coefficients)


def test_compare_examples():
    assert ord_compare(0, 0) == "equal"
    assert ord_compare(5, 7) == "less"
    assert ord_compare(W("w*1"), 100) == "greater"


def test_level_examples():
    assert ord_level(7) == 0
    assert ord_level(W("w*3 + 2")) == 1
    assert ord_level(W("w^2")) == 2
    with pytest.raises(OrdinalError):
        ord_level(0)


def test_finite_identity():
    assert ord_code(13, degree=1, finite_identity=True) == 13
    with pytest.raises(OrdinalError):
        ord_code(13, degree=3, finite_identity=True)


def test_round_trip_example():
    a = W("w^2*2 + w + 4")
    assert ord_decode(ord_code(a)) == a


def test_first_codes_distinct_and_inverse():
    seen = {ord_decode(c) for c in range(10_000)}
    assert len(seen) == 10_000
    assert all(ord_code(ord_decode(c)) == c for c in range(10_000))


@given(ordinals(), ordinals(), ordinals())
def test_total_order(a, b, c):
    ab, ba = ord_compare(a, b), ord_compare(b, a)
    assert {ab, ba} in ({"equal"}, {"less", "greater"})
    assert (ab == "equal") == (a == b)
    if ab == "less" and ord_compare(b, c) == "less":
        assert ord_compare(a, c) == "less"


@given(ordinals())
def test_level_bracket(a):
    if a.is_zero:
        return
    m = ord_level(a)
    assert ord_compare(omega_power(m), a) != "greater"
    assert ord_compare(a, omega_power(m + 1)) == "less"


def test_naturals_agree_with_int_order():
    rng = random.Random(3)
    for _ in range(500):
        x, y = rng.randrange(50), rng.randrange(50)
        expect = "less" if x < y else "greater" if x > y else "equal"
        assert ord_compare(x, y) == expect


@given(ordinals())
def test_text_round_trip(a):
    assert parse_ordinal(format_ordinal(a)) == a


def test_parse_variants():
    assert W("ω^2*3 + ω*1 + 5") == W("w^2*3 + w + 5")
    with pytest.raises(OrdinalError):
        W("w + w^2")
