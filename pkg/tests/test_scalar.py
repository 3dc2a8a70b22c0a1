import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wavetrap.errors import BitSizeExceeded, ParameterError
from wavetrap.scalar import (
    bit_size,
    exact,
    exact_from_float,
    floor_int,
    guard_bits,
    is_exact,
    parse_scalar,
    scalar_str,
    to_float,
)


def test_exact_basics():
    v = exact(3, 4)
    assert is_exact(v)
    assert to_float(v) == 0.75
    assert exact(6, 8) == v
    assert scalar_str(v) == "3/4"
    assert scalar_str(exact(5)) == "5"


def test_exact_rejects_zero_denominator():
    with pytest.raises(ParameterError):
        exact(1, 0)


def test_parse_scalar_forms():
    assert parse_scalar("7/20") == exact(7, 20)
    assert parse_scalar("-3") == exact(-3)
    v = parse_scalar("2.35")
    assert isinstance(v, float) and v == 2.35
    w = parse_scalar("2.35", exact_decimal=True)
    assert is_exact(w) and w == exact(47, 20)
    assert parse_scalar("1e-3", exact_decimal=True) == exact(1, 1000)


def test_parse_scalar_garbage():
    for bad in ("", "one", "1/«2»", "2/3/4"):
        with pytest.raises(ParameterError):
            parse_scalar(bad)


def test_floor_int_matches_math_floor():
    assert floor_int(exact(7, 2)) == 3
    assert floor_int(exact(-7, 2)) == -4
    assert floor_int(exact(4)) == 4
    assert floor_int(-2.5) == -3


def test_guard_bits_trips():
    huge = exact(1 << (10**6), 3)
    with pytest.raises(BitSizeExceeded):
        guard_bits(huge)


@given(st.integers(-10**9, 10**9), st.integers(1, 10**9))
def test_scalar_str_round_trip(p, q):
    v = exact(p, q)
    assert parse_scalar(scalar_str(v)) == v


@given(st.floats(allow_nan=False, allow_infinity=False, width=64))
def test_exact_from_float_is_exact_value(x):
    v = exact_from_float(x)
    assert is_exact(v)
    assert to_float(v) == x


@given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
def test_bit_size_positive(p, q):
    assert bit_size(exact(p, q)) >= 1


def test_to_float_on_floats_is_identity():
    assert to_float(1.25) == 1.25
    assert to_float(exact(1, 3)) == pytest.approx(1 / 3, abs=1e-16)
    assert math.isfinite(to_float(exact(10**40, 3)))
