import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from sympint.precision import (ParseError, decimal_digits_for, parse_decimal,
                               to_decimal, ulp_tolerance, working_precision)

D1_LITERAL = ("0.15585935917621683131661175357520914222396639933910114624981"
              "04831549442591694")


def test_parse_half_is_exact_dyadic():
    for bits in (53, 128, 256, 512):
        assert parse_decimal("0.5", bits) == mpfr("0.5", bits)
        assert parse_decimal("-0.25", bits) == mpfr(-0.25)


def test_parse_published_literal_at_256_bits():
    x = parse_decimal(D1_LITERAL, 256)
    # reference value at 512 bits via an independent big-float library
    import mpmath

    mpmath.mp.prec = 512
    ref = mpmath.mpf(D1_LITERAL)
    err = abs(mpmath.mpf(to_decimal(x, 120)) - ref) / ref
    assert err < mpmath.mpf(2) ** -255


def test_parse_small_exponent_value():
    x = parse_decimal("1e-3", 256)
    import mpmath

    mpmath.mp.prec = 512
    ref = mpmath.mpf(1) / 1000
    err = abs(mpmath.mpf(to_decimal(x, 120)) - ref) / ref
    assert err < mpmath.mpf(2) ** -255


@pytest.mark.parametrize("bad", ["12x4", "", "1.2.3", "--5", "0.5j", "e3"])
def test_parse_rejects_malformed(bad):
    with pytest.raises(ParseError):
        parse_decimal(bad, 256)


def test_parse_error_names_offending_character():
    with pytest.raises(ParseError, match="'x'"):
        parse_decimal("12x4", 256)


def test_roundtrip_of_published_literal():
    x = parse_decimal(D1_LITERAL, 256)
    assert parse_decimal(to_decimal(x), 256) == x


@given(st.floats(allow_nan=False, allow_infinity=False,
                 min_value=-1e30, max_value=1e30))
@settings(max_examples=200, deadline=None)
def test_roundtrip_property(value):
    x = mpfr(value, 256)
    assert parse_decimal(to_decimal(x), 256) == x


def test_roundtrip_at_higher_reparse_precision():
    x = parse_decimal(D1_LITERAL, 256)
    # the exact expansion re-parses losslessly at any wider mantissa
    exact = to_decimal(x, "exact")
    assert parse_decimal(exact, 512) == x
    assert parse_decimal(exact, 256) == x


def test_to_decimal_canonical_shape():
    s = to_decimal(parse_decimal("-12345.678", 256))
    assert s.startswith("-1.")
    assert "e+4" in s
    assert to_decimal(mpfr(0)) == "0.0"
    assert to_decimal(mpfr("inf")) == "inf"


def test_decimal_digits_for_256_covers_77_digit_literals():
    assert decimal_digits_for(256) >= 79


def test_ulp_tolerance_scale():
    assert ulp_tolerance(256) == mpfr(2) ** -248
    assert ulp_tolerance(128) > ulp_tolerance(256)


def test_working_precision_restores():
    before = gmpy2.get_context().precision
    with working_precision(300):
        assert gmpy2.get_context().precision == 300
    assert gmpy2.get_context().precision == before
    with pytest.raises(ValueError):
        with working_precision(1):
            pass
