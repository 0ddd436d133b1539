"""Arbitrary-precision scalars backed by MPFR (via gmpy2).

A "big scalar" is simply a ``gmpy2.mpfr`` value.  Every value carries its own
mantissa width; arithmetic executed inside :func:`working_precision` rounds
results to the requested width with round-to-nearest-even.  The default
working precision is 256 bits, which is enough to hold 77-digit decimal
literals exactly to the last printed digit.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager

import gmpy2
from gmpy2 import mpfr

DEFAULT_PRECISION_BITS = 256

_DECIMAL_RE = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


class ParseError(ValueError):
    """Raised when a decimal literal does not parse."""


@contextmanager
def working_precision(bits: int):
    """Run a block with the thread's MPFR context set to ``bits`` mantissa bits."""
    if bits < 2:
        raise ValueError(f"precision must be >= 2 bits, got {bits}")
    ctx = gmpy2.get_context()
    old = ctx.precision
    ctx.precision = bits
    try:
        yield
    finally:
        ctx.precision = old


def parse_decimal(text: str, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpfr:
    """Parse a decimal literal to the nearest ``precision_bits``-bit float.

    Accepts an optional sign, digits, an optional fraction and an optional
    exponent.  Rounding is to nearest, ties to even.  Malformed text raises
    :class:`ParseError` naming the first offending character.
    """
    stripped = text.strip()
    if not _DECIMAL_RE.match(stripped):
        for i, ch in enumerate(stripped):
            if ch not in "+-.0123456789eE":
                raise ParseError(f"invalid character {ch!r} at position {i} in {text!r}")
        raise ParseError(f"malformed decimal literal {text!r}")
    return mpfr(stripped, precision_bits)


def big(value, precision_bits: int = DEFAULT_PRECISION_BITS) -> mpfr:
    """Coerce ints, floats, strings or mpfr values to an mpfr at the given width."""
    if isinstance(value, str):
        return parse_decimal(value, precision_bits)
    return mpfr(value, precision_bits)


def decimal_digits_for(precision_bits: int) -> int:
    """Number of significant decimal digits that guarantees exact round trip."""
    return int(math.ceil(precision_bits * math.log10(2))) + 2


def to_decimal(x: mpfr, digits: int | str | None = None) -> str:
    """Canonical decimal text: sign, integer part, '.', fraction, 'e' exponent.

    With the default digit count, re-parsing at the value's own precision
    reproduces the value exactly.  ``digits="exact"`` emits the full (finite)
    decimal expansion of the binary value, which re-parses exactly at any
    precision at or above the value's own.
    """
    if gmpy2.is_nan(x):
        return "nan"
    if gmpy2.is_infinite(x):
        return "-inf" if x < 0 else "inf"
    if x == 0:
        return "0.0"
    if digits == "exact":
        m, e = x.as_mantissa_exp()
        m = int(m)
        sign = "-" if m < 0 else ""
        m = abs(m)
        if e >= 0:
            s = str(m << e)
            exp10 = len(s) - 1
        else:
            s = str(m * 5 ** (-int(e)))
            exp10 = len(s) - 1 + int(e)
        tail = s[1:].rstrip("0") or "0"
        return f"{sign}{s[0]}.{tail}e{exp10:+d}"
    if digits is None:
        digits = decimal_digits_for(x.precision)
    mant, exp10, _ = gmpy2.digits(x, 10, digits)
    sign = ""
    if mant.startswith("-"):
        sign, mant = "-", mant[1:]
    head, tail = mant[0], mant[1:].rstrip("0") or "0"
    return f"{sign}{head}.{tail}e{exp10 - 1:+d}"


def ulp_tolerance(precision_bits: int, slack_bits: int = 8) -> mpfr:
    """2**(slack_bits - precision_bits), a tolerance a few ulps above rounding."""
    return mpfr(2, precision_bits) ** (slack_bits - precision_bits)
