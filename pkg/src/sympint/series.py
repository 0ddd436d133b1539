"""Dense polynomials in the time step tau with arbitrary-precision coefficients.

These series carry the power expansion of one integrator step.  Sizes stay
tiny (a few dozen terms), so a dense coefficient list is used throughout.
Addition and scalar multiplication keep every term up to ``lambda_max``;
series products drop the terms that would exceed it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from gmpy2 import mpfr

from .precision import DEFAULT_PRECISION_BITS, big, working_precision


@dataclass(frozen=True)
class TauSeries:
    """Polynomial sum_l coeffs[l] * tau**l, truncated above ``lambda_max``."""

    coeffs: tuple
    lambda_max: int
    precision_bits: int = DEFAULT_PRECISION_BITS

    def __post_init__(self):
        if len(self.coeffs) != self.lambda_max + 1:
            raise ValueError(
                f"need {self.lambda_max + 1} coefficients, got {len(self.coeffs)}"
            )

    @classmethod
    def constant(cls, value, lambda_max: int,
                 precision_bits: int = DEFAULT_PRECISION_BITS) -> "TauSeries":
        zero = big(0, precision_bits)
        coeffs = (big(value, precision_bits),) + (zero,) * lambda_max
        return cls(coeffs, lambda_max, precision_bits)

    @classmethod
    def from_coeffs(cls, values: Iterable, lambda_max: int,
                    precision_bits: int = DEFAULT_PRECISION_BITS) -> "TauSeries":
        vals = [big(v, precision_bits) for v in values]
        zero = big(0, precision_bits)
        vals = vals[: lambda_max + 1]
        vals += [zero] * (lambda_max + 1 - len(vals))
        return cls(tuple(vals), lambda_max, precision_bits)

    def __getitem__(self, lam: int) -> mpfr:
        return self.coeffs[lam]


def series_add(a: TauSeries, b: TauSeries) -> TauSeries:
    """Coefficientwise sum; both operands must share lambda_max."""
    if a.lambda_max != b.lambda_max:
        raise ValueError(
            f"lambda_max mismatch: {a.lambda_max} vs {b.lambda_max}"
        )
    bits = max(a.precision_bits, b.precision_bits)
    with working_precision(bits):
        coeffs = tuple(x + y for x, y in zip(a.coeffs, b.coeffs))
    return TauSeries(coeffs, a.lambda_max, bits)


def series_scale(a: TauSeries, s, shift: int = 0) -> TauSeries:
    """tau**shift * s * a, dropping coefficients pushed above lambda_max."""
    if shift < 0:
        raise ValueError(f"shift must be >= 0, got {shift}")
    bits = a.precision_bits
    with working_precision(bits):
        s = big(s, bits)
        zero = big(0, bits)
        kept = a.coeffs[: a.lambda_max + 1 - shift]
        coeffs = (zero,) * shift + tuple(s * x for x in kept)
    return TauSeries(coeffs, a.lambda_max, bits)


def series_mul(a: TauSeries, b: TauSeries) -> TauSeries:
    """Cauchy product truncated at the shared lambda_max."""
    if a.lambda_max != b.lambda_max:
        raise ValueError(
            f"lambda_max mismatch: {a.lambda_max} vs {b.lambda_max}"
        )
    bits = max(a.precision_bits, b.precision_bits)
    lmax = a.lambda_max
    with working_precision(bits):
        out = [big(0, bits) for _ in range(lmax + 1)]
        for i, ai in enumerate(a.coeffs):
            if ai == 0:
                continue
            for j in range(lmax + 1 - i):
                bj = b.coeffs[j]
                if bj != 0:
                    out[i + j] += ai * bj
    return TauSeries(tuple(out), lmax, bits)


def series_eval(a: TauSeries, tau) -> mpfr:
    """Horner evaluation at a concrete tau, at the series' precision."""
    bits = a.precision_bits
    with working_precision(bits):
        tau = big(tau, bits)
        acc = big(0, bits)
        for c in reversed(a.coeffs):
            acc = acc * tau + c
    return acc


def series_sub(a: TauSeries, b: TauSeries) -> TauSeries:
    return series_add(a, series_scale(b, -1))
