import numpy as np
import pytest
from gmpy2 import mpfr

from sympint.precision import big, ulp_tolerance
from sympint.series import (TauSeries, series_add, series_eval, series_mul,
                            series_scale, series_sub)


def poly(coeffs, lmax=8):
    return TauSeries.from_coeffs(coeffs, lmax)


def test_add_constant_result():
    a = poly([1, 1])
    b = poly([2, -1])
    out = series_add(a, b)
    assert out.coeffs[0] == 3
    assert all(c == 0 for c in out.coeffs[1:])


def test_add_requires_matching_truncation():
    with pytest.raises(ValueError):
        series_add(poly([1], lmax=4), poly([1], lmax=5))


def test_add_random_degree6_against_pointwise_oracle():
    rng = np.random.default_rng(7)
    for _ in range(10):
        ca = rng.uniform(-2, 2, 7)
        cb = rng.uniform(-2, 2, 7)
        out = series_add(poly(ca, 6), poly(cb, 6))
        for tau in (0.0, 0.25, -0.5, 1.0, 2.0):
            want = sum((ca[i] + cb[i]) * tau ** i for i in range(7))
            assert abs(float(series_eval(out, tau)) - want) < 1e-12


def test_scale_identity():
    a = poly([3, 1, 4, 1, 5])
    out = series_scale(a, 1, shift=0)
    assert out.coeffs == a.coeffs


def test_scale_shifts_and_drops():
    a = poly([1, 2, 3], lmax=3)
    out = series_scale(a, big(2), 2)
    assert [float(c) for c in out.coeffs] == [0.0, 0.0, 2.0, 4.0]
    with pytest.raises(ValueError):
        series_scale(a, 1, -1)


def test_mul_truncates_and_matches_oracle():
    a = poly([1, 1], lmax=3)
    b = poly([1, -1], lmax=3)
    out = series_mul(a, b)
    assert [float(c) for c in out.coeffs] == [1.0, 0.0, -1.0, 0.0]


def test_mul_associative_to_rounding():
    rng = np.random.default_rng(11)
    tol = float(ulp_tolerance(256, 16))
    for _ in range(20):
        a = poly(rng.uniform(-1, 1, 7), 6)
        b = poly(rng.uniform(-1, 1, 7), 6)
        c = poly(rng.uniform(-1, 1, 7), 6)
        left = series_mul(series_mul(a, b), c)
        right = series_mul(a, series_mul(b, c))
        for x, y in zip(left.coeffs, right.coeffs):
            assert abs(float(x - y)) <= tol * max(1.0, abs(float(x)))


def test_eval_at_zero_returns_constant_term():
    a = poly([42, 1, 2])
    assert series_eval(a, 0) == 42


def test_sub_and_constant_constructor():
    a = TauSeries.constant(5, 4)
    b = TauSeries.constant(3, 4)
    out = series_sub(a, b)
    assert float(out.coeffs[0]) == 2.0
    assert out.lambda_max == 4


def test_coefficient_count_enforced():
    with pytest.raises(ValueError):
        TauSeries((mpfr(1),), lambda_max=3)
