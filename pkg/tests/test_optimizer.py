import pytest

from sympint._catalog_data import TABLE_ENTRIES
from sympint.coefficients import ruth_coefficients
from sympint.optimizer import SearchSpec, campaign, minimize, objective
from sympint.precision import big, parse_decimal, to_decimal


def table_frees(name):
    spec = TABLE_ENTRIES[name]
    return [parse_decimal(s) for s in spec["outer"] + spec["inner"]]


def test_objective_vanishes_at_published_solution():
    spec = SearchSpec(scheme="ABA", stages=5, lambda_H=6)
    val = objective(table_frees("ABAs5o6H A"), spec)
    assert float(val) < 1e-70


def test_objective_vanishes_at_ruth():
    ruth = ruth_coefficients()
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4)
    val = objective([ruth.outer[0], ruth.inner[0]], spec)
    assert float(val) < 1e-70


def test_objective_large_for_degenerate_start():
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4)
    val = objective([big(0), big(0)], spec)
    assert float(val) > 0.1


def test_objective_rejects_wrong_arity():
    spec = SearchSpec(scheme="BAB", stages=7, lambda_H=7)
    with pytest.raises(ValueError):
        objective([big(0)], spec)


def test_search_spec_free_counts():
    assert SearchSpec(scheme="ABA", stages=5, lambda_H=6).n_free == 4
    assert SearchSpec(scheme="BAB", stages=7, lambda_H=7).n_free == 6
    assert SearchSpec(scheme="BAB-prime", stages=9, lambda_H=7).n_free == 8
    with pytest.raises(ValueError):
        SearchSpec(scheme="XYZ", stages=3, lambda_H=4)


def test_minimize_from_exact_start_is_immediate():
    spec = SearchSpec(scheme="BAB", stages=7, lambda_H=7)
    res = minimize(spec, start=table_frees("BABs7o7H"))
    assert res.converged
    assert res.iterations == 0
    assert float(res.kappa_max) < 1e-70


def test_minimize_recovers_ruth_from_nearby():
    ruth = ruth_coefficients()
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4)
    start = [float(ruth.outer[0]) + 3e-3, float(ruth.inner[0]) - 2e-3]
    res = minimize(spec, start=start)
    assert res.converged
    assert abs(res.free_params[0] - ruth.outer[0]) < big("1e-30")
    assert abs(res.free_params[1] - ruth.inner[0]) < big("1e-30")


def test_campaign_small_multistart_dedups_to_ruth():
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4, rng_seed=20260809)
    results = campaign(spec, 10)
    assert len(results) >= 1
    ruth = ruth_coefficients()
    rep = results[0]
    assert abs(rep.free_params[0] - ruth.outer[0]) < big("1e-30")
    assert rep.coeffs.native_mode == "aba"
    assert rep.coeffs.name.endswith("r1")


def test_campaign_deterministic_for_fixed_seed():
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4, rng_seed=123,
                      restarts=3, max_iterations=4000)
    a = campaign(spec, 3)
    b = campaign(spec, 3)
    assert len(a) == len(b)
    for ra, rb in zip(a, b):
        assert [to_decimal(x) for x in ra.free_params] == \
               [to_decimal(x) for x in rb.free_params]
