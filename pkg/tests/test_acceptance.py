"""Acceptance suite: one test per exit criterion, at its stated tolerance.

Criteria marked [slow] dominate the runtime; the whole module finishes in a
few minutes.  Two expectations are kept as honest failing tests because they
are internally inconsistent with measurable facts: the fourth-order slope
classification of BABs7o7H (its exact seventh-order defect spectrum forces
sixth-order energy behavior) and the digit-exact recovery of the published
BABs7o7H point (the defect conditions are rank-deficient there, so the
solutions form a curve and no descent singles out one representative).  The
test docstrings carry the measured evidence.
"""

import math

import numpy as np
import pytest
from scipy import stats

from sympint.analysis import (DecompositionSetting, MODES, RecurrenceUndefined,
                              decompose, decompose_recurrence, kappa_spectrum)
from sympint.benchmarks import build_system, energy_error_sweep, perihelion_rate
from sympint.coefficients import ruth_coefficients
from sympint.engine import (PhaseState, integrate, make_plan, sho_step_matrix,
                            sho_step_matrix_exact, step, step_reverse)
from sympint.optimizer import SearchSpec, campaign, minimize
from sympint.precision import big, parse_decimal, working_precision
from sympint.series import TauSeries, series_eval
from sympint.systems import load_kepler_params, sho

from conftest import pass_line

KAPPA_TOL = 1e-70
FOURTH_ORDER_WINDOW = (0.03, 0.25, 8)    # tau-per-stage, log-spaced
SIXTH_ORDER_WINDOW = (0.012, 0.05, 8)
RANKING_WINDOW = (0.03, 0.12, 5)


def _max_error_slope(method: str, window) -> float:
    system, state = build_system("sho")
    lo, hi, pts = window
    grid = list(np.geomspace(lo, hi, pts))
    records = energy_error_sweep(system, state, [method], grid, 500.0)
    xs = [math.log10(r.tau) for r in records]
    ys = [math.log10(r.max_rel_energy_err) for r in records]
    return stats.linregress(xs, ys).slope


def test_order_conditions_exact(table_entries):
    """Every published oNH set vanishes through its order and not beyond."""
    for name, cs in table_entries.items():
        n = cs.declared_sho_order
        setting = DecompositionSetting(mode=cs.native_mode)
        kap = kappa_spectrum(cs, setting)
        for lam in range(1, n + 1):
            assert float(kap[lam]) < KAPPA_TOL, (name, lam, float(kap[lam]))
        assert float(kap[n + 1]) > 1e-20, (name, float(kap[n + 1]))
        pass_line(f"order-conditions {name}",
                  f"kappa<=o{n} below 1e-70, kappa_{n + 1}="
                  f"{float(kap[n + 1]):.2e}")


def test_ruth_identities():
    """The three closed-form constraints of the unique 3-stage solution."""

    def residuals(d1, d2, c1, c2, one):
        return (abs(2 * (d1 + d2) * (2 * c1 + c2) - one),
                abs(12 * c1 * d2 * (c1 + c2) / (2 * c1 + c2) - one),
                abs(24 * c1 * d2 * (2 * c1 * d1 + 2 * c2 * d1 + c2 * d2) - one))

    ruth = ruth_coefficients()
    with working_precision(256):
        d1, d2 = ruth.outer[0], ruth.outer[1]
        c1, c2 = ruth.inner[0], ruth.inner[1]
        res = residuals(d1, d2, c1, c2, big(1))
        assert all(float(r) < 1e-70 for r in res), [float(r) for r in res]
    f64 = residuals(float(ruth.outer[0]), float(ruth.outer[1]),
                    float(ruth.inner[0]), float(ruth.inner[1]), 1.0)
    assert all(r < 1e-12 for r in f64), f64
    pass_line("ruth-identities",
              f"256-bit worst {max(float(r) for r in res):.1e}, "
              f"binary64 worst {max(f64):.1e}")


def test_decomposition_oracle_equivalence(entries):
    """Series evaluation reproduces the binary64 step; both table routes agree."""
    system = sho(1.0, 1.0)
    worst_step = 0.0
    worst_routes = 0.0
    for name, cs in entries.items():
        setting = DecompositionSetting(mode=cs.default_mode())
        spec = decompose(cs, setting)
        plan = make_plan(cs)
        for tau in (0.125, 0.0625, 0.03125):
            srs = TauSeries(spec.zeta, spec.lambda_max, spec.precision_bits)
            want = float(series_eval(srs, tau))
            got = step(system, PhaseState.from_arrays([1.0], [-1.0]), tau,
                       plan).q[0]
            worst_step = max(worst_step, abs(got - want))
        for mode in MODES:
            msetting = DecompositionSetting(mode=mode)
            try:
                table = decompose_recurrence(cs, msetting)
            except RecurrenceUndefined:
                continue
            ser = decompose(cs, msetting)
            diff = max(abs(a - b) for a, b in zip(ser.zeta, table.zeta))
            worst_routes = max(worst_routes, float(diff))
    assert worst_step < 1e-12
    assert worst_routes < KAPPA_TOL
    pass_line("decomposition-oracle-equivalence",
              f"engine gap {worst_step:.2e}, route gap {worst_routes:.2e}")


@pytest.mark.parametrize("method", ["Ruth", "s5odr4"])
def test_order_slope_fourth(method):
    slope = _max_error_slope(method, FOURTH_ORDER_WINDOW)
    assert abs(slope - 4.0) <= 0.3, (method, slope)
    pass_line(f"order-slope {method}", f"slope {slope:.2f} within 4.0 +/- 0.3")


@pytest.mark.parametrize("method", ["ABAs5o6H A", "BAB's8o7H", "BAB's9o7H"])
def test_order_slope_sixth(method):
    slope = _max_error_slope(method, SIXTH_ORDER_WINDOW)
    assert abs(slope - 6.0) <= 0.3, (method, slope)
    pass_line(f"order-slope {method}", f"slope {slope:.2f} within 6.0 +/- 0.3")


def test_order_slope_babs7o7h_as_specified():
    """Stated expectation: slope 4.0 +/- 0.3 for BABs7o7H on the oscillator.

    This cannot hold together with its exact seventh-order defect spectrum,
    which forces a sixth-order energy slope (the measured value).  Kept
    failing on purpose; see the decisions ledger.
    """
    slope = _max_error_slope("BABs7o7H", FOURTH_ORDER_WINDOW)
    print(f"[INFO] BABs7o7H measured slope {slope:.2f} "
          f"(sixth-order behavior)")
    assert abs(slope - 4.0) <= 0.3, (
        f"BABs7o7H slope {slope:.2f}: the stated 4.0 +/- 0.3 contradicts the "
        f"set's exact seventh-order defect spectrum, which forces "
        f"sixth-order energy behavior (fails by design)")


def test_ranking_henon_heiles():
    """The 9-stage near-forward set beats the 3-stage classic by >= 100x."""
    system, state = build_system("henon-heiles")
    lo, hi, pts = RANKING_WINDOW
    grid = list(np.geomspace(lo, hi, pts))
    records = energy_error_sweep(system, state, ["BAB's9o7H", "Ruth"],
                                 grid, 500.0)
    by_method = {}
    for r in records:
        by_method.setdefault(r.method, []).append(r)
    ratios = []
    for r9, rr in zip(by_method["BAB's9o7H"], by_method["Ruth"]):
        assert math.isfinite(r9.max_rel_energy_err)
        ratios.append(rr.max_rel_energy_err / r9.max_rel_energy_err)
    assert all(r >= 100.0 for r in ratios), ratios
    pass_line("ranking-henon-heiles",
              "error ratios " + ", ".join(f"{r:.0f}" for r in ratios))


def test_reversibility_all_methods_all_systems(entries):
    """100 steps forward then 100 reversed recover the start state."""
    params = load_kepler_params()
    cases = [("sho", 0.1), ("henon-heiles", 0.1), ("henon-heiles-y", 0.1),
             ("sun-mercury", params.orbital_period() / 400)]
    worst = 0.0
    for sys_name, tau in cases:
        system, state0 = build_system(sys_name)
        q_scale = np.max(np.abs(state0.q)) or np.max(np.abs(state0.p))
        p_scale = np.max(np.abs(state0.p)) or q_scale
        for name, cs in entries.items():
            plan = make_plan(cs)
            st = state0.copy()
            for _ in range(100):
                st = step(system, st, tau, plan)
            for _ in range(100):
                st = step_reverse(system, st, tau, plan)
            err = max(np.max(np.abs(st.q - state0.q)) / q_scale,
                      np.max(np.abs(st.p - state0.p)) / p_scale)
            worst = max(worst, err)
            assert err < 1e-10, (sys_name, name, err)
    pass_line("reversibility", f"worst relative recovery error {worst:.2e}")


def test_linear_symplecticity(entries):
    worst = 0.0
    for name, cs in entries.items():
        plan = make_plan(cs)
        for tau in (0.1, 0.5, 1.0):
            m = sho_step_matrix(plan, tau)
            err = abs(float(np.linalg.det(m)) - 1.0)
            worst = max(worst, err)
            assert err < 1e-14, (name, tau, err)
            me = sho_step_matrix_exact(plan, tau)
            assert me[0][0] * me[1][1] - me[0][1] * me[1][0] == 1, (name, tau)
    pass_line("linear-symplecticity",
              f"worst |det - 1| {worst:.2e}, rational determinant exactly 1")


def test_optimizer_recovers_unique_three_stage_solution():
    """[slow] 200 seeded restarts find exactly one class: the classic set."""
    spec = SearchSpec(scheme="ABA", stages=3, lambda_H=4, rng_seed=20260809)
    results = campaign(spec, 200)
    assert len(results) == 1, [float(r.kappa_max) for r in results]
    ruth = ruth_coefficients()
    rep = results[0]
    gap = max(abs(rep.free_params[0] - ruth.outer[0]),
              abs(rep.free_params[1] - ruth.inner[0]))
    assert gap < big("1e-30"), float(gap)
    pass_line("optimizer-recovery-3-stage",
              f"one class, parameter gap {float(gap):.1e}")


def test_optimizer_reconverges_to_published_seven_stage_values():
    """Stated expectation: a 1e-3 perturbation of the 7-stage kick-first set
    flows back to the published literals to >= 30 digits.

    The six defect conditions are rank-5 at that point (Jacobian singular
    values [11, 6.8, 1.7, 0.30, 0.026, 5e-17]): the solutions form a curve
    through it, descent returns to the nearest curve point, and neither the
    next defect kappa_8 nor the coefficient-magnitude sum is extremal at the
    published representative.  No optimizer can recover it to 30 digits;
    kept failing on purpose.
    """
    from sympint._catalog_data import TABLE_ENTRIES

    tspec = TABLE_ENTRIES["BABs7o7H"]
    frees = [parse_decimal(s) for s in tspec["outer"] + tspec["inner"]]
    rng = np.random.default_rng(20260809)
    start = [float(x) + 1e-3 * s
             for x, s in zip(frees, rng.choice([-1.0, 1.0], len(frees)))]
    spec = SearchSpec(scheme="BAB", stages=7, lambda_H=7)
    res = minimize(spec, start=start)
    assert res.converged, float(res.kappa_max)
    gap = max(abs(a - b) for a, b in zip(res.free_params, frees))
    print(f"[INFO] reconverged with kappa_max {float(res.kappa_max):.1e} at "
          f"parameter distance {float(gap):.2e} from the published point")
    assert gap < big("1e-30"), (
        f"distance {float(gap):.2e}: the published point lies on a "
        f"one-parameter solution curve and is not recoverable to 30 digits "
        f"(fails by design)")


def test_precession_trend():
    """[slow] Regression quality, fourth-order shrink, and ranking."""
    system, state = build_system("sun-mercury")
    params = load_kepler_params()
    T = params.orbital_period()
    r_coarse = perihelion_rate(system, state.copy(), "Ruth", T / 300, 50)
    r_fine = perihelion_rate(system, state.copy(), "Ruth", T / 600, 50)
    assert r_coarse.r_squared > 0.99 and r_fine.r_squared > 0.99
    ratio = r_coarse.dtheta_dt / r_fine.dtheta_dt
    assert 16.0 * 0.6 <= ratio <= 16.0 * 1.4, ratio
    r9 = perihelion_rate(system, state.copy(), "BAB's9o7H", 3 * T / 300, 50)
    assert r9.evals_per_orbit == pytest.approx(r_coarse.evals_per_orbit)
    assert r9.dtheta_dt <= r_coarse.dtheta_dt
    pass_line("precession-trend",
              f"R2 {r_coarse.r_squared:.4f}/{r_fine.r_squared:.4f}, "
              f"halving ratio {ratio:.1f}, matched-cost rates "
              f"{r9.dtheta_dt:.2e} <= {r_coarse.dtheta_dt:.2e}")


def test_compensated_summation_long_run(entries):
    """[slow] A million small steps: compensation caps the error drift."""
    system, _ = build_system("sho")
    state0 = PhaseState.from_arrays([1.0], [0.0])
    h0 = system.energy(state0.q, state0.p)
    n_steps = 10 ** 6
    errs = np.empty(n_steps)

    def run(compensated):
        plan = make_plan(entries["Ruth"], compensated=compensated)

        def watch(i, st):
            errs[i] = abs(system.energy(st.q, st.p) - h0)

        integrate(system, state0, 0.01, n_steps * 0.01, plan, observer=watch)
        windows = errs.reshape(100, -1).max(axis=1)
        slope = stats.linregress(np.arange(100.0), windows).slope
        return errs.max(), slope

    max_c, slope_c = run(True)
    max_u, slope_u = run(False)
    assert max_c <= max_u
    assert slope_c < slope_u
    pass_line("compensated-summation",
              f"max {max_c:.3e} <= {max_u:.3e}, drift slope "
              f"{slope_c:.1e} < {slope_u:.1e}")
