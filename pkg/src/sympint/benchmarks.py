"""Energy-error sweeps, perihelion-precession regression and substep traces.

Every (method, tau) cell is an independent job: integrate, watch the
relative Hamiltonian deviation per step, record max and mean.  Unstable
runs are reported with infinite error, never dropped.  All CSV emission is
deterministic apart from the wall-clock column.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy import stats

from .coefficients import SplittingCoefficients, catalog, resolve_method
from .engine import (IntegrationFault, PhaseState, StepPlan, integrate,
                     make_plan, substep_trace)
from .systems import (HENON_HEILES_BENCH_STATE, KeplerParams, SeparableSystem,
                      SingularityFault, henon_heiles, henon_heiles_y_plane,
                      load_kepler_params, sho, sun_mercury)

SWEEP_CSV_HEADER = ("method,scheme,stages,tau,tau_per_stage,t_end,"
                    "max_rel_energy_err,mean_rel_energy_err,wall_seconds")
PRECESSION_CSV_HEADER = "method,evals_per_orbit,dtheta_dt,ci95,r_squared"


@dataclass(frozen=True)
class BenchmarkRecord:
    method: str
    scheme: str
    stages: int
    tau: float
    tau_per_stage: float
    t_end: float
    max_rel_energy_err: float
    mean_rel_energy_err: float
    wall_seconds: float
    blowup_time: float | None = None


@dataclass(frozen=True)
class PrecessionResult:
    method: str
    evals_per_orbit: float
    dtheta_dt: float
    ci95_halfwidth: float
    r_squared: float
    slope: float


class DegenerateOrbitError(ValueError):
    """The eccentricity vector vanishes, its angle is undefined."""


class AngleUnwrapper:
    """Incremental angle unwrapping; consecutive jumps never exceed pi."""

    def __init__(self, start_raw: float):
        self._prev = start_raw
        self.theta = 0.0

    def feed(self, raw: float) -> float:
        d = raw - self._prev
        if d > math.pi:
            d -= 2 * math.pi
        elif d <= -math.pi:
            d += 2 * math.pi
        self.theta += d
        self._prev = raw
        return self.theta


def build_system(name: str) -> tuple[SeparableSystem, PhaseState]:
    """Bundled system plus its benchmark initial state, by CLI name."""
    if name == "sho":
        return sho(1.0, 1.0), PhaseState.from_arrays([1.0], [0.0])
    if name == "henon-heiles":
        q, p = HENON_HEILES_BENCH_STATE
        return henon_heiles(), PhaseState.from_arrays(q, p)
    if name == "henon-heiles-y":
        return henon_heiles_y_plane(), PhaseState.from_arrays([0.4], [0.4])
    if name == "sun-mercury":
        params = load_kepler_params()
        q, p = params.initial_state()
        return sun_mercury(params), PhaseState.from_arrays(q, p)
    raise KeyError(f"unknown system {name!r}; available: sho, henon-heiles, "
                   f"henon-heiles-y, sun-mercury")


def geometric_grid(lo: float, hi: float, points: int) -> list[float]:
    if not (0 < lo < hi) or points < 2:
        raise ValueError("need 0 < lo < hi and at least two points")
    return list(np.geomspace(lo, hi, points))


def _energy_stats(system: SeparableSystem, state0: PhaseState, tau: float,
                  t_end: float, plan: StepPlan):
    """(max, mean) of |H - H0|/|H0| sampled after every full step."""
    h0 = system.energy(state0.q, state0.p)
    scale = abs(h0)
    if scale == 0.0:
        raise ValueError("initial energy is zero, relative error undefined")
    worst = 0.0
    acc = 0.0
    comp = 0.0
    count = 0

    def watch(_i, st):
        nonlocal worst, acc, comp, count
        err = abs(system.energy(st.q, st.p) - h0) / scale
        if err > worst:
            worst = err
        y = err - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
        count += 1

    with np.errstate(over="ignore", invalid="ignore"):
        integrate(system, state0, tau, t_end, plan, observer=watch)
    if not math.isfinite(worst):
        raise IntegrationFault("energy overflow during sweep", t=None)
    return worst, (acc / count if count else 0.0)


def energy_error_sweep(system: SeparableSystem, state0: PhaseState,
                       methods: Sequence[SplittingCoefficients | str],
                       tau_grid: Sequence[float], t_end: float,
                       grid_in: str = "tau_per_stage",
                       compensated: bool = True) -> list[BenchmarkRecord]:
    """One record per (method, grid point).

    With ``grid_in="tau_per_stage"`` (the figure convention) each method
    steps at tau = value * stages; with ``"tau"`` the grid is used directly.
    """
    if grid_in not in ("tau_per_stage", "tau"):
        raise ValueError(f"grid_in must be 'tau_per_stage' or 'tau', got {grid_in!r}")
    entries = catalog()
    records = []
    for method in methods:
        coeffs = resolve_method(method, entries) if isinstance(method, str) else method
        plan = make_plan(coeffs, compensated=compensated)
        for g in tau_grid:
            tau = g * coeffs.stages if grid_in == "tau_per_stage" else g
            start = time.perf_counter()
            blowup = None
            try:
                worst, mean = _energy_stats(system, state0, tau, t_end, plan)
            except (IntegrationFault, SingularityFault) as exc:
                worst, mean = math.inf, math.inf
                blowup = getattr(exc, "t", None)
            wall = time.perf_counter() - start
            records.append(BenchmarkRecord(
                method=coeffs.name, scheme=coeffs.scheme.value,
                stages=coeffs.stages, tau=tau, tau_per_stage=tau / coeffs.stages,
                t_end=t_end, max_rel_energy_err=worst,
                mean_rel_energy_err=mean, wall_seconds=wall,
                blowup_time=blowup))
    records.sort(key=lambda r: (r.method, r.tau))
    return records


def exact_flow_errors(system: SeparableSystem, state0: PhaseState,
                      flow: Callable, tau: float, t_end: float,
                      label: str = "exact") -> BenchmarkRecord:
    """Pseudo-method record built from a closed-form flow, for harness checks."""
    h0 = system.energy(state0.q, state0.p)
    worst = 0.0
    acc = 0.0
    n = int(math.floor(t_end / tau + 1e-9))
    for i in range(1, n + 1):
        q, p = flow(state0.q, state0.p, i * tau)
        err = abs(system.energy(q, p) - h0) / abs(h0)
        worst = max(worst, err)
        acc += err
    return BenchmarkRecord(method=label, scheme="-", stages=0, tau=tau,
                           tau_per_stage=tau, t_end=t_end,
                           max_rel_energy_err=worst,
                           mean_rel_energy_err=acc / max(n, 1),
                           wall_seconds=0.0)


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return repr(float(x))


def sweep_to_csv(records: Iterable[BenchmarkRecord]) -> str:
    lines = [SWEEP_CSV_HEADER]
    for r in records:
        lines.append(",".join([
            r.method, r.scheme, str(r.stages), _fmt(r.tau),
            _fmt(r.tau_per_stage), _fmt(r.t_end),
            _fmt(r.max_rel_energy_err), _fmt(r.mean_rel_energy_err),
            _fmt(r.wall_seconds)]))
    return "\n".join(lines) + "\n"


def lrl_vector(state: PhaseState, kepler: KeplerParams) -> np.ndarray:
    """In-plane eccentricity vector of the instantaneous osculating orbit.

    Momenta are scaled by the orbiting mass and the gravitational parameter
    divides the angular-momentum product, making the result the dimensionless
    conserved direction vector of the exact flow.
    """
    q = state.q
    r = math.sqrt(float(q @ q))
    if r == 0.0:
        raise SingularityFault("eccentricity vector undefined at the origin")
    v = state.p / kepler.m_M
    L = q[0] * v[1] - q[1] * v[0]
    mu = kepler.mu
    return np.array([v[1] * L / mu - q[0] / r, -v[0] * L / mu - q[1] / r])


def perihelion_rate(system: SeparableSystem, state0: PhaseState,
                    method: SplittingCoefficients | str, tau: float,
                    n_orbits: int, kepler: KeplerParams | None = None
                    ) -> PrecessionResult:
    """Least-squares rotation rate of the eccentricity vector.

    The angle is sampled once per step, unwrapped incrementally (no jump may
    exceed pi), shifted to start at zero and fitted with an ordinary
    least-squares line; the reported rate is |slope| with its 95% interval.
    """
    if n_orbits < 10:
        raise ValueError(f"need at least 10 orbits for a stable fit, got {n_orbits}")
    if kepler is None:
        kepler = load_kepler_params()
    coeffs = (resolve_method(method, catalog())
              if isinstance(method, str) else method)
    plan = make_plan(coeffs)
    period = kepler.orbital_period()
    t_end = n_orbits * period

    e0 = lrl_vector(state0, kepler)
    if math.hypot(*e0) < 1e-10:
        raise DegenerateOrbitError("circular orbit, perihelion angle undefined")
    times = []
    thetas = []
    unwrap = AngleUnwrapper(math.atan2(e0[1], e0[0]))

    def watch(_i, st):
        e = lrl_vector(st, kepler)
        times.append(st.t)
        thetas.append(unwrap.feed(math.atan2(e[1], e[0])))

    integrate(system, state0, tau, t_end, plan, observer=watch)
    fit = stats.linregress(np.array(times), np.array(thetas))
    n = len(times)
    tq = stats.t.ppf(0.975, n - 2)
    return PrecessionResult(
        method=coeffs.name,
        evals_per_orbit=coeffs.stages * period / tau,
        dtheta_dt=abs(fit.slope),
        ci95_halfwidth=tq * fit.stderr,
        r_squared=fit.rvalue ** 2,
        slope=fit.slope)


def precession_to_csv(results: Iterable[PrecessionResult]) -> str:
    lines = [PRECESSION_CSV_HEADER]
    for r in sorted(results, key=lambda r: (r.method, r.evals_per_orbit)):
        lines.append(",".join([r.method, _fmt(r.evals_per_orbit),
                               _fmt(r.dtheta_dt), _fmt(r.ci95_halfwidth),
                               _fmt(r.r_squared)]))
    return "\n".join(lines) + "\n"


def trace_export(system: SeparableSystem, state0: PhaseState,
                 method: SplittingCoefficients | str, tau: float,
                 n_steps: int, out_path, grid_points: int = 80) -> None:
    """Write the substep trace CSV plus, for 1-D systems, an energy grid file.

    Trace rows: step, substep, coordinates, momenta, local H and the signs of
    the coefficient pair applied next.  Faults are recorded in-file with the
    failing substep rather than raised.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    coeffs = (resolve_method(method, catalog())
              if isinstance(method, str) else method)
    plan = make_plan(coeffs)
    dim = system.dim
    qcols = ",".join(f"q{i}" for i in range(dim))
    pcols = ",".join(f"p{i}" for i in range(dim))
    lines = [
        f"# system={system.label}",
        f"# method={coeffs.name}",
        f"# scheme={coeffs.scheme.value}",
        f"# stages={coeffs.stages}",
        f"# tau={_fmt(tau)}",
        f"step,substep,{qcols},{pcols},H,c_sign,d_sign",
    ]
    st = state0.copy()
    all_q, all_p = [st.q.copy()], [st.p.copy()]
    for istep in range(n_steps):
        try:
            rows = substep_trace(system, st, tau, plan)
        except IntegrationFault as exc:
            lines.append(f"# fault: step={istep} substep={exc.substep} "
                         f"non-finite state")
            break
        for entry in rows[:-1]:
            h = system.energy(entry.q, entry.p)
            vals = [str(istep), str(entry.substep)]
            vals += [_fmt(v) for v in entry.q] + [_fmt(v) for v in entry.p]
            vals += [_fmt(h), str(entry.c_sign), str(entry.d_sign)]
            lines.append(",".join(vals))
            all_q.append(entry.q.copy())
            all_p.append(entry.p.copy())
        final = rows[-1]
        st.q[:], st.p[:] = final.q, final.p
        st.q_residual[:] = 0.0
        st.p_residual[:] = 0.0
        all_q.append(final.q.copy())
        all_p.append(final.p.copy())
        if istep == n_steps - 1:
            h = system.energy(final.q, final.p)
            vals = [str(istep), str(final.substep)]
            vals += [_fmt(v) for v in final.q] + [_fmt(v) for v in final.p]
            vals += [_fmt(h), "0", "0"]
            lines.append(",".join(vals))
    with open(out_path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    if dim == 1:
        qs = np.array([v[0] for v in all_q])
        ps = np.array([v[0] for v in all_p])
        qs = qs[np.isfinite(qs)]
        ps = ps[np.isfinite(ps)]
        span_q = max(qs.max() - qs.min(), 1e-6)
        span_p = max(ps.max() - ps.min(), 1e-6)
        qg = np.linspace(qs.min() - 0.15 * span_q, qs.max() + 0.15 * span_q,
                         grid_points)
        pg = np.linspace(ps.min() - 0.15 * span_p, ps.max() + 0.15 * span_p,
                         grid_points)
        glines = ["q,p,H"]
        for qv in qg:
            for pv in pg:
                h = system.energy(np.array([qv]), np.array([pv]))
                glines.append(f"{_fmt(qv)},{_fmt(pv)},{_fmt(h)}")
        grid_path = str(out_path) + ".grid.csv"
        with open(grid_path, "w") as fh:
            fh.write("\n".join(glines) + "\n")
