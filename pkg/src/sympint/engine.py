"""Double-precision explicit symplectic stepping with compensated summation.

Drift-first sets advance position before each kick, kick-first sets do the
opposite; either way one step applies stages+1 coefficient pairs whose
trailing structural zero costs no derivative evaluation.  All q/p/t updates
accumulate through two-term (Kahan) compensation unless a plan disables it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np

from .coefficients import SchemeTag, SplittingCoefficients
from .systems import SeparableSystem


class IntegrationFault(RuntimeError):
    """Non-finite state encountered; carries the offending substep index."""

    def __init__(self, message: str, step_index: int | None = None,
                 substep: int | None = None, t: float | None = None):
        super().__init__(message)
        self.step_index = step_index
        self.substep = substep
        self.t = t


@dataclass
class PhaseState:
    """Canonical coordinates plus pending compensation residuals."""

    q: np.ndarray
    p: np.ndarray
    q_residual: np.ndarray
    p_residual: np.ndarray
    t: float = 0.0
    t_residual: float = 0.0

    @classmethod
    def from_arrays(cls, q, p, t: float = 0.0) -> "PhaseState":
        q = np.asarray(q, dtype=np.float64).copy()
        p = np.asarray(p, dtype=np.float64).copy()
        return cls(q, p, np.zeros_like(q), np.zeros_like(p), float(t), 0.0)

    def copy(self) -> "PhaseState":
        return PhaseState(self.q.copy(), self.p.copy(),
                          self.q_residual.copy(), self.p_residual.copy(),
                          self.t, self.t_residual)


@dataclass(frozen=True)
class StepPlan:
    """Binary64 lowering of one coefficient set plus stepping options."""

    coeffs: SplittingCoefficients
    scheme: SchemeTag
    c: tuple
    d: tuple
    fsal: bool = True
    compensated: bool = True

    @property
    def stages(self) -> int:
        return self.coeffs.stages


def make_plan(coeffs: SplittingCoefficients, fsal: bool = True,
              compensated: bool = True) -> StepPlan:
    return StepPlan(coeffs=coeffs, scheme=coeffs.scheme,
                    c=tuple(float(x) for x in coeffs.c),
                    d=tuple(float(x) for x in coeffs.d),
                    fsal=fsal, compensated=compensated)


def _acc(x: np.ndarray, r: np.ndarray, delta: np.ndarray, compensated: bool) -> None:
    if compensated:
        y = delta - r
        t = x + y
        r[:] = (t - x) - y
        x[:] = t
    else:
        x += delta


def _advance(system: SeparableSystem, st: PhaseState, tau: float,
             plan: StepPlan, cache: np.ndarray | None):
    """Apply one full composition in place; returns the reusable derivative."""
    c, d = plan.c, plan.d
    k = len(c)
    comp = plan.compensated
    q, p, qr, pr = st.q, st.p, st.q_residual, st.p_residual
    if plan.scheme is SchemeTag.ABA:
        for i in range(k):
            g = cache if (i == 0 and cache is not None) else system.dT_dp(p)
            _acc(q, qr, (tau * c[i]) * g, comp)
            if i == k - 1 and d[i] == 0.0:
                return g if plan.fsal else None
            f = system.dV_dq(q)
            _acc(p, pr, (-tau * d[i]) * f, comp)
        return None
    for i in range(k):
        f = cache if (i == 0 and cache is not None) else system.dV_dq(q)
        _acc(p, pr, (-tau * d[i]) * f, comp)
        if i == k - 1 and c[i] == 0.0:
            return f if plan.fsal else None
        g = system.dT_dp(p)
        _acc(q, qr, (tau * c[i]) * g, comp)
    return None


def _locate_fault(system, start: PhaseState, tau, plan) -> int:
    """Replay a failed step substep by substep; index of first non-finite."""
    st = start.copy()
    c, d = plan.c, plan.d
    sub = 0
    try:
        for i in range(len(c)):
            if plan.scheme is SchemeTag.ABA:
                g = system.dT_dp(st.p)
                _acc(st.q, st.q_residual, (tau * c[i]) * g, plan.compensated)
                if not np.isfinite(st.q).all():
                    return sub
                sub += 1
                if i == len(c) - 1 and d[i] == 0.0:
                    break
                f = system.dV_dq(st.q)
                _acc(st.p, st.p_residual, (-tau * d[i]) * f, plan.compensated)
            else:
                f = system.dV_dq(st.q)
                _acc(st.p, st.p_residual, (-tau * d[i]) * f, plan.compensated)
                if not np.isfinite(st.p).all():
                    return sub
                sub += 1
                if i == len(c) - 1 and c[i] == 0.0:
                    break
                g = system.dT_dp(st.p)
                _acc(st.q, st.q_residual, (tau * c[i]) * g, plan.compensated)
            if not (np.isfinite(st.q).all() and np.isfinite(st.p).all()):
                return sub
            sub += 1
    except (FloatingPointError, ValueError):
        return sub
    return sub


def _tick(st: PhaseState, tau: float, compensated: bool) -> None:
    if compensated:
        y = tau - st.t_residual
        t = st.t + y
        st.t_residual = (t - st.t) - y
        st.t = t
    else:
        st.t += tau


def step(system: SeparableSystem, state: PhaseState, tau: float,
         plan: StepPlan) -> PhaseState:
    """One full composition step; returns a fresh state advanced by tau."""
    if not np.isfinite(tau) or tau == 0.0:
        if tau == 0.0:
            return state.copy()
        raise ValueError(f"tau must be finite, got {tau}")
    if state.q.shape != (system.dim,):
        raise ValueError(
            f"state dimension {state.q.shape} does not match system dim {system.dim}")
    out = state.copy()
    _advance(system, out, tau, plan, None)
    if not (np.isfinite(out.q).all() and np.isfinite(out.p).all()):
        sub = _locate_fault(system, state, tau, plan)
        raise IntegrationFault(
            f"non-finite state in substep {sub} of {plan.coeffs.name}",
            substep=sub, t=state.t)
    _tick(out, tau, plan.compensated)
    return out


def step_reverse(system: SeparableSystem, state: PhaseState, tau: float,
                 plan: StepPlan) -> PhaseState:
    """Inverse of :func:`step` for symmetric plans: identical call at -tau."""
    return step(system, state, -tau, plan)


def integrate(system: SeparableSystem, state0: PhaseState, tau: float,
              t_end: float, plan: StepPlan,
              observer: Callable[[int, PhaseState], bool | None] | None = None
              ) -> PhaseState:
    """Run floor((t_end - t0)/tau) steps, invoking the observer after each.

    The observer may return False to stop early.  Substeps are never exposed
    here; use :func:`substep_trace` for intra-step structure.
    """
    if t_end < state0.t:
        raise ValueError(f"t_end {t_end} precedes start time {state0.t}")
    if not np.isfinite(tau) or tau <= 0.0:
        raise ValueError(f"tau must be positive and finite, got {tau}")
    n_steps = int(np.floor((t_end - state0.t) / tau + 1e-9))
    st = state0.copy()
    cache = None
    for i in range(n_steps):
        cache = _advance(system, st, tau, plan, cache)
        if not (np.isfinite(st.q).all() and np.isfinite(st.p).all()):
            sub = _locate_fault(system, st, tau, plan)
            raise IntegrationFault(
                f"non-finite state at step {i} of {plan.coeffs.name}",
                step_index=i, substep=sub, t=st.t)
        _tick(st, tau, plan.compensated)
        if observer is not None:
            if observer(i, st) is False:
                break
    return st


@dataclass(frozen=True)
class TraceEntry:
    substep: int
    q: np.ndarray
    p: np.ndarray
    c_sign: int
    d_sign: int


def substep_trace(system: SeparableSystem, state: PhaseState, tau: float,
                  plan: StepPlan) -> list[TraceEntry]:
    """All intermediate states of one step, tagged with the signs of the
    coefficient pair applied to leave each of them (0 marks the final state)."""
    st = state.copy()
    c, d = plan.c, plan.d
    k = len(c)
    rows = []

    def sign(x: float) -> int:
        return (x > 0) - (x < 0)

    for i in range(k):
        rows.append(TraceEntry(i, st.q.copy(), st.p.copy(), sign(c[i]), sign(d[i])))
        if plan.scheme is SchemeTag.ABA:
            g = system.dT_dp(st.p)
            _acc(st.q, st.q_residual, (tau * c[i]) * g, plan.compensated)
            if not (i == k - 1 and d[i] == 0.0):
                f = system.dV_dq(st.q)
                _acc(st.p, st.p_residual, (-tau * d[i]) * f, plan.compensated)
        else:
            f = system.dV_dq(st.q)
            _acc(st.p, st.p_residual, (-tau * d[i]) * f, plan.compensated)
            if not (i == k - 1 and c[i] == 0.0):
                g = system.dT_dp(st.p)
                _acc(st.q, st.q_residual, (tau * c[i]) * g, plan.compensated)
        if not (np.isfinite(st.q).all() and np.isfinite(st.p).all()):
            raise IntegrationFault(
                f"non-finite state in substep {i} of {plan.coeffs.name}",
                substep=i, t=state.t)
    rows.append(TraceEntry(k, st.q.copy(), st.p.copy(), 0, 0))
    return rows


def sho_step_matrix(plan: StepPlan, tau: float) -> np.ndarray:
    """Binary64 one-step matrix on the unit oscillator (columns = basis images)."""
    from .systems import sho

    system = sho(1.0, 1.0)
    cols = []
    for basis in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
        st = PhaseState.from_arrays(basis[:1], basis[1:])
        out = step(system, st, tau, plan)
        cols.append([out.q[0], out.p[0]])
    return np.array(cols).T


def sho_step_matrix_exact(plan: StepPlan, tau) -> list[list[Fraction]]:
    """Exact-rational reimplementation of the one-step oscillator map.

    Every substep is a unit shear over the rationals, so the determinant of
    the returned matrix is exactly one.  Serves as the engine's algebraic
    reference; no compensation is involved.
    """
    tau = Fraction(tau)
    c = [Fraction(x) for x in plan.c]
    d = [Fraction(x) for x in plan.d]
    m = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]]

    def shear_drift(coef):
        # q += tau*coef*p
        m[0][0] += tau * coef * m[1][0]
        m[0][1] += tau * coef * m[1][1]

    def shear_kick(coef):
        # p -= tau*coef*q
        m[1][0] -= tau * coef * m[0][0]
        m[1][1] -= tau * coef * m[0][1]

    for i in range(len(c)):
        if plan.scheme is SchemeTag.ABA:
            shear_drift(c[i])
            shear_kick(d[i])
        else:
            shear_kick(d[i])
            shear_drift(c[i])
    return m
