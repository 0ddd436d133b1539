"""Derivative-free search for splitting coefficients with prescribed
harmonic order.

The objective is the largest oscillator defect kappa_l over l = 2..lambda_H
after symmetric completion of the free parameters (the sum constraints kill
kappa_0 and kappa_1 by construction).  Minimization uses a Nelder-Mead
simplex with dimension-adaptive expansion/contraction factors, run in
arbitrary precision and restarted from the incumbent until the defect drops
below tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

import gmpy2
import numpy as np
from gmpy2 import mpfr

from .analysis import DecompositionSetting, kappa_spectrum
from .coefficients import (Provenance, SchemeTag, SplittingCoefficients,
                           _n_free, complete_symmetric)
from .precision import DEFAULT_PRECISION_BITS, big, to_decimal, working_precision

_SENTINEL = "1e100"


@dataclass(frozen=True)
class SearchSpec:
    """Search space and convergence policy for one (scheme, stages) family."""

    scheme: str
    stages: int
    lambda_H: int
    precision_bits: int = DEFAULT_PRECISION_BITS
    kappa_tol: str | float = "1e-60"
    restarts: int = 6
    rng_seed: int = 0
    max_iterations: int = 12000
    simplex_edge: float = 0.05

    def __post_init__(self):
        if self.scheme not in ("ABA", "BAB", "BAB-prime"):
            raise ValueError(f"scheme must be ABA, BAB or BAB-prime, got {self.scheme!r}")
        if self.lambda_H < 2:
            raise ValueError("lambda_H must be at least 2")

    @property
    def scheme_tag(self) -> SchemeTag:
        return SchemeTag.ABA if self.scheme == "ABA" else SchemeTag.BAB

    @property
    def mode(self) -> str:
        return {"ABA": "aba", "BAB": "bab", "BAB-prime": "bab-prime"}[self.scheme]

    @property
    def n_outer_free(self) -> int:
        return _n_free(self.stages + 1)

    @property
    def n_inner_free(self) -> int:
        return _n_free(self.stages)

    @property
    def n_free(self) -> int:
        return self.n_outer_free + self.n_inner_free


@dataclass(frozen=True)
class SearchResult:
    coeffs: SplittingCoefficients
    free_params: tuple
    kappa_max: mpfr
    coeff_abs_sum: mpfr
    higher_order_kappas: tuple
    iterations: int
    converged: bool


def _complete(free_params: Sequence, spec: SearchSpec, name: str = "candidate"
              ) -> SplittingCoefficients:
    no = spec.n_outer_free
    return complete_symmetric(list(free_params[:no]), list(free_params[no:]),
                              spec.scheme_tag, spec.stages, name=name,
                              precision_bits=spec.precision_bits,
                              provenance=Provenance.OPTIMIZER_OUTPUT,
                              native_mode=spec.mode)


def _defects(free_params: Sequence, spec: SearchSpec) -> tuple:
    coeffs = _complete(free_params, spec)
    setting = DecompositionSetting(mode=spec.mode, lambda_max=max(spec.lambda_H, 4),
                                   precision_bits=spec.precision_bits)
    kap = kappa_spectrum(coeffs, setting, lambda_H=spec.lambda_H)
    return kap.kappa[2:spec.lambda_H + 1]


def objective(free_params: Sequence, spec: SearchSpec) -> mpfr:
    """max(kappa_2..kappa_lambda_H) of the completed candidate set."""
    if len(free_params) != spec.n_free:
        raise ValueError(f"expected {spec.n_free} free parameters, "
                         f"got {len(free_params)}")
    bits = spec.precision_bits
    worst = big(0, bits)
    for v in _defects(free_params, spec):
        if not (v == v and v < big(_SENTINEL, bits)):
            return big(_SENTINEL, bits)
        if v > worst:
            worst = v
    return worst


def _squared_defect_sum(free_params: Sequence, spec: SearchSpec) -> mpfr:
    """Smooth surrogate with the same root set as the max defect.

    The simplex degenerates on the kinked max-of-magnitudes surface long
    before reaching convergence tolerance; descending the squared sum avoids
    that while leaving the solutions unchanged.
    """
    bits = spec.precision_bits
    with working_precision(bits):
        total = big(0, bits)
        for v in _defects(free_params, spec):
            if not (v == v and v < big(_SENTINEL, bits)):
                return big(_SENTINEL, bits)
            total = total + v * v
    return total


def _adaptive_params(n: int):
    alpha = 1.0
    beta = 1.0 + 2.0 / n
    gamma = 0.75 - 0.5 / n
    delta = 1.0 - 1.0 / n
    return alpha, beta, gamma, delta


def _nelder_mead(f, x0: list, edge, bits: int, f_tol, max_iter: int):
    """One simplex descent; returns (best_x, best_f, iterations, diameter)."""
    n = len(x0)
    alpha, beta, gamma, delta = _adaptive_params(n)
    with working_precision(bits):
        alpha, beta, gamma, delta = (big(v, bits) for v in (alpha, beta, gamma, delta))
        edge = big(edge, bits)
        stop_size = big(2, bits) ** (18 - bits)
        verts = [list(x0)]
        for i in range(n):
            v = list(x0)
            v[i] = v[i] + edge
            verts.append(v)
        vals = [f(v) for v in verts]
        it = 0
        while it < max_iter:
            order = sorted(range(n + 1), key=lambda i: (vals[i],))
            verts = [verts[i] for i in order]
            vals = [vals[i] for i in order]
            if vals[0] < f_tol:
                break
            diam = big(0, bits)
            for v in verts[1:]:
                for a, b in zip(v, verts[0]):
                    d = abs(a - b)
                    if d > diam:
                        diam = d
            if diam < stop_size:
                break
            it += 1
            centroid = [sum(verts[i][j] for i in range(n)) / n for j in range(n)]
            worst = verts[-1]
            xr = [c + alpha * (c - w) for c, w in zip(centroid, worst)]
            fr = f(xr)
            if fr < vals[0]:
                xe = [c + beta * (c - w) for c, w in zip(centroid, worst)]
                fe = f(xe)
                if fe < fr:
                    verts[-1], vals[-1] = xe, fe
                else:
                    verts[-1], vals[-1] = xr, fr
            elif fr < vals[-2]:
                verts[-1], vals[-1] = xr, fr
            elif fr < vals[-1]:
                xc = [c + gamma * (r - c) for c, r in zip(centroid, xr)]
                fc = f(xc)
                if fc <= fr:
                    verts[-1], vals[-1] = xc, fc
                else:
                    best = verts[0]
                    for i in range(1, n + 1):
                        verts[i] = [b + delta * (v - b) for b, v in zip(best, verts[i])]
                        vals[i] = f(verts[i])
            else:
                xc = [c - gamma * (c - w) for c, w in zip(centroid, worst)]
                fc = f(xc)
                if fc < vals[-1]:
                    verts[-1], vals[-1] = xc, fc
                else:
                    best = verts[0]
                    for i in range(1, n + 1):
                        verts[i] = [b + delta * (v - b) for b, v in zip(best, verts[i])]
                        vals[i] = f(verts[i])
        order = sorted(range(n + 1), key=lambda i: (vals[i],))
        best, best_val = verts[order[0]], vals[order[0]]
        diam = big(0, bits)
        for i in order[1:]:
            for a, b in zip(verts[i], best):
                d = abs(a - b)
                if d > diam:
                    diam = d
    return best, best_val, it, diam


def minimize(spec: SearchSpec, start: Sequence | None = None,
             rng: np.random.Generator | None = None) -> SearchResult:
    """Simplex search restarted from the incumbent.

    Descent runs on the squared-defect sum; convergence and the reported
    figure of merit are the max defect.  Converged results get a polishing
    pass at doubled precision from the found point.
    """
    bits = spec.precision_bits
    if start is None:
        if rng is None:
            rng = np.random.default_rng(spec.rng_seed)
        start = rng.uniform(-1.0, 1.0, spec.n_free)
    x = [big(v, bits) for v in start]
    tol = big(spec.kappa_tol, bits)

    def g(v):
        return _squared_defect_sum(v, spec)

    def finish(x, fx, iterations, converged):
        coeffs = _complete(x, spec)
        setting = DecompositionSetting(mode=spec.mode, precision_bits=bits)
        full = kappa_spectrum(coeffs, setting)
        higher = tuple(full.kappa[spec.lambda_H + 1:])
        return SearchResult(coeffs=coeffs, free_params=tuple(x), kappa_max=fx,
                            coeff_abs_sum=coeffs.coefficient_abs_sum(),
                            higher_order_kappas=higher, iterations=iterations,
                            converged=converged)

    total_it = 0
    edge = big(spec.simplex_edge, bits)
    fx = objective(x, spec)
    if fx < tol:
        return finish(x, fx, 0, True)
    gtol = tol * tol
    gx = g(x)
    for _ in range(max(1, spec.restarts)):
        x_new, gx_new, it, diam = _nelder_mead(g, x, edge, bits, gtol,
                                               spec.max_iterations)
        total_it += it
        improved = gx_new < gx / 4
        if gx_new < gx:
            x, gx = x_new, gx_new
        if objective(x, spec) < tol:
            break
        if not improved:
            break  # positive local minimum, not a root
        # restart with a simplex sized to the remaining defect
        edge = min(max(gmpy2.sqrt(gx) * 4, big(2, bits) ** (16 - bits)),
                   big(spec.simplex_edge, bits))
    fx = objective(x, spec)
    converged = fx < tol
    if converged:
        polished_spec = replace(spec, precision_bits=2 * bits)
        xp = [big(v, 2 * bits) for v in x]

        def gp(v):
            return _squared_defect_sum(v, polished_spec)

        xp, _, it, _ = _nelder_mead(gp, xp, big(2, 2 * bits) ** (-bits // 2),
                                    2 * bits, big(spec.kappa_tol, 2 * bits) ** 4,
                                    spec.max_iterations // 2)
        total_it += it
        x = [big(v, bits) for v in xp]
        fx = objective(x, spec)
    return finish(x, fx, total_it, converged)


def campaign(spec: SearchSpec, n_starts: int) -> list[SearchResult]:
    """Seeded multistart search; converged results deduplicated and ranked.

    Starts are uniform in [-1, 1] per free parameter.  Two results belong to
    the same solution class when every free parameter agrees within 1e-20.
    Ranking is by total coefficient magnitude, then by the first defect
    beyond the enforced order.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    rng = np.random.default_rng(spec.rng_seed)
    starts = rng.uniform(-1.0, 1.0, (n_starts, spec.n_free))
    results = [minimize(spec, start=row) for row in starts]
    near = big("1e-20", spec.precision_bits)
    classes: list[SearchResult] = []
    for res in results:
        if not res.converged:
            continue
        for i, rep in enumerate(classes):
            if all(abs(a - b) < near
                   for a, b in zip(res.free_params, rep.free_params)):
                if res.kappa_max < rep.kappa_max:
                    classes[i] = res
                break
        else:
            classes.append(res)
    mode_word = spec.scheme.replace("-prime", "'").lower()

    def rank_key(r: SearchResult):
        nxt = r.higher_order_kappas[0] if r.higher_order_kappas else big(0, 8)
        return (r.coeff_abs_sum, nxt, to_decimal(r.free_params[0], 12))

    ranked = sorted(classes, key=rank_key)
    out = []
    for i, r in enumerate(ranked):
        named = replace(r.coeffs,
                        name=f"{mode_word}s{spec.stages}o{spec.lambda_H}H r{i + 1}")
        out.append(replace(r, coeffs=named))
    return out
