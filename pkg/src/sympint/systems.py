"""Bundled separable Hamiltonian systems and their exact-flow oracles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from importlib import resources
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class SeparableSystem:
    """H(q, p) = T(p) + V(q) with evaluators for the two gradients.

    ``dT_dp`` and ``dV_dq`` map length-``dim`` arrays to length-``dim``
    arrays; ``energy`` returns the scalar Hamiltonian.  Evaluators must be
    reentrant, the dataclass itself carries no state.
    """

    dim: int
    dT_dp: Callable[[np.ndarray], np.ndarray]
    dV_dq: Callable[[np.ndarray], np.ndarray]
    energy: Callable[[np.ndarray, np.ndarray], float]
    label: str


class SingularityFault(ValueError):
    """Evaluation at a configuration where the potential is singular."""


def sho(k: float = 1.0, m: float = 1.0) -> SeparableSystem:
    """One-dimensional harmonic oscillator, H = p^2/(2m) + k q^2/2."""
    if k <= 0 or m <= 0:
        raise ValueError(f"k and m must be positive, got k={k}, m={m}")
    return SeparableSystem(
        dim=1,
        dT_dp=lambda p: p / m,
        dV_dq=lambda q: k * q,
        energy=lambda q, p: float(p[0] ** 2 / (2 * m) + 0.5 * k * q[0] ** 2),
        label=f"sho(k={k}, m={m})",
    )


def sho_exact_flow(k: float = 1.0, m: float = 1.0):
    """Closed-form oscillator flow (q0, p0, t) -> (q, p)."""
    w = math.sqrt(k / m)

    def flow(q0: np.ndarray, p0: np.ndarray, t: float):
        c, s = math.cos(w * t), math.sin(w * t)
        q = q0 * c + p0 * (s / (m * w))
        p = p0 * c - q0 * (m * w * s)
        return q, p

    return flow


def henon_heiles() -> SeparableSystem:
    """Two-dimensional system with cubic coupling q_x^2 q_y - q_y^3/3."""

    def dV(q):
        x, y = q
        return np.array([x + 2.0 * x * y, y + x * x - y * y])

    def energy(q, p):
        x, y = q
        return float(0.5 * (p[0] ** 2 + p[1] ** 2) + 0.5 * (x * x + y * y)
                     + x * x * y - y ** 3 / 3.0)

    return SeparableSystem(2, lambda p: p.copy(), dV, energy, "henon-heiles")


HENON_HEILES_BENCH_STATE = (np.array([0.3, 0.0]), np.array([0.0, 0.4]))


def henon_heiles_y_plane() -> SeparableSystem:
    """Restriction to q_x = p_x = 0: V(y) = y^2/2 - y^3/3."""

    def dV(q):
        y = q[0]
        return np.array([y - y * y])

    def energy(q, p):
        y = q[0]
        return float(0.5 * p[0] ** 2 + 0.5 * y * y - y ** 3 / 3.0)

    return SeparableSystem(1, lambda p: p.copy(), dV, energy, "henon-heiles-y")


@dataclass(frozen=True)
class KeplerParams:
    """Planar two-body constants in SI units."""

    G: float
    m_S: float
    m_M: float
    r_aphelion: float
    v_aphelion: float

    @property
    def mu(self) -> float:
        """Gravitational parameter G*m_S of the heavy body."""
        return self.G * self.m_S

    def initial_state(self):
        """Aphelion start: q = (r_a, 0), p = (0, m_M * v_a)."""
        q = np.array([self.r_aphelion, 0.0])
        p = np.array([0.0, self.m_M * self.v_aphelion])
        return q, p

    def semi_major_axis(self) -> float:
        return 1.0 / (2.0 / self.r_aphelion - self.v_aphelion ** 2 / self.mu)

    def eccentricity(self) -> float:
        return self.r_aphelion / self.semi_major_axis() - 1.0

    def orbital_period(self) -> float:
        a = self.semi_major_axis()
        return 2.0 * math.pi * math.sqrt(a ** 3 / self.mu)


def load_kepler_params(path=None) -> KeplerParams:
    """Read `key = value` SI constants; defaults to the bundled file."""
    if path is None:
        raw = resources.files("sympint").joinpath(
            "data", "sun_mercury_params.txt").read_text()
    else:
        with open(path) as fh:
            raw = fh.read()
    values: dict[str, float] = {}
    for ln in raw.splitlines():
        s = ln.strip()
        if not s or s.startswith("#"):
            continue
        key, _, val = s.partition("=")
        values[key.strip()] = float(val)
    missing = {"G", "m_S", "m_M", "r_aphelion", "v_aphelion"} - set(values)
    if missing:
        raise ValueError(f"kepler parameter file missing keys: {sorted(missing)}")
    return KeplerParams(values["G"], values["m_S"], values["m_M"],
                        values["r_aphelion"], values["v_aphelion"])


def sun_mercury(params: KeplerParams | None = None) -> SeparableSystem:
    """Planar heliocentric two-body system, kinetic term p^2/(2 m_M)."""
    if params is None:
        params = load_kepler_params()
    if min(params.G, params.m_S, params.m_M,
           params.r_aphelion, params.v_aphelion) <= 0:
        raise ValueError("kepler parameters must all be positive")
    gmm = params.G * params.m_S * params.m_M
    m = params.m_M

    def dV(q):
        r2 = float(q @ q)
        if r2 == 0.0:
            raise SingularityFault("potential gradient at the origin")
        return gmm * q / r2 ** 1.5

    def energy(q, p):
        r = math.sqrt(float(q @ q))
        if r == 0.0:
            raise SingularityFault("potential at the origin")
        return float(p @ p) / (2 * m) - gmm / r

    return SeparableSystem(2, lambda p: p / m, dV, energy, "sun-mercury")


def kepler_exact_flow(params: KeplerParams):
    """Closed-form two-body flow from the aphelion start, via Kepler's equation.

    Returns a callable t -> (q, p).  Aphelion at t = 0 means eccentric
    anomaly E = pi there; mean anomaly advances linearly.
    """
    a = params.semi_major_axis()
    e = params.eccentricity()
    n = 2.0 * math.pi / params.orbital_period()
    m_M = params.m_M
    mu = params.mu

    def flow(t: float):
        M = (math.pi + n * t) % (2.0 * math.pi)
        E = M if e < 0.8 else math.pi
        for _ in range(60):
            f = E - e * math.sin(E) - M
            E -= f / (1.0 - e * math.cos(E))
            if abs(f) < 1e-15:
                break
        cosE, sinE = math.cos(E), math.sin(E)
        # perifocal coordinates, then rotate so aphelion lies on +x
        x_pf = a * (cosE - e)
        y_pf = a * math.sqrt(1 - e * e) * sinE
        r = a * (1 - e * cosE)
        vx_pf = -a * n * sinE * a / r
        vy_pf = a * n * math.sqrt(1 - e * e) * cosE * a / r
        # aphelion in perifocal frame is at (-a(1+e), 0); flip both axes
        q = np.array([-x_pf, -y_pf])
        p = m_M * np.array([-vx_pf, -vy_pf])
        return q, p

    return flow


def gradient_check(system: SeparableSystem, rng: np.random.Generator,
                   n_points: int = 64, h: float = 1e-6, rtol: float = 1e-6,
                   q_scale: float = 1.0, p_scale: float = 1.0) -> float:
    """Worst relative mismatch between evaluators and centered differences.

    Sample points are drawn uniformly from [0.25, 1] * scale in magnitude with
    random signs, keeping clear of potential singularities at the origin.
    """
    worst = 0.0
    for _ in range(n_points):
        q = rng.uniform(0.25, 1.0, system.dim) * rng.choice([-1, 1], system.dim) * q_scale
        p = rng.uniform(0.25, 1.0, system.dim) * rng.choice([-1, 1], system.dim) * p_scale
        for i in range(system.dim):
            dq = np.zeros(system.dim); dq[i] = h * q_scale
            dp = np.zeros(system.dim); dp[i] = h * p_scale
            dV_num = (system.energy(q + dq, p) - system.energy(q - dq, p)) / (2 * dq[i])
            dT_num = (system.energy(q, p + dp) - system.energy(q, p - dp)) / (2 * dp[i])
            ref_v = system.dV_dq(q)[i]
            ref_t = system.dT_dp(p)[i]
            den_v = max(abs(ref_v), abs(dV_num), 1e-12 * max(1.0, abs(system.energy(q, p)) / q_scale))
            den_t = max(abs(ref_t), abs(dT_num), 1e-12 * max(1.0, abs(system.energy(q, p)) / p_scale))
            worst = max(worst, abs(dV_num - ref_v) / den_v,
                        abs(dT_num - ref_t) / den_t)
    if worst > rtol:
        raise AssertionError(
            f"{system.label}: gradient mismatch {worst:.3e} exceeds {rtol:.1e}")
    return worst
