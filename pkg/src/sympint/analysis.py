"""Power-series decomposition of one integrator step on the unit oscillator.

With a linear force the step map is a polynomial in the time step, so the
position and momentum of one full step expand exactly into finite series.
Comparing the position coefficients against the Taylor coefficients of the
exact flow yields the error spectrum kappa_lambda; the largest lambda with
all defects below tolerance is the harmonic order of the set.

Three decomposition modes exist.  ``aba`` expands the drift-first
realization of a set (outer family applied to positions), ``bab`` the
kick-first realization (outer family applied to momenta).  ``bab-prime``
denotes the kick-first composition embedded in drift-first indexing with
zero outer drift coefficients; its position series coincides with ``bab``,
but it names the constraint channel used to derive the primed coefficient
sets and selects the drift-first style recurrence for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from gmpy2 import mpfr

from .coefficients import SplittingCoefficients
from .precision import big, working_precision
from .series import TauSeries

MODES = ("aba", "bab", "bab-prime")

# Exact derivative sequences at t=0 of the reference flow through
# (q, p) = (1, -1) with unit mass and stiffness: q(t) = cos t - sin t.
_Q_DERIVS = (1, -1, -1, 1)
_P_DERIVS = (-1, -1, 1, 1)


class RecurrenceUndefined(ValueError):
    """A ratio in the two-term recurrence divides by a zero coefficient."""


@dataclass(frozen=True)
class DecompositionSetting:
    """Mode and truncation order; initial data is fixed at q=1, p=-1, m=k=1."""

    mode: str = "bab"
    lambda_max: int | None = None
    precision_bits: int | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.lambda_max is not None and self.lambda_max < 4:
            raise ValueError(f"lambda_max must be >= 4, got {self.lambda_max}")


@dataclass(frozen=True)
class ZetaSpectrum:
    """Position contributions zeta[l] (and the momentum channel) per tau power."""

    zeta: tuple
    momentum_zeta: tuple
    mode: str
    lambda_max: int
    precision_bits: int
    note: str | None = None


@dataclass(frozen=True)
class KappaSpectrum:
    kappa: tuple
    mode: str
    precision_bits: int

    def __getitem__(self, lam: int) -> mpfr:
        return self.kappa[lam]


@dataclass(frozen=True)
class RecurrenceTable:
    """Position rows of the two-term recurrence, one series per substep."""

    rows: tuple
    ratios: tuple
    products: tuple
    mode: str

    @property
    def zeta(self) -> tuple:
        return self.rows[-1].coeffs


def _resolved(coeffs: SplittingCoefficients, setting: DecompositionSetting):
    bits = setting.precision_bits or coeffs.precision_bits
    lmax = setting.lambda_max or (2 * coeffs.stages + 2)
    return bits, lmax


def default_setting(coeffs: SplittingCoefficients,
                    mode: str | None = None,
                    lambda_max: int | None = None) -> DecompositionSetting:
    return DecompositionSetting(mode=mode or coeffs.default_mode(),
                                lambda_max=lambda_max,
                                precision_bits=coeffs.precision_bits)


def _propagate(outer: Sequence, inner: Sequence, kick_first: bool,
               lmax: int, bits: int):
    """Push q and p as dense tau-polynomials through all substeps (m=k=1)."""
    with working_precision(bits):
        zero = big(0, bits)
        q = [big(1, bits)] + [zero] * lmax
        p = [big(-1, bits)] + [zero] * lmax
        k = len(outer)

        def drift(w):
            for lam in range(lmax, 0, -1):
                q[lam] = q[lam] + w * p[lam - 1]

        def kick(w):
            for lam in range(lmax, 0, -1):
                p[lam] = p[lam] - w * q[lam - 1]

        for i in range(k):
            if kick_first:
                kick(outer[i])
                if i < k - 1:
                    drift(inner[i])
            else:
                drift(outer[i])
                if i < k - 1:
                    kick(inner[i])
    return q, p


def decompose(coeffs: SplittingCoefficients,
              setting: DecompositionSetting | None = None,
              route: str = "series") -> ZetaSpectrum:
    """Expand one step into position contributions per power of the time step.

    The series route is total.  Requesting the recurrence route falls back to
    the series automatically when a ratio is undefined, recording a note.
    """
    if setting is None:
        setting = default_setting(coeffs)
    bits, lmax = _resolved(coeffs, setting)
    note = None
    if route == "recurrence":
        try:
            table = decompose_recurrence(coeffs, setting)
            zeta = table.zeta
            _, p = _propagate(coeffs.outer, coeffs.inner,
                              setting.mode != "aba", lmax, bits)
            return ZetaSpectrum(tuple(zeta), tuple(p), setting.mode, lmax, bits)
        except RecurrenceUndefined as exc:
            note = f"recurrence undefined ({exc}); series route used"
    elif route != "series":
        raise ValueError(f"route must be 'series' or 'recurrence', got {route!r}")
    q, p = _propagate(coeffs.outer, coeffs.inner,
                      setting.mode != "aba", lmax, bits)
    return ZetaSpectrum(tuple(q), tuple(p), setting.mode, lmax, bits, note)


def decompose_recurrence(coeffs: SplittingCoefficients,
                         setting: DecompositionSetting | None = None
                         ) -> RecurrenceTable:
    """Rebuild the position series through the two-term recurrence.

    Kick-first modes step rows h with ratio C_h = v_h/v_{h-1} over the drift
    family v and products D_h = -v_h w_h; the drift-first mode uses ratios
    over the outer drifts and cross products with the trailing kick.  Any
    zero denominator raises :class:`RecurrenceUndefined`.
    """
    if setting is None:
        setting = default_setting(coeffs)
    bits, lmax = _resolved(coeffs, setting)
    outer, inner = coeffs.outer, coeffs.inner

    with working_precision(bits):
        zero = big(0, bits)
        pa = big(-1, bits)

        def shift2(row, scale):
            return [zero, zero] + [scale * x for x in row[:lmax - 1]]

        rows = [[big(1, bits)] + [zero] * lmax]
        ratios, products = [], []
        if setting.mode == "aba":
            drifts, kicks = list(outer), list(inner)
            # q_1 = q_a + tau*w_1*p_a, no quadratic term yet
            row1 = list(rows[0])
            row1[1] = row1[1] + drifts[0] * pa
            rows.append(row1)
            for h in range(2, len(drifts) + 1):
                if drifts[h - 2] == 0:
                    raise RecurrenceUndefined(f"drift coefficient {h - 1} is zero")
                r = drifts[h - 1] / drifts[h - 2]
                dprod = -drifts[h - 1] * kicks[h - 2]
                ratios.append(r)
                products.append(dprod)
                prev, prev2 = rows[-1], rows[-2]
                new = [(1 + r) * a - r * b for a, b in zip(prev, prev2)]
                for lam, val in enumerate(shift2(prev, dprod)):
                    new[lam] = new[lam] + val
                rows.append(new)
        else:
            kicks, drifts = list(outer), list(inner)
            row1 = list(rows[0])
            row1[1] = row1[1] + drifts[0] * pa
            if lmax >= 2:
                row1[2] = row1[2] - drifts[0] * kicks[0]
            rows.append(row1)
            for h in range(2, len(drifts) + 1):
                if drifts[h - 2] == 0:
                    raise RecurrenceUndefined(f"drift coefficient {h - 1} is zero")
                r = drifts[h - 1] / drifts[h - 2]
                dprod = -drifts[h - 1] * kicks[h - 1]
                ratios.append(r)
                products.append(dprod)
                prev, prev2 = rows[-1], rows[-2]
                new = [(1 + r) * a - r * b for a, b in zip(prev, prev2)]
                for lam, val in enumerate(shift2(prev, dprod)):
                    new[lam] = new[lam] + val
                rows.append(new)
    series_rows = tuple(TauSeries(tuple(r), lmax, bits) for r in rows)
    return RecurrenceTable(series_rows, tuple(ratios), tuple(products),
                           setting.mode)


def kappa_zero_tolerance(precision_bits: int) -> mpfr:
    """Defect threshold separating exact zeros from genuine error terms."""
    return big(2, max(precision_bits, 64)) ** (26 - precision_bits)


def kappa_spectrum(coeffs: SplittingCoefficients,
                   setting: DecompositionSetting | None = None,
                   lambda_H: int | None = None) -> KappaSpectrum:
    """kappa_l = |q^(l)(0) - l! zeta_l| for l = 0..lambda_H."""
    if setting is None:
        setting = default_setting(coeffs)
    bits, lmax = _resolved(coeffs, setting)
    if lambda_H is None:
        lambda_H = lmax
    if lambda_H > lmax:
        raise ValueError(f"lambda_H {lambda_H} exceeds lambda_max {lmax}")
    spec = decompose(coeffs, setting)
    with working_precision(bits):
        fact = big(1, bits)
        out = []
        for lam in range(lambda_H + 1):
            if lam > 0:
                fact = fact * lam
            ref = big(_Q_DERIVS[lam % 4], bits)
            out.append(abs(ref - fact * spec.zeta[lam]))
    return KappaSpectrum(tuple(out), setting.mode, bits)


def momentum_kappa_spectrum(coeffs: SplittingCoefficients,
                            setting: DecompositionSetting | None = None
                            ) -> KappaSpectrum:
    """Same defect measure on the momentum channel (diagnostic only)."""
    if setting is None:
        setting = default_setting(coeffs)
    bits, lmax = _resolved(coeffs, setting)
    spec = decompose(coeffs, setting)
    with working_precision(bits):
        fact = big(1, bits)
        out = []
        for lam in range(lmax + 1):
            if lam > 0:
                fact = fact * lam
            ref = big(_P_DERIVS[lam % 4], bits)
            out.append(abs(ref - fact * spec.momentum_zeta[lam]))
    return KappaSpectrum(tuple(out), setting.mode, bits)


def verify_order(coeffs: SplittingCoefficients,
                 setting: DecompositionSetting | None = None,
                 tol=None) -> tuple[int, int]:
    """(harmonic order, guaranteed general order) of the set.

    The harmonic order is the largest N with kappa_l below tolerance for all
    l <= N; satisfying it through four implies general fourth order, so the
    second element is min(N, 4).
    """
    if setting is None:
        setting = default_setting(coeffs)
    bits, lmax = _resolved(coeffs, setting)
    if tol is None:
        tol = kappa_zero_tolerance(bits)
    kap = kappa_spectrum(coeffs, setting)
    order = 0
    for lam in range(1, lmax + 1):
        if kap[lam] < tol:
            order = lam
        else:
            break
    return order, min(order, 4)


def spectrum_report(coeffs: SplittingCoefficients,
                    lambda_max: int | None = None) -> list[dict]:
    """kappa rows for the drift-first and kick-first realizations of a set."""
    rows = []
    for mode in ("aba", "bab"):
        setting = DecompositionSetting(mode=mode, lambda_max=lambda_max,
                                       precision_bits=coeffs.precision_bits)
        kap = kappa_spectrum(coeffs, setting)
        for lam, value in enumerate(kap.kappa):
            if lam == 0:
                continue
            rows.append(dict(method=coeffs.name, mode=mode, lam=lam, kappa=value))
    return rows


def zeta2_closed_form(coeffs: SplittingCoefficients, mode: str = "bab") -> mpfr:
    """Quadratic position contribution from coefficient sums alone (q_a=m=1)."""
    bits = coeffs.precision_bits
    outer, inner = coeffs.outer, coeffs.inner
    with working_precision(bits):
        total = big(0, bits)
        if mode == "aba":
            drifts, kicks = outer, inner
            seen = big(0, bits)
            for i, w in enumerate(drifts):
                if i > 0:
                    seen = seen + kicks[i - 1]
                total = total + w * seen
        else:
            kicks, drifts = outer, inner
            seen = big(0, bits)
            for i, v in enumerate(drifts):
                seen = seen + kicks[i]
                total = total + v * seen
        return -total


def zeta4_closed_form(coeffs: SplittingCoefficients) -> mpfr:
    """Quartic position contribution of the kick-first realization (q_a=m=1)."""
    bits = coeffs.precision_bits
    kicks, drifts = coeffs.outer, coeffs.inner
    s = len(drifts)
    with working_precision(bits):
        # row-wise quadratic entries Q_{h,2} = -sum_{i<=h} v_i sum_{j<=i} w_j
        q2 = []
        acc = big(0, bits)
        seen = big(0, bits)
        for i in range(s):
            seen = seen + kicks[i]
            acc = acc + drifts[i] * seen
            q2.append(-acc)
        total = big(0, bits)
        for m in range(1, s):
            tail = sum(drifts[m:], big(0, bits))
            total = total + q2[m - 1] * kicks[m] * tail
        return -total
