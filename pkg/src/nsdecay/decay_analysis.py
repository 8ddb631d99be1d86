"""Turn runs into decay verdicts: rate fits, splitting, pressure, Duhamel.

Everything here is pure analysis over immutable snapshots and series.  The
load-bearing checks are exact mathematics on the discrete system:

* Fourier splitting: with r^2(t) = (1 + C0)/(t + 1), the high-mode energy
  satisfies r^2 E_high <= ||grad u||_2^2 mode by mode, so any violation
  beyond rounding is a bug, not a modeling error.
* Pressure bound: p-hat = -k-hat^T M-hat k-hat with
  M = u(x)u + v(x)u + u(x)v; since the cross tensors are transposes of each
  other and |k-hat^T A k-hat| <= ||A||_F, every mode obeys
  |p-hat| <= 2 ||(v(x)u)-hat||_F + ||(u(x)u)-hat||_F.
* Duhamel low modes: |u-hat(k,t)| <= e^{-|k|^2 t}|u0-hat(k)| +
  int_0^t e^{-|k|^2(t-s)} |k| (2||(v(x)u)-hat||_F + ||(u(x)u)-hat||_F) ds,
  checked by trapezoid quadrature over recorded tensor norms.

Rate fitting is least squares of log E against log(1+t); on a periodic box
it is only meaningful inside the validity window documented in
heat_semigroup.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_trapezoid = getattr(np, "trapezoid", None) or np.trapz

from nsdecay.spectral_core import (
    GridSpec,
    VelocityField,
    from_physical,
    lp_norm,
    to_physical,
)
from nsdecay.vortex import RadialVortexParams
from nsdecay.perturbation_solver import (
    EnergySeries,
    SolverState,
    filtered_background,
)

__all__ = [
    "DecayReport",
    "SplitCheck",
    "AprioriReport",
    "PressureReport",
    "LowModeTrace",
    "LowModeRecorder",
    "DuhamelReport",
    "GallayWayneReport",
    "fit_decay_rate",
    "fourier_split_check",
    "apriori_bound_check",
    "pressure_bound_check",
    "duhamel_lowmode_check",
    "gallay_wayne_check",
    "format_report",
]


@dataclass(frozen=True)
class DecayReport:
    """Scenario verdict: fitted rate, a priori constant, violation counts.

    ``checks`` maps each enabled criterion name to pass/fail; ``passed`` is
    their conjunction.  gamma_fitted is NaN when the run has nothing to fit
    (zero data).
    """

    gamma_target: float | None
    gamma_fitted: float
    gamma_stderr: float
    fit_window: tuple[float, float]
    apriori_constant: float
    splitting_violations: int
    C0: float
    pressure_violations: int
    exact_error: float | None
    checks: dict[str, bool]

    @property
    def passed(self) -> bool:
        return all(self.checks.values())


def format_report(report: DecayReport) -> str:
    """Flat key=value text block (one line per field, stable order)."""
    lines = [
        f"gamma_target = {_fmt(report.gamma_target)}",
        f"gamma_fitted = {_fmt(report.gamma_fitted)}",
        f"gamma_stderr = {_fmt(report.gamma_stderr)}",
        f"fit_t_min = {_fmt(report.fit_window[0])}",
        f"fit_t_max = {_fmt(report.fit_window[1])}",
        f"apriori_constant = {_fmt(report.apriori_constant)}",
        f"splitting_violations = {report.splitting_violations}",
        f"C0 = {_fmt(report.C0)}",
        f"pressure_violations = {report.pressure_violations}",
        f"exact_error = {_fmt(report.exact_error)}",
    ]
    for name in sorted(report.checks):
        lines.append(f"check.{name} = {'pass' if report.checks[name] else 'fail'}")
    lines.append(f"verdict = {'pass' if report.passed else 'fail'}")
    return "\n".join(lines) + "\n"


def _fmt(x) -> str:
    if x is None:
        return "none"
    return f"{float(x):.17g}"


def fit_decay_rate(
    series: EnergySeries, window: tuple[float, float]
) -> tuple[float, float]:
    """Least-squares slope of log E against log(1+t) over the window.

    Returns (slope, stderr); the decay exponent is -slope.  Requires at
    least 10 in-window samples with strictly positive energy.
    """
    t_min, t_max = window
    if not t_min < t_max:
        raise ValueError(f"empty fit window {window}")
    ts, es = [], []
    for row in series:
        if t_min <= row.t <= t_max:
            ts.append(row.t)
            es.append(row.E)
    if len(ts) < 10:
        raise ValueError(f"need >= 10 samples in window, have {len(ts)}")
    if min(es) <= 0:
        raise ValueError("energies must be positive for a log-log fit")
    x = np.log1p(np.array(ts))
    y = np.log(np.array(es))
    design = np.vstack([x, np.ones_like(x)]).T
    sol, residuals, _, _ = np.linalg.lstsq(design, y, rcond=None)
    dof = len(ts) - 2
    if dof > 0 and residuals.size:
        sigma_sq = float(residuals[0]) / dof
        stderr = math.sqrt(max(sigma_sq * np.linalg.inv(design.T @ design)[0, 0], 0.0))
    else:
        stderr = 0.0
    return float(sol[0]), stderr


@dataclass(frozen=True)
class SplitCheck:
    """One splitting-inequality evaluation: r^2 E_high vs ||grad u||^2."""

    E_low: float
    E_high: float
    lhs: float
    rhs: float

    @property
    def holds(self) -> bool:
        return self.lhs <= self.rhs * (1.0 + 1e-10) + 1e-300


def fourier_split_check(u: VelocityField, t: float, C0: float) -> SplitCheck:
    """Split energy at r^2 = (1+C0)/(t+1) and compare r^2 E_high to D.

    The inequality is exact (every high mode has |k| >= r), so ``holds``
    allows only 1e-10 relative rounding slack.
    """
    if not C0 > 0:
        raise ValueError(f"C0 must be positive, got {C0}")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    g = u.grid
    amp = np.abs(u.u1.coeffs) ** 2 + np.abs(u.u2.coeffs) ** 2
    lsq = g.length**2
    r2 = (1.0 + C0) / (t + 1.0)
    low = g.ksq < r2
    e_low = float(lsq * np.sum(amp[low]))
    e_high = float(lsq * np.sum(amp[~low]))
    rhs = float(lsq * np.sum(g.ksq * amp))
    return SplitCheck(e_low, e_high, r2 * e_high, rhs)


@dataclass(frozen=True)
class AprioriReport:
    """sup of E(t)/(1+t) and its per-decade trend from t0 on."""

    constant: float
    decade_sups: tuple[float, ...]
    passed: bool


def apriori_bound_check(series: EnergySeries, t0: float) -> AprioriReport:
    """sup over samples t >= t0 of E(t)/(1+t); growth across decades fails.

    The run passes when the constant is finite and the sup over the last
    decade of t does not exceed the sup over the first.
    """
    rows = [r for r in series if r.t >= t0]
    if not rows:
        raise ValueError(f"series has no samples at or after t0 = {t0}")
    if series.rows[0].t > t0:
        raise ValueError(f"series starts at {series.rows[0].t}, after t0 = {t0}")
    vals = np.array([r.E / (1.0 + r.t) for r in rows])
    ts = np.array([r.t for r in rows])
    decades = np.floor(np.log10(ts / t0) + 1e-12).astype(int)
    sups = tuple(float(np.max(vals[decades == d])) for d in sorted(set(decades)))
    constant = float(np.max(vals))
    passed = bool(np.isfinite(constant)) and sups[-1] <= sups[0]
    return AprioriReport(constant, sups, passed)


def _tensor_spectra(
    u: VelocityField, vortex: RadialVortexParams | None, t: float
) -> tuple[dict[str, np.ndarray], dict[str, np.ndarray] | None]:
    """Dealiased spectra of u(x)u and v(x)u (None without a background)."""
    g = u.grid
    mask = g.dealias_mask
    u1 = to_physical(u.u1)
    u2 = to_physical(u.u2)

    def spec(p: np.ndarray) -> np.ndarray:
        return np.where(mask, from_physical(p, g).coeffs, 0.0)

    uu = {"11": spec(u1 * u1), "12": spec(u1 * u2), "22": spec(u2 * u2)}
    if vortex is None or vortex.alpha == 0.0:
        return uu, None
    v1, v2, _, _ = filtered_background(vortex, g, t)
    vu = {
        "11": spec(v1 * u1),
        "12": spec(v1 * u2),
        "21": spec(v2 * u1),
        "22": spec(v2 * u2),
    }
    return uu, vu


def _tensor_frobenius(
    uu: dict[str, np.ndarray], vu: dict[str, np.ndarray] | None
) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise-in-k Frobenius norms ||(u(x)u)-hat||, ||(v(x)u)-hat||."""
    uu_f = np.sqrt(
        np.abs(uu["11"]) ** 2 + 2.0 * np.abs(uu["12"]) ** 2 + np.abs(uu["22"]) ** 2
    )
    if vu is None:
        return uu_f, np.zeros_like(uu_f)
    vu_f = np.sqrt(
        np.abs(vu["11"]) ** 2
        + np.abs(vu["12"]) ** 2
        + np.abs(vu["21"]) ** 2
        + np.abs(vu["22"]) ** 2
    )
    return uu_f, vu_f


@dataclass(frozen=True)
class PressureReport:
    """Mode count violating |p-hat| <= 2||(vu)-hat||_F + ||(uu)-hat||_F."""

    violations: int
    max_ratio: float


def pressure_bound_check(
    u: VelocityField, t: float, vortex: RadialVortexParams | None
) -> PressureReport:
    """Reconstruct the diagnostic pressure and count bound violations.

    p-hat(k) = -(k k^T : M-hat)/|k|^2 with M = u(x)u + v(x)u + u(x)v; the
    bound is checked with 1e-10 of the global bound scale as slack.  Zero
    violations expected: the inequality is a triangle inequality on symbols.
    """
    g = u.grid
    uu, vu = _tensor_spectra(u, vortex, t)
    kx, ky = g.kx_deriv, g.ky_deriv
    ksq = kx**2 + ky**2
    inv = np.divide(1.0, ksq, out=np.zeros_like(ksq), where=ksq > 0)

    m11 = uu["11"].copy()
    m12_sym = 2.0 * uu["12"]  # M12 + M21
    m22 = uu["22"].copy()
    if vu is not None:
        m11 += 2.0 * vu["11"]
        m12_sym += 2.0 * (vu["12"] + vu["21"])
        m22 += 2.0 * vu["22"]
    p_hat = -(kx * kx * m11 + kx * ky * m12_sym + ky * ky * m22) * inv

    uu_f, vu_f = _tensor_frobenius(uu, vu)
    bound = 2.0 * vu_f + uu_f
    active = ksq > 0
    scale = float(np.max(bound, initial=0.0))
    excess = np.abs(p_hat) - bound - 1e-10 * scale
    violations = int(np.count_nonzero(excess[active] > 0))
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(bound > 0, np.abs(p_hat) / bound, 0.0)
    max_ratio = float(np.max(ratio[active], initial=0.0))
    return PressureReport(violations, max_ratio)


@dataclass(frozen=True)
class LowModeTrace:
    """Recorded |u-hat| and forcing-bound samples on the |k| < 1 modes."""

    times: np.ndarray
    kvecs: np.ndarray
    ksq: np.ndarray
    uhat_abs: np.ndarray
    forcing: np.ndarray


class LowModeRecorder:
    """Snapshot hook for simulate(): records the Duhamel check's inputs.

    At each sample it stores |u-hat(k)| for the modes 0 < |k| < cutoff and
    the forcing bound |k| (2||(vu)-hat||_F + ||(uu)-hat||_F)(k).
    """

    def __init__(self, grid: GridSpec, cutoff: float = 1.0):
        kk = np.sqrt(grid.ksq)
        self._sel = (kk > 0) & (kk < cutoff)
        if not np.any(self._sel):
            raise ValueError("no modes below cutoff; box too small")
        self.grid = grid
        kx = np.broadcast_to(grid.kx, (grid.n, grid.n))
        ky = np.broadcast_to(grid.ky, (grid.n, grid.n))
        self.kvecs = np.stack([kx[self._sel], ky[self._sel]], axis=-1)
        self.ksq = grid.ksq[self._sel]
        self._k = np.sqrt(self.ksq)
        self._times: list[float] = []
        self._uhat: list[np.ndarray] = []
        self._forcing: list[np.ndarray] = []

    def __call__(self, state: SolverState) -> None:
        amp = np.sqrt(
            np.abs(state.u.u1.coeffs[self._sel]) ** 2
            + np.abs(state.u.u2.coeffs[self._sel]) ** 2
        )
        vortex = state.vortex if state.mode == "perturbation" else None
        uu, vu = _tensor_spectra(state.u, vortex, state.t)
        uu_f, vu_f = _tensor_frobenius(uu, vu)
        self._times.append(state.t)
        self._uhat.append(amp)
        self._forcing.append(self._k * (2.0 * vu_f[self._sel] + uu_f[self._sel]))

    def trace(self) -> LowModeTrace:
        return LowModeTrace(
            np.array(self._times),
            self.kvecs,
            self.ksq,
            np.array(self._uhat),
            np.array(self._forcing),
        )


@dataclass(frozen=True)
class DuhamelReport:
    """Worst deficit of the low-mode Duhamel inequality over (k, t)."""

    n_modes: int
    n_times: int
    max_deficit: float
    violations: int
    passed: bool


def duhamel_lowmode_check(trace: LowModeTrace, u0: VelocityField) -> DuhamelReport:
    """Verify |u-hat(k,t)| against the heat term plus the forcing integral.

    The right side is evaluated by trapezoid quadrature of the recorded
    forcing bound; sampling must be at least 16 per unit time.  The pass
    tolerance is rounding slack plus a Richardson estimate of the
    quadrature error (coarse vs. full trapezoid difference / 3).
    """
    times = trace.times
    if len(times) < 3:
        raise ValueError("need at least 3 snapshots")
    span = times[-1] - times[0]
    if span <= 0 or (len(times) - 1) / span < 16.0 - 1e-9:
        raise ValueError("need at least 16 snapshots per unit time")

    # recover each traced mode's fft indices from its wavevector
    g = u0.grid
    scale_k = g.length / (2.0 * math.pi)
    m1 = np.rint(trace.kvecs[:, 0] * scale_k).astype(int) % g.n
    m2 = np.rint(trace.kvecs[:, 1] * scale_k).astype(int) % g.n
    u0_amp = np.sqrt(
        np.abs(u0.u1.coeffs[m1, m2]) ** 2 + np.abs(u0.u2.coeffs[m1, m2]) ** 2
    )

    scale = float(np.max(u0_amp, initial=0.0)) + float(
        np.max(trace.forcing, initial=0.0)
    )
    max_deficit = 0.0
    violations = 0
    t0 = times[0]
    for i in range(len(times)):
        t = times[i]
        decay = np.exp(-trace.ksq * (t - t0))
        heat_term = decay * u0_amp
        if i == 0:
            rhs = heat_term
            quad_err = np.zeros_like(heat_term)
        else:
            s = times[: i + 1]
            integrand = np.exp(-trace.ksq[None, :] * (t - s[:, None])) * trace.forcing[
                : i + 1
            ]
            full = _trapezoid(integrand, s, axis=0)
            if i >= 2:
                coarse = _trapezoid(integrand[::2], s[::2], axis=0)
                quad_err = np.abs(full - coarse) / 3.0
            else:
                quad_err = 0.1 * np.abs(full)
            rhs = heat_term + full
        deficit = trace.uhat_abs[i] - rhs - quad_err - 1e-8 * scale
        worst = float(np.max(deficit, initial=-np.inf))
        max_deficit = max(max_deficit, worst)
        violations += int(np.count_nonzero(deficit > 0))
    return DuhamelReport(
        trace.kvecs.shape[0], len(times), max_deficit, violations, violations == 0
    )


@dataclass(frozen=True)
class GallayWayneReport:
    """Samples of t^{1/2 - 1/q} ||u(t)||_q and the decade-trend verdict."""

    q: float
    values: tuple[tuple[float, float], ...]
    first_decade_mean: float
    last_decade_mean: float
    passed: bool


def gallay_wayne_check(
    snapshots: Sequence[tuple[float, VelocityField]], q: float
) -> GallayWayneReport:
    """Decay of the self-similar comparison: weighted L^q norms of u.

    With the exact vortex background the comparison against the self-similar
    profile reduces to t^{1/2-1/q} ||u(t)||_q -> 0; the check passes when the
    mean over the last decade of t is below the mean over the first.
    """
    if not q > 2:
        raise ValueError(f"q must exceed 2, got {q}")
    if len(snapshots) == 0:
        raise ValueError("need at least one snapshot")
    inv_q = 0.0 if q == np.inf else 1.0 / q
    vals = []
    for t, u in sorted(snapshots, key=lambda s: s[0]):
        if t <= 0:
            raise ValueError("snapshot times must be positive")
        speed = np.sqrt(to_physical(u.u1) ** 2 + to_physical(u.u2) ** 2)
        vals.append((float(t), float(t) ** (0.5 - inv_q) * lp_norm(speed, u.grid, q)))
    ts = np.array([t for t, _ in vals])
    ws = np.array([w for _, w in vals])
    decades = np.floor(np.log10(ts / ts[0]) + 1e-12).astype(int)
    first = float(np.mean(ws[decades == decades.min()]))
    last = float(np.mean(ws[decades == decades.max()]))
    return GallayWayneReport(q, tuple(vals), first, last, last <= first)
