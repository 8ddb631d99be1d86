"""Time integration of the perturbation system around the vortex background.

Modes:

* ``perturbation``: du/dt + u.grad u + grad p - lap u = -u.grad v - v.grad u
  with the closed-form Oseen background v;
* ``navier_stokes``: the same with v = 0 (plain 2D Navier-Stokes);
* ``heat``: nonlinearity off, pure diffusion (cross-validation mode).

The stepper is an integrating-factor RK4: diffusion is integrated exactly by
e^{-|k|^2 dt} factors, everything else by classical RK4.  The nonlinear term
is assembled in divergence form, N_i = -d_j T_ij with the symmetric tensor
T_ij = u_i u_j + v_i u_j + u_i v_j, products formed in physical space and
dealiased by the 2/3 rule.  With the strict cutoff the retained modes are
alias-free, which makes the discrete energy identities exact: the advection
terms are skew-symmetric to roundoff, and every inequality the analysis
layer checks holds without discretization slack.

The background is sampled from its closed form at every stage time, then
dealiased and Leray-projected; that filtered field is what the discrete
system sees, so all diagnostics use it consistently.  With alpha = 0 the
perturbation mode takes the navier_stokes code path, making the
trajectories bitwise identical.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from nsdecay.heat_semigroup import make_initial_data
from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    dealias,
    from_physical,
    leray_project,
    to_physical,
)
from nsdecay.vortex import RadialVortexParams, sample_background

__all__ = [
    "MODES",
    "SolverAbort",
    "SolverState",
    "SeriesRow",
    "EnergySeries",
    "filtered_background",
    "initial_velocity",
    "rhs",
    "step",
    "simulate",
]

MODES = ("perturbation", "navier_stokes", "heat")


class SolverAbort(RuntimeError):
    """Numerical failure (non-finite state or stability-bound breach)."""

    def __init__(self, message: str, t: float, step_index: int):
        super().__init__(f"{message} (t={t:.6g}, step {step_index})")
        self.t = t
        self.step_index = step_index


@dataclass(frozen=True)
class SolverState:
    """Immutable snapshot of a run: velocity, clock, step size, mode."""

    u: VelocityField
    t: float
    dt: float
    mode: str
    vortex: RadialVortexParams | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if not self.dt > 0:
            raise ValueError(f"dt must be positive, got {self.dt}")
        if self.t < 0:
            raise ValueError(f"t must be nonnegative, got {self.t}")


@dataclass(frozen=True)
class SeriesRow:
    """One sampled instant: energies, dissipation, background transfer.

    E = ||u||_2^2, D = ||grad u||_2^2, Tv = <u.grad v, u>, v_inf is the sup
    of the (filtered) background speed, and E_low/E_high split E at the
    Fourier-splitting radius r(t), r^2 = (1 + C0)/(t + 1).
    """

    t: float
    E: float
    D: float
    Tv: float
    v_inf: float
    E_low: float
    E_high: float
    r2: float


@dataclass
class EnergySeries:
    """Append-only time series of SeriesRow samples."""

    rows: list[SeriesRow] = field(default_factory=list)

    def append(self, row: SeriesRow) -> None:
        if self.rows and row.t <= self.rows[-1].t:
            raise ValueError("time stamps must increase")
        self.rows.append(row)

    def times(self) -> np.ndarray:
        return np.array([r.t for r in self.rows])

    def energies(self) -> np.ndarray:
        return np.array([r.E for r in self.rows])

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def filtered_background(
    vortex: RadialVortexParams, grid: GridSpec, t: float
) -> tuple[np.ndarray, np.ndarray, SpectralField, SpectralField]:
    """Background the discrete system sees: sampled, dealiased, projected.

    Returns physical components and their spectral fields.  The raw Oseen
    samples are not exactly periodic or discretely divergence-free; without
    this filtering the exact-inequality diagnostics (skew-symmetry, pressure
    and splitting bounds) pick up seam noise instead of mathematics.
    """
    v1, v2 = sample_background(vortex, grid, t)
    vf = leray_project(
        dealias(from_physical(v1, grid)), dealias(from_physical(v2, grid))
    )
    return to_physical(vf.u1), to_physical(vf.u2), vf.u1, vf.u2


class _Workspace:
    """Packed rfft2 arrays and cached factors for one (grid, dt, mode) run."""

    def __init__(
        self,
        grid: GridSpec,
        dt: float,
        mode: str,
        vortex: RadialVortexParams | None,
    ):
        self.grid = grid
        self.dt = dt
        self.mode = mode
        self.vortex = vortex
        n = grid.n
        m = n // 2 + 1
        self.n = n
        self.m = m
        two_pi_over_l = 2.0 * np.pi / grid.length

        mx = grid.modes.astype(float)
        my = np.arange(m, dtype=float)
        kx = two_pi_over_l * mx[:, None]
        ky = two_pi_over_l * my[None, :]
        self.ksq = kx**2 + ky**2

        kxd = kx.copy()
        kxd[n // 2, :] = 0.0
        kyd = ky.copy()
        kyd[:, m - 1] = 0.0
        self.kxd = kxd
        self.kyd = kyd
        ksqd = kxd**2 + kyd**2
        self.inv_ksqd = np.divide(
            1.0, ksqd, out=np.zeros_like(ksqd), where=ksqd > 0
        )

        cut = grid.dealias_fraction * n / 2.0
        keep_x = np.abs(grid.modes) <= cut
        keep_y = my <= cut
        self.mask = (keep_x[:, None] & keep_y[None, :]).astype(float)

        # column multiplicity for Parseval sums over the half spectrum
        w = np.full((1, m), 2.0)
        w[0, 0] = 1.0
        w[0, m - 1] = 1.0
        self.weight = w

        self.e_full = np.exp(-self.ksq * dt)
        self.e_half = np.exp(-self.ksq * dt / 2.0)

        self._bg: dict[float, tuple] = {}
        if mode == "perturbation" and vortex is not None:
            # time-independent vortex geometry; per stage time only the
            # radial factor 1 - e^{-r^2/4(t+t0)} changes
            x1, x2 = grid.coordinates
            half = grid.length / 2.0
            y1 = x1 - half
            y2 = x2 - half
            r2 = y1**2 + y2**2
            safe = np.where(r2 > 0.0, r2, 1.0)
            c = vortex.alpha / (2.0 * np.pi)
            self._bg_a1 = np.where(r2 > 0.0, -c * y2 / safe, 0.0)
            self._bg_a2 = np.where(r2 > 0.0, c * y1 / safe, 0.0)
            self._bg_r2 = r2

    # -- transforms under the coeffs = fft/n^2 convention ------------------

    def to_phys(self, c: np.ndarray) -> np.ndarray:
        return np.fft.irfft2(c * (self.n * self.n), s=(self.n, self.n))

    def to_spec(self, p: np.ndarray) -> np.ndarray:
        return np.fft.rfft2(p) / (self.n * self.n)

    def pack(self, f: SpectralField) -> np.ndarray:
        return np.ascontiguousarray(f.coeffs[:, : self.m])

    def unpack(self, c: np.ndarray) -> SpectralField:
        full = np.fft.fft2(self.to_phys(c)) / (self.n * self.n)
        return SpectralField(self.grid, full)

    # -- background --------------------------------------------------------

    def background(self, t: float):
        """Filtered background at a stage time, cached (physical + spectral)."""
        if self.mode != "perturbation" or self.vortex is None:
            return None
        hit = self._bg.get(t)
        if hit is not None:
            return hit
        swirl = -np.expm1(-self._bg_r2 / (4.0 * (t + self.vortex.t0)))
        v1 = self._bg_a1 * swirl
        v2 = self._bg_a2 * swirl
        c1 = self.to_spec(v1) * self.mask
        c2 = self.to_spec(v2) * self.mask
        kdot = self.kxd * c1 + self.kyd * c2
        c1 = c1 - self.kxd * kdot * self.inv_ksqd
        c2 = c2 - self.kyd * kdot * self.inv_ksqd
        c1[0, 0] = 0.0
        c2[0, 0] = 0.0
        entry = (self.to_phys(c1), self.to_phys(c2), c1, c2)
        if len(self._bg) > 6:
            for key in sorted(self._bg)[:3]:
                del self._bg[key]
        self._bg[t] = entry
        return entry

    # -- dynamics -----------------------------------------------------------

    def project(self, c1: np.ndarray, c2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        kdot = self.kxd * c1 + self.kyd * c2
        return c1 - self.kxd * kdot * self.inv_ksqd, c2 - self.kyd * kdot * self.inv_ksqd

    def nonlinear(
        self, c1: np.ndarray, c2: np.ndarray, t: float
    ) -> tuple[np.ndarray, np.ndarray]:
        """Projected, dealiased -div(T) for the current mode at time t."""
        if self.mode == "heat":
            z = np.zeros_like(c1)
            return z, z
        u1 = self.to_phys(c1)
        u2 = self.to_phys(c2)
        bg = self.background(t)
        if bg is None:
            t11 = u1 * u1
            t12 = u1 * u2
            t22 = u2 * u2
        else:
            v1, v2 = bg[0], bg[1]
            t11 = u1 * (u1 + 2.0 * v1)
            t12 = u1 * u2 + v1 * u2 + v2 * u1
            t22 = u2 * (u2 + 2.0 * v2)
        f11 = self.to_spec(t11)
        f12 = self.to_spec(t12)
        f22 = self.to_spec(t22)
        n1 = -1j * (self.kxd * f11 + self.kyd * f12) * self.mask
        n2 = -1j * (self.kxd * f12 + self.kyd * f22) * self.mask
        return self.project(n1, n2)

    def step(
        self, c1: np.ndarray, c2: np.ndarray, t: float, step_index: int
    ) -> tuple[np.ndarray, np.ndarray]:
        h = self.dt
        s = 0.5 * h
        e1, e2 = self.e_full, self.e_half

        a1, a2 = self.nonlinear(c1, c2, t)
        ua1 = e2 * (c1 + s * a1)
        ua2 = e2 * (c2 + s * a2)
        b1, b2 = self.nonlinear(ua1, ua2, t + s)
        ub1 = e2 * c1 + s * b1
        ub2 = e2 * c2 + s * b2
        g1, g2 = self.nonlinear(ub1, ub2, t + s)
        uc1 = e1 * c1 + h * (e2 * g1)
        uc2 = e1 * c2 + h * (e2 * g2)
        d1, d2 = self.nonlinear(uc1, uc2, t + h)

        f = h / 6.0
        r1 = e1 * c1 + f * (e1 * a1 + 2.0 * e2 * (b1 + g1) + d1)
        r2 = e1 * c2 + f * (e1 * a2 + 2.0 * e2 * (b2 + g2) + d2)
        if not (np.isfinite(r1).all() and np.isfinite(r2).all()):
            raise SolverAbort("non-finite coefficients after step", t + h, step_index)
        return r1, r2

    # -- diagnostics ---------------------------------------------------------

    def energy(self, c1: np.ndarray, c2: np.ndarray) -> float:
        amp = np.abs(c1) ** 2 + np.abs(c2) ** 2
        return float(self.grid.length**2 * np.sum(self.weight * amp))

    def row(self, c1: np.ndarray, c2: np.ndarray, t: float, c0: float) -> SeriesRow:
        lsq = self.grid.length**2
        amp = self.weight * (np.abs(c1) ** 2 + np.abs(c2) ** 2)
        e_tot = float(lsq * np.sum(amp))
        d_tot = float(lsq * np.sum(self.ksq * amp))
        r2 = (1.0 + c0) / (t + 1.0)
        low = self.ksq < r2
        e_low = float(lsq * np.sum(amp[low]))
        e_high = float(lsq * np.sum(amp[~low]))

        bg = self.background(t)
        if bg is None:
            tv = 0.0
            v_inf = 0.0
        else:
            v1p, v2p, vc1, vc2 = bg
            u1 = self.to_phys(c1)
            u2 = self.to_phys(c2)
            dv11 = self.to_phys(1j * self.kxd * vc1)
            dv12 = self.to_phys(1j * self.kyd * vc1)
            dv21 = self.to_phys(1j * self.kxd * vc2)
            dv22 = self.to_phys(1j * self.kyd * vc2)
            # alias-free triple products make this quadrature exactly the
            # spectral inner product <u.grad v, u>
            integrand = u1 * (u1 * dv11 + u2 * dv12) + u2 * (u1 * dv21 + u2 * dv22)
            tv = float(np.sum(integrand) * self.grid.spacing**2)
            v_inf = float(np.sqrt(np.max(v1p**2 + v2p**2)))
        return SeriesRow(t, e_tot, d_tot, tv, v_inf, e_low, e_high, r2)

    def speed_sup(self, c1: np.ndarray, c2: np.ndarray, t: float) -> float:
        """Pointwise sup of |u| + |v| for the stability bound."""
        u1 = self.to_phys(c1)
        u2 = self.to_phys(c2)
        speed = np.sqrt(u1**2 + u2**2)
        bg = self.background(t)
        if bg is not None:
            speed = speed + np.sqrt(bg[0] ** 2 + bg[1] ** 2)
        return float(np.max(speed))


def _effective(mode: str, vortex: RadialVortexParams | None):
    """alpha = 0 (or no vortex) collapses perturbation onto navier_stokes."""
    if mode == "perturbation" and (vortex is None or vortex.alpha == 0.0):
        return "navier_stokes", None
    if mode != "perturbation":
        return mode, None
    return mode, vortex


def rhs(
    u: VelocityField,
    t: float,
    mode: str,
    vortex: RadialVortexParams | None = None,
) -> VelocityField:
    """Full tendency: Leray-projected advection terms plus the Laplacian.

    Reference implementation on the full spectral layout; the stepper keeps
    its own packed copy of the same arithmetic.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    grid = u.grid
    eff_mode, eff_vortex = _effective(mode, vortex)

    if eff_mode == "heat":
        n1 = np.zeros_like(u.u1.coeffs)
        n2 = np.zeros_like(u.u2.coeffs)
    else:
        u1 = to_physical(u.u1)
        u2 = to_physical(u.u2)
        if eff_vortex is None:
            t11, t12, t22 = u1 * u1, u1 * u2, u2 * u2
        else:
            v1, v2, _, _ = filtered_background(eff_vortex, grid, t)
            t11 = u1 * (u1 + 2.0 * v1)
            t12 = u1 * u2 + v1 * u2 + v2 * u1
            t22 = u2 * (u2 + 2.0 * v2)
        f11 = dealias(from_physical(t11, grid)).coeffs
        f12 = dealias(from_physical(t12, grid)).coeffs
        f22 = dealias(from_physical(t22, grid)).coeffs
        n1 = -1j * (grid.kx_deriv * f11 + grid.ky_deriv * f12)
        n2 = -1j * (grid.kx_deriv * f12 + grid.ky_deriv * f22)

    proj = leray_project(SpectralField(grid, n1), SpectralField(grid, n2))
    out1 = proj.u1.coeffs - grid.ksq * u.u1.coeffs
    out2 = proj.u2.coeffs - grid.ksq * u.u2.coeffs
    return VelocityField(SpectralField(grid, out1), SpectralField(grid, out2))


def step(state: SolverState) -> SolverState:
    """Advance one integrating-factor RK4 step; returns the new state."""
    eff_mode, eff_vortex = _effective(state.mode, state.vortex)
    ws = _Workspace(state.u.grid, state.dt, eff_mode, eff_vortex)
    c1 = ws.pack(state.u.u1)
    c2 = ws.pack(state.u.u2)
    c1, c2 = ws.step(c1, c2, state.t, step_index=0)
    u_new = VelocityField(ws.unpack(c1), ws.unpack(c2))
    return SolverState(u_new, state.t + state.dt, state.dt, state.mode, state.vortex)


def initial_velocity(config, grid: GridSpec) -> VelocityField:
    """Build the configured initial data on the grid (file inputs excluded:
    the harness owns file formats and passes the field in explicitly)."""
    kind = config.init_kind
    if kind == "prescribed_gamma":
        u0 = make_initial_data(
            config.init_gamma, grid, config.init_seed, config.init_amplitude
        )
        return VelocityField(dealias(u0.u1), dealias(u0.u2))
    if kind == "taylor_green":
        cells = grid.length / (2.0 * np.pi)
        if abs(cells - round(cells)) > 1e-9 * max(1.0, cells) or round(cells) < 1:
            raise ValueError(
                "taylor_green needs a box length that is a multiple of 2*pi"
            )
        q = 2.0 * np.pi * round(cells) / grid.length
        x1, x2 = grid.coordinates
        amp = config.init_amplitude
        s1 = amp * np.sin(q * x1) * np.cos(q * x2)
        s2 = -amp * np.cos(q * x1) * np.sin(q * x2)
        u = leray_project(from_physical(s1, grid), from_physical(s2, grid))
        return VelocityField(dealias(u.u1), dealias(u.u2))
    if kind == "zero":
        z = np.zeros((grid.n, grid.n), dtype=complex)
        return VelocityField(SpectralField(grid, z), SpectralField(grid, z.copy()))
    if kind == "vorticity_file":
        raise ValueError(
            "vorticity_file initial data must be loaded by the harness"
        )
    raise ValueError(f"unknown init kind {kind!r}")


def simulate(
    config,
    u0: VelocityField | None = None,
    row_sink: Callable[[SeriesRow], None] | None = None,
    snapshot_hook: Callable[[SolverState], None] | None = None,
) -> EnergySeries:
    """Run a scenario from t = 0 to time.t_end, sampling the energy series.

    ``config`` is any object with the ScenarioConfig attributes (grid_n,
    grid_length, time_dt, time_t_end, time_sample_interval, vortex_alpha,
    vortex_t0, init_*, run_mode, analysis_c0).  ``row_sink`` receives each
    SeriesRow as it is produced; ``snapshot_hook`` receives a SolverState at
    every sample time.  Raises SolverAbort on non-finite coefficients or a
    violated stability bound (dt <= 0.5 * min(dx / sup(|u|+|v|), 1)).
    """
    grid = GridSpec(config.grid_n, config.grid_length)
    mode = config.run_mode
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    dt = float(config.time_dt)
    t_end = float(config.time_t_end)
    if not dt > 0 or not t_end > 0:
        raise ValueError("time.dt and time.t_end must be positive")
    vortex = None
    if mode == "perturbation" and config.vortex_alpha != 0.0:
        vortex = RadialVortexParams(config.vortex_alpha, config.vortex_t0)
    eff_mode, eff_vortex = _effective(mode, vortex)
    c0 = float(config.analysis_c0)

    if u0 is None:
        u0 = initial_velocity(config, grid)
    elif u0.grid != grid:
        raise ValueError("initial velocity grid does not match config grid")

    ws = _Workspace(grid, dt, eff_mode, eff_vortex)
    c1 = ws.pack(dealias(u0.u1))
    c2 = ws.pack(dealias(u0.u2))
    c1, c2 = ws.project(c1, c2)
    c1[0, 0] = 0.0
    c2[0, 0] = 0.0

    n_steps = max(1, int(round(t_end / dt)))
    sample_every = max(1, int(round(float(config.time_sample_interval) / dt)))

    series = EnergySeries()

    def emit(t: float, step_index: int) -> None:
        row = ws.row(c1, c2, t, c0)
        series.append(row)
        if row_sink is not None:
            row_sink(row)
        if snapshot_hook is not None:
            snapshot_hook(
                SolverState(
                    VelocityField(ws.unpack(c1), ws.unpack(c2)),
                    t,
                    dt,
                    mode,
                    vortex,
                )
            )
        sup = ws.speed_sup(c1, c2, t)
        if sup > 0 and dt > 0.5 * min(grid.spacing / sup, 1.0):
            raise SolverAbort(
                f"stability bound violated: dt={dt:.3g} > "
                f"0.5*min(dx/sup|u|+|v|, 1) with sup speed {sup:.3g}",
                t,
                step_index,
            )

    emit(0.0, 0)
    for i in range(n_steps):
        c1, c2 = ws.step(c1, c2, i * dt, i)
        done = i + 1 == n_steps
        if (i + 1) % sample_every == 0 or done:
            emit((i + 1) * dt, i + 1)
    return series
