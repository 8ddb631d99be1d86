"""Exact heat flow in spectral space and prescribed-decay initial data.

The heat semigroup is diagonal on Fourier modes, so evolution is exact:
each coefficient picks up e^{-|k|^2 t}.  That exactness is what makes the
decay-exponent machinery trustworthy: for data built here, the heat energy

    E(t) = L^2 * sum_k |u0hat(k)|^2 e^{-2|k|^2 t}

is a deterministic lattice sum, and fitting log E against log(1+t) recovers
the exponent the spectral envelope was designed for.

On a periodic box the algebraic decay window is finite: once e^{-2 k_min^2 t}
dominates, every spectrum decays like its lowest shell.  Exponent fits must
therefore stay well inside t < (L/2pi)^2 / 4, which the estimator enforces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    l2_norm_sq,
    lp_norm,
    to_physical,
)

__all__ = [
    "HeatDecayProfile",
    "HeatLpReport",
    "heat_evolve",
    "heat_evolve_velocity",
    "heat_lp_decay_check",
    "make_initial_data",
    "estimate_heat_exponent",
]


@dataclass(frozen=True)
class HeatDecayProfile:
    """Fitted heat-decay exponent with the samples that produced it.

    ``gamma`` is the fitted exponent clamped to [0, 1.5]; ``raw_slope`` keeps
    the unclamped least-squares slope of log E vs log(1+t) (negative for
    decaying energy) so non-algebraic data is still visible.
    """

    gamma: float
    samples: tuple[tuple[float, float], ...]
    fit_window: tuple[float, float]
    raw_slope: float
    stderr: float

    def __post_init__(self) -> None:
        energies = [e for _, e in self.samples]
        if any(e < 0 for e in energies):
            raise ValueError("heat energies must be nonnegative")


@dataclass(frozen=True)
class HeatLpReport:
    """Weighted L^p decay samples t^{1-1/p} ||e^{dt} w||_p and a verdict."""

    p: float
    weighted: tuple[tuple[float, float], ...]
    sup: float
    passed: bool


def heat_evolve(f: SpectralField, t: float) -> SpectralField:
    """Apply e^{t Laplacian}: multiply each mode by e^{-|k|^2 t}."""
    if t < 0:
        raise ValueError(f"heat evolution needs t >= 0, got {t}")
    return SpectralField(f.grid, f.coeffs * np.exp(-f.grid.ksq * t))


def heat_evolve_velocity(v: VelocityField, t: float) -> VelocityField:
    return VelocityField(heat_evolve(v.u1, t), heat_evolve(v.u2, t))


def heat_lp_decay_check(
    omega0: SpectralField, p: float, times: list[float]
) -> HeatLpReport:
    """Track t^{1-1/p} ||e^{t Laplacian} omega0||_p over the given times.

    The weighted norm must stabilize or decrease: the report fails if the
    max over the later half of the samples exceeds the max over the earlier
    half by more than 10%.
    """
    if len(times) == 0:
        raise ValueError("need at least one sample time")
    if p < 1:
        raise ValueError(f"p must be in [1, inf], got {p}")
    ts = sorted(float(t) for t in times)
    if ts[0] <= 0:
        raise ValueError("sample times must be positive")
    inv_p = 0.0 if p == np.inf else 1.0 / p
    weighted = []
    for t in ts:
        w = to_physical(heat_evolve(omega0, t))
        weighted.append((t, t ** (1.0 - inv_p) * lp_norm(w, omega0.grid, p)))
    vals = np.array([v for _, v in weighted])
    half = max(1, len(vals) // 2)
    passed = bool(np.max(vals[half:], initial=0.0) <= 1.1 * np.max(vals[:half]))
    return HeatLpReport(p, tuple(weighted), float(np.max(vals)), passed)


def make_initial_data(
    gamma: float, grid: GridSpec, seed: int, amplitude: float = 1.0
) -> VelocityField:
    """Random divergence-free data whose heat energy decays like (1+t)^-gamma.

    Spectral envelope |u0hat(k)| = A |k|^{gamma-1} on 0 < |k| <= 1 with
    Hermitian unit-modulus random phases; realized as i k-perp psi-hat so the
    result is divergence-free by construction.  A is chosen to make
    ||u0||_{L2} = amplitude.  Deterministic given the seed.
    """
    if not 0 < gamma <= 1:
        raise ValueError(f"gamma must be in (0, 1], got {gamma}")
    if not amplitude > 0:
        raise ValueError(f"amplitude must be positive, got {amplitude}")
    n = grid.n
    rng = np.random.default_rng(seed)
    white = np.fft.fft2(rng.standard_normal((n, n)))
    mag = np.abs(white)
    phase = np.where(mag > 0, white / np.where(mag > 0, mag, 1.0), 1.0)

    kk = np.sqrt(grid.ksq)
    active = (kk > 0) & (kk <= 1.0) & grid.nyquist_free
    envelope = np.zeros_like(kk)
    envelope[active] = kk[active] ** (gamma - 1.0)
    if not np.any(active):
        raise ValueError(
            "no Fourier modes with 0 < |k| <= 1; box too small for this grid"
        )

    # stream function psi-hat = envelope/|k| * phase, then u = i k-perp psi
    psi = np.zeros_like(phase)
    psi[active] = envelope[active] / kk[active] * phase[active]
    c1 = -1j * grid.ky_deriv * psi
    c2 = 1j * grid.kx_deriv * psi

    raw = float(grid.length**2 * np.sum(np.abs(c1) ** 2 + np.abs(c2) ** 2))
    scale = amplitude / math.sqrt(raw)
    return VelocityField(
        SpectralField(grid, c1 * scale), SpectralField(grid, c2 * scale)
    )


def _heat_energy_samples(u0: VelocityField, ts: np.ndarray) -> np.ndarray:
    g = u0.grid
    w = (np.abs(u0.u1.coeffs) ** 2 + np.abs(u0.u2.coeffs) ** 2).ravel()
    nz = w > 0
    w = w[nz]
    ksq = g.ksq.ravel()[nz]
    return g.length**2 * np.array(
        [np.sum(w * np.exp(-2.0 * ksq * t)) for t in ts]
    )


def estimate_heat_exponent(
    u0: VelocityField, window: tuple[float, float], n_samples: int = 24
) -> HeatDecayProfile:
    """Fit the algebraic heat-decay exponent of u0 over the given window.

    Samples ||e^{t Laplacian} u0||_2^2 at log(1+t)-spaced times and returns
    the least-squares slope of log E against log(1+t).  The window must sit
    inside the box-validity range t < (L/2pi)^2 / 4.
    """
    t_min, t_max = window
    g = u0.grid
    t_valid = (g.length / (2.0 * np.pi)) ** 2 / 4.0
    if not 0 < t_min < t_max:
        raise ValueError(f"bad fit window {window}")
    if t_max >= t_valid:
        raise ValueError(
            f"fit window end {t_max} outside box validity t < {t_valid:.3g}"
        )
    if n_samples < 8:
        raise ValueError(f"need at least 8 samples, got {n_samples}")

    ts = np.geomspace(1.0 + t_min, 1.0 + t_max, n_samples) - 1.0
    energies = _heat_energy_samples(u0, ts)
    if np.max(energies, initial=0.0) <= 0:
        raise ValueError("zero field: no decay exponent to estimate")

    x = np.log1p(ts)
    y = np.log(energies)
    design = np.vstack([x, np.ones_like(x)]).T
    sol, residuals, _, _ = np.linalg.lstsq(design, y, rcond=None)
    slope = float(sol[0])
    dof = len(ts) - 2
    if dof > 0 and residuals.size:
        sigma_sq = float(residuals[0]) / dof
        xtx_inv = np.linalg.inv(design.T @ design)
        stderr = math.sqrt(max(sigma_sq * xtx_inv[0, 0], 0.0))
    else:
        stderr = 0.0
    gamma = float(np.clip(-slope, 0.0, 1.5))
    samples = tuple((float(t), float(e)) for t, e in zip(ts, energies))
    return HeatDecayProfile(gamma, samples, (t_min, t_max), slope, stderr)
