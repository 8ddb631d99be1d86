"""Periodic-box spectral discretization: transforms, derivatives, projection.

Fields live on an n-by-n grid over [0, L)^2 and are represented by their
full-layout Fourier coefficients, normalized so that

    f(x) = sum_k fhat(k) exp(i k.x),   k = (2*pi/L) * m,  m in [-n/2, n/2),

equivalently ``coeffs = fft2(samples) / n**2``.  With this convention
Parseval reads ``sum |fhat|^2 = (1/L^2) * integral |f|^2 dx``, so the L2
norm over the box is ``L^2 * sum |fhat|^2``.

Modes without a conjugate partner (the Nyquist row and column of an even
grid) cannot carry real-field vector calculus; derivative operators and the
Leray projection treat them as zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "GridSpec",
    "SpectralField",
    "VelocityField",
    "to_physical",
    "from_physical",
    "gradient",
    "curl2d",
    "leray_project",
    "dealias",
    "l2_inner",
    "l2_norm_sq",
    "energy",
    "gradient_norm_sq",
    "divergence_max",
    "lp_norm",
]


@dataclass(frozen=True)
class GridSpec:
    """Square periodic grid: n points per side on a box of side ``length``.

    Powers of two keep the FFTs fast, but any even n >= 8 is accepted.
    ``dealias_fraction`` is the usual 2/3-rule cutoff: after a nonlinear
    product, coefficients with max(|m1|, |m2|) > dealias_fraction * n/2
    are zeroed.
    """

    n: int
    length: float
    dealias_fraction: float = 2.0 / 3.0

    def __post_init__(self) -> None:
        if self.n < 8 or self.n % 2 != 0:
            raise ValueError(f"grid n must be even and >= 8, got {self.n}")
        if not self.length > 0:
            raise ValueError(f"box length must be positive, got {self.length}")
        if not 0 < self.dealias_fraction <= 1:
            raise ValueError(
                f"dealias_fraction must be in (0, 1], got {self.dealias_fraction}"
            )

    @property
    def spacing(self) -> float:
        return self.length / self.n

    @cached_property
    def modes(self) -> np.ndarray:
        """Integer mode numbers in FFT layout: 0..n/2-1, -n/2..-1."""
        return np.fft.fftfreq(self.n, d=1.0 / self.n).astype(np.int64)

    @cached_property
    def kx(self) -> np.ndarray:
        """Wavenumber k1 broadcast over the full (n, n) layout."""
        return (2.0 * np.pi / self.length) * self.modes[:, None].astype(float)

    @cached_property
    def ky(self) -> np.ndarray:
        return (2.0 * np.pi / self.length) * self.modes[None, :].astype(float)

    @cached_property
    def ksq(self) -> np.ndarray:
        return self.kx**2 + self.ky**2

    @cached_property
    def kx_deriv(self) -> np.ndarray:
        """k1 with the Nyquist row zeroed; the sane derivative symbol."""
        k = (2.0 * np.pi / self.length) * self.modes.astype(float)
        k[self.n // 2] = 0.0
        return k[:, None] + np.zeros((1, self.n))

    @cached_property
    def ky_deriv(self) -> np.ndarray:
        k = (2.0 * np.pi / self.length) * self.modes.astype(float)
        k[self.n // 2] = 0.0
        return np.zeros((self.n, 1)) + k[None, :]

    @cached_property
    def nyquist_free(self) -> np.ndarray:
        """Boolean mask of modes whose conjugate partner exists on the grid."""
        m = self.modes
        good = m != -self.n // 2
        return good[:, None] & good[None, :]

    @cached_property
    def dealias_mask(self) -> np.ndarray:
        m = np.abs(self.modes)
        cut = self.dealias_fraction * self.n / 2.0
        keep = m <= cut
        return keep[:, None] & keep[None, :]

    @cached_property
    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Physical sample points (x1, x2), each of shape (n, n)."""
        x = np.arange(self.n) * self.spacing
        return np.meshgrid(x, x, indexing="ij")


@dataclass(frozen=True)
class SpectralField:
    """A real scalar field on the box, held as full-layout coefficients."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        n = self.grid.n
        if self.coeffs.shape != (n, n):
            raise ValueError(
                f"coefficient shape {self.coeffs.shape} does not match grid n={n}"
            )


@dataclass(frozen=True)
class VelocityField:
    """Divergence-free velocity: two spectral components on a shared grid."""

    u1: SpectralField
    u2: SpectralField

    def __post_init__(self) -> None:
        if self.u1.grid != self.u2.grid:
            raise ValueError("velocity components live on different grids")

    @property
    def grid(self) -> GridSpec:
        return self.u1.grid


def to_physical(f: SpectralField) -> np.ndarray:
    """Sample the field on the grid (real part; input assumed Hermitian)."""
    n = f.grid.n
    return np.fft.ifft2(f.coeffs * (n * n)).real


def from_physical(samples: np.ndarray, grid: GridSpec) -> SpectralField:
    if samples.shape != (grid.n, grid.n):
        raise ValueError(
            f"sample shape {samples.shape} does not match grid n={grid.n}"
        )
    coeffs = np.fft.fft2(samples) / (grid.n * grid.n)
    return SpectralField(grid, coeffs)


def gradient(f: SpectralField) -> tuple[SpectralField, SpectralField]:
    """Spectral gradient (i*k1*fhat, i*k2*fhat), Nyquist modes dropped."""
    g = f.grid
    return (
        SpectralField(g, 1j * g.kx_deriv * f.coeffs),
        SpectralField(g, 1j * g.ky_deriv * f.coeffs),
    )


def curl2d(v: VelocityField) -> SpectralField:
    """Scalar curl d1 u2 - d2 u1 of a planar field."""
    g = v.grid
    w = 1j * (g.kx_deriv * v.u2.coeffs - g.ky_deriv * v.u1.coeffs)
    return SpectralField(g, w)


def leray_project(f1: SpectralField, f2: SpectralField) -> VelocityField:
    """Project onto divergence-free fields: uhat = (I - k k^T/|k|^2) fhat.

    The k = 0 mode and the Nyquist modes are set to zero (mean flow is a
    frame choice; Nyquist modes have no conjugate partner).
    """
    if f1.grid != f2.grid:
        raise ValueError("components live on different grids")
    g = f1.grid
    kx, ky = g.kx_deriv, g.ky_deriv
    ksq = kx**2 + ky**2
    inv = np.zeros_like(ksq)
    nz = ksq > 0
    inv[nz] = 1.0 / ksq[nz]
    kdotf = kx * f1.coeffs + ky * f2.coeffs
    p1 = f1.coeffs - kx * kdotf * inv
    p2 = f2.coeffs - ky * kdotf * inv
    scrub = g.nyquist_free
    p1 = np.where(scrub, p1, 0.0)
    p2 = np.where(scrub, p2, 0.0)
    p1[0, 0] = 0.0
    p2[0, 0] = 0.0
    return VelocityField(SpectralField(g, p1), SpectralField(g, p2))


def dealias(f: SpectralField) -> SpectralField:
    return SpectralField(f.grid, np.where(f.grid.dealias_mask, f.coeffs, 0.0))


def l2_inner(f: SpectralField, g: SpectralField) -> float:
    """Box inner product integral(f*g dx) via Parseval."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    s = np.sum(np.conj(f.coeffs) * g.coeffs).real
    return float(f.grid.length**2 * s)


def l2_norm_sq(f: SpectralField) -> float:
    s = np.sum(np.abs(f.coeffs) ** 2)
    return float(f.grid.length**2 * s)


def energy(v: VelocityField) -> float:
    """Kinetic energy ||u||_2^2 over the box."""
    return l2_norm_sq(v.u1) + l2_norm_sq(v.u2)


def gradient_norm_sq(v: VelocityField) -> float:
    """||grad u||_2^2 over the box, summed over both components."""
    g = v.grid
    s = np.sum(g.ksq * (np.abs(v.u1.coeffs) ** 2 + np.abs(v.u2.coeffs) ** 2))
    return float(g.length**2 * s)


def divergence_max(v: VelocityField) -> float:
    """Largest spectral divergence amplitude |k1 u1hat + k2 u2hat|."""
    g = v.grid
    d = g.kx_deriv * v.u1.coeffs + g.ky_deriv * v.u2.coeffs
    return float(np.max(np.abs(d)))


def lp_norm(values: np.ndarray, grid: GridSpec, p: float) -> float:
    """L^p norm of physical samples by grid quadrature; p = inf is the max."""
    if p == np.inf:
        return float(np.max(np.abs(values)))
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    da = grid.spacing**2
    return float((np.sum(np.abs(values) ** p) * da) ** (1.0 / p))
