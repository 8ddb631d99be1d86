import numpy as np
import pytest

from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    curl2d,
    dealias,
    divergence_max,
    from_physical,
    gradient,
    gradient_norm_sq,
    l2_inner,
    l2_norm_sq,
    leray_project,
    lp_norm,
    to_physical,
)
from conftest import random_velocity


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(n=7, length=1.0)
    with pytest.raises(ValueError):
        GridSpec(n=6, length=1.0)
    with pytest.raises(ValueError):
        GridSpec(n=16, length=0.0)
    with pytest.raises(ValueError):
        GridSpec(n=16, length=4.0, dealias_fraction=1.5)


def test_wavenumber_layout():
    g = GridSpec(n=8, length=4.0)
    assert list(g.modes) == [0, 1, 2, 3, -4, -3, -2, -1]
    np.testing.assert_allclose(g.kx[:, 0], (2 * np.pi / 4.0) * g.modes)
    # derivative wavenumbers drop the unpaired Nyquist line
    assert g.kx_deriv[4, 0] == 0.0
    assert g.ky_deriv[0, 4] == 0.0
    assert g.kx_deriv[3, 0] != 0.0


def test_constant_field_is_dc_mode():
    g = GridSpec(n=16, length=2.0)
    f = from_physical(np.ones((16, 16)), g)
    assert abs(f.coeffs[0, 0] - 1.0) < 1e-14
    rest = np.abs(f.coeffs).sum() - abs(f.coeffs[0, 0])
    assert rest < 1e-13


def test_cosine_splits_into_conjugate_pair():
    g = GridSpec(n=16, length=8.0)
    x, _ = g.coordinates
    f = from_physical(np.cos(2 * np.pi * x / g.length), g)
    assert abs(f.coeffs[1, 0] - 0.5) < 1e-14
    assert abs(f.coeffs[-1, 0] - 0.5) < 1e-14


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_round_trip_and_parseval(seed):
    g = GridSpec(n=64, length=5.0)
    w = np.random.default_rng(seed).standard_normal((64, 64))
    f = from_physical(w, g)
    back = to_physical(f)
    assert np.max(np.abs(back - w)) <= 1e-12 * np.max(np.abs(w))
    # Parseval: sum |fhat|^2 = (1/L^2) int |f|^2
    lhs = np.sum(np.abs(f.coeffs) ** 2)
    rhs = np.sum(w**2) * g.spacing**2 / g.length**2
    assert abs(lhs - rhs) <= 1e-10 * rhs


def test_gradient_single_mode():
    g = GridSpec(n=32, length=2 * np.pi)
    x, _ = g.coordinates
    fx, fy = gradient(from_physical(np.sin(x), g))
    assert np.max(np.abs(to_physical(fx) - np.cos(x))) < 1e-12
    assert np.max(np.abs(to_physical(fy))) < 1e-13


def test_gradient_matches_finite_differences(rng):
    # fixed band-limited field sampled on two grids: the centered-difference
    # error must shrink like h^2 while the spectral derivative is exact
    amps = rng.standard_normal((8, 2))

    def field(x, y):
        out = np.zeros_like(x)
        for j, (a, b) in enumerate(amps, start=1):
            out += a * np.cos(2 * np.pi * j * x / 3.0) + b * np.sin(
                2 * np.pi * j * (x + y) / 3.0
            )
        return out

    errs = []
    for n in (256, 512):
        g = GridSpec(n=n, length=3.0)
        x, y = g.coordinates
        w = field(x, y)
        fx, _ = gradient(from_physical(w, g))
        fd = (np.roll(w, -1, axis=0) - np.roll(w, 1, axis=0)) / (2 * g.spacing)
        errs.append(np.max(np.abs(to_physical(fx) - fd)))
    assert errs[0] / errs[1] > 3.5  # ~4 for clean O(h^2)


def test_curl_of_azimuthal_mode():
    g = GridSpec(n=32, length=2 * np.pi)
    x, _ = g.coordinates
    u = VelocityField(
        from_physical(np.zeros_like(x), g), from_physical(-np.cos(x), g)
    )
    w = to_physical(curl2d(u))
    assert np.max(np.abs(w - np.sin(x))) < 1e-12


def test_curl_of_gradient_vanishes(rng):
    g = GridSpec(n=48, length=7.0)
    phi = from_physical(rng.standard_normal((48, 48)), g)
    gx, gy = gradient(phi)
    w = curl2d(VelocityField(gx, gy))
    assert np.max(np.abs(w.coeffs)) < 1e-12 * np.max(np.abs(phi.coeffs))


def test_leray_annihilates_gradients(rng):
    g = GridSpec(n=32, length=5.0)
    phi = dealias(from_physical(rng.standard_normal((32, 32)), g))
    gx, gy = gradient(phi)
    proj = leray_project(gx, gy)
    scale = max(np.max(np.abs(gx.coeffs)), 1e-30)
    assert np.max(np.abs(proj.u1.coeffs)) < 1e-12 * scale
    assert np.max(np.abs(proj.u2.coeffs)) < 1e-12 * scale


def test_leray_idempotent_and_divergence_free(rng):
    g = GridSpec(n=64, length=9.0)
    c1 = from_physical(rng.standard_normal((64, 64)), g)
    c2 = from_physical(rng.standard_normal((64, 64)), g)
    once = leray_project(c1, c2)
    twice = leray_project(once.u1, once.u2)
    assert divergence_max(once) <= 1e-12
    for a, b in ((once.u1, twice.u1), (once.u2, twice.u2)):
        assert np.max(np.abs(a.coeffs - b.coeffs)) < 1e-14
    assert abs(once.u1.coeffs[0, 0]) == 0.0


def test_leray_keeps_divergence_free_fields(rng):
    g = GridSpec(n=32, length=5.0)
    u = random_velocity(g, rng)
    again = leray_project(u.u1, u.u2)
    scale = np.max(np.abs(u.u1.coeffs)) + np.max(np.abs(u.u2.coeffs))
    assert np.max(np.abs(again.u1.coeffs - u.u1.coeffs)) < 1e-12 * scale
    assert np.max(np.abs(again.u2.coeffs - u.u2.coeffs)) < 1e-12 * scale


def test_leray_self_adjoint(rng):
    g = GridSpec(n=32, length=5.0)
    a1 = from_physical(rng.standard_normal((32, 32)), g)
    a2 = from_physical(rng.standard_normal((32, 32)), g)
    b1 = from_physical(rng.standard_normal((32, 32)), g)
    b2 = from_physical(rng.standard_normal((32, 32)), g)
    pa = leray_project(a1, a2)
    pb = leray_project(b1, b2)
    lhs = l2_inner(pa.u1, b1) + l2_inner(pa.u2, b2)
    rhs = l2_inner(a1, pb.u1) + l2_inner(a2, pb.u2)
    assert abs(lhs - rhs) <= 1e-10 * max(abs(lhs), abs(rhs), 1e-30)


def test_dealias_cutoff_pattern():
    g = GridSpec(n=12, length=2 * np.pi)  # cutoff at 2/3 * 6 = 4
    c = np.ones((12, 12), complex)
    out = dealias(SpectralField(g, c)).coeffs
    m = g.modes
    keep = (np.abs(m)[:, None] <= 4) & (np.abs(m)[None, :] <= 4)
    assert np.array_equal(out != 0, keep)
    # a field already inside the cutoff is untouched
    low = np.where(keep, c, 0.0)
    again = dealias(SpectralField(g, low)).coeffs
    assert np.array_equal(again, low)


def test_dealiased_product_is_exact():
    # cos(a x) cos(b x) = (cos((a+b)x) + cos((a-b)x)) / 2, all modes resolved
    g = GridSpec(n=32, length=2 * np.pi)
    x, _ = g.coordinates
    p = to_physical(dealias(from_physical(np.cos(3 * x), g)))
    q = to_physical(dealias(from_physical(np.cos(5 * x), g)))
    prod = from_physical(p * q, g)
    exact = 0.5 * (np.cos(8 * x) + np.cos(2 * x))
    assert np.max(np.abs(to_physical(prod) - exact)) < 1e-13


def test_norms_on_known_fields():
    g = GridSpec(n=64, length=2 * np.pi)
    x, _ = g.coordinates
    f = from_physical(np.sin(x), g)
    zero = from_physical(np.zeros_like(x), g)
    # ||sin||_2^2 = L^2/2 on the box, |sin| sup = 1
    assert abs(l2_norm_sq(f) - g.length**2 / 2) < 1e-10
    assert abs(gradient_norm_sq(VelocityField(f, zero)) - g.length**2 / 2) < 1e-10
    vals = np.abs(to_physical(f))
    assert abs(lp_norm(vals, g, np.inf) - 1.0) < 1e-12
    # ||sin||_4^4 = (3/8) L^2
    assert abs(lp_norm(vals, g, 4.0) ** 4 - 0.375 * g.length**2) < 1e-8


def test_hermitian_symmetry_preserved(rng):
    g = GridSpec(n=24, length=3.0)
    f = dealias(from_physical(rng.standard_normal((24, 24)), g))
    gx, gy = gradient(f)
    for fld in (f, gx, gy):
        phys = to_physical(fld)
        back = from_physical(phys, g)
        assert np.max(np.abs(back.coeffs - fld.coeffs)) < 1e-13


def test_shape_mismatch_rejected():
    g = GridSpec(n=16, length=1.0)
    with pytest.raises(ValueError):
        SpectralField(g, np.zeros((8, 8), complex))
    with pytest.raises(ValueError):
        from_physical(np.zeros((8, 8)), g)
