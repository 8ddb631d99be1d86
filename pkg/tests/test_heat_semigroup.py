"""Heat flow, prescribed-decay initial data, and the exponent estimator."""

import math

import numpy as np
import pytest

import oracles
from nsdecay.heat_semigroup import (
    HeatDecayProfile,
    estimate_heat_exponent,
    heat_evolve,
    heat_evolve_velocity,
    heat_lp_decay_check,
    make_initial_data,
)
from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    divergence_max,
    from_physical,
    l2_norm_sq,
    to_physical,
)

from conftest import random_velocity


def test_evolve_rejects_negative_time():
    g = GridSpec(16, 2.0 * np.pi)
    f = from_physical(np.zeros((16, 16)), g)
    with pytest.raises(ValueError):
        heat_evolve(f, -0.1)


def test_evolve_zero_time_is_identity():
    g = GridSpec(32, 5.0)
    rng = np.random.default_rng(3)
    f = from_physical(rng.standard_normal((32, 32)), g)
    out = heat_evolve(f, 0.0)
    assert np.array_equal(out.coeffs, f.coeffs)


def test_single_mode_decay_matches_exponential():
    # cos(3x) and sin(5y) decay at e^{-9t} and e^{-25t} independently
    n, t = 64, 0.37
    g = GridSpec(n, 2.0 * np.pi)
    x = np.arange(n) * g.spacing
    X, Y = np.meshgrid(x, x, indexing="ij")
    f = from_physical(np.cos(3.0 * X) + np.sin(5.0 * Y), g)
    got = to_physical(heat_evolve(f, t))
    want = math.exp(-9.0 * t) * np.cos(3.0 * X) + math.exp(-25.0 * t) * np.sin(5.0 * Y)
    assert np.max(np.abs(got - want)) < 1e-14


def test_semigroup_property():
    g = GridSpec(48, 7.0)
    rng = np.random.default_rng(11)
    v = random_velocity(g, rng)
    two_steps = heat_evolve_velocity(heat_evolve_velocity(v, 0.2), 0.3)
    one_step = heat_evolve_velocity(v, 0.5)
    scale = np.max(np.abs(one_step.u1.coeffs))
    assert np.max(np.abs(two_steps.u1.coeffs - one_step.u1.coeffs)) < 1e-14 * scale
    assert np.max(np.abs(two_steps.u2.coeffs - one_step.u2.coeffs)) < 1e-14 * scale


def test_gaussian_evolves_to_wider_gaussian():
    # heat flow maps the radial Gaussian at core time T to the one at T + t
    n, length, alpha, core, t = 192, 48.0, 3.0, 1.0, 2.5
    g = GridSpec(n, length)
    f0 = from_physical(oracles.gaussian_vorticity_samples(n, length, alpha, core), g)
    got = to_physical(heat_evolve(f0, t))
    want = oracles.gaussian_vorticity_samples(n, length, alpha, core + t)
    assert np.max(np.abs(got - want)) < 1e-12 * np.max(np.abs(want))


def test_velocity_evolve_matches_componentwise():
    g = GridSpec(32, 9.0)
    rng = np.random.default_rng(5)
    v = random_velocity(g, rng)
    out = heat_evolve_velocity(v, 0.8)
    assert np.array_equal(out.u1.coeffs, heat_evolve(v.u1, 0.8).coeffs)
    assert np.array_equal(out.u2.coeffs, heat_evolve(v.u2, 0.8).coeffs)


def test_initial_data_norm_and_divergence():
    g = GridSpec(64, 64.0)
    u0 = make_initial_data(0.6, g, seed=2, amplitude=2.5)
    norm = math.sqrt(l2_norm_sq(u0.u1) + l2_norm_sq(u0.u2))
    assert abs(norm - 2.5) < 1e-12
    assert divergence_max(u0) < 1e-12


def test_initial_data_spectral_support():
    g = GridSpec(64, 64.0)
    u0 = make_initial_data(0.5, g, seed=9)
    kk = np.sqrt(g.ksq)
    outside = (kk == 0) | (kk > 1.0) | ~g.nyquist_free
    assert np.all(u0.u1.coeffs[outside] == 0)
    assert np.all(u0.u2.coeffs[outside] == 0)
    inside = ~outside
    amp = np.abs(u0.u1.coeffs[inside]) ** 2 + np.abs(u0.u2.coeffs[inside]) ** 2
    assert np.all(amp > 0)


def test_initial_data_envelope_ratio():
    # per-mode speed is A |k|^{gamma-1}, so squared amplitudes at |m|=1 and
    # |m|=5 differ by a factor |k| ratio to the 2(gamma-1) = 5 for gamma = 1/2
    g = GridSpec(64, 64.0)
    u0 = make_initial_data(0.5, g, seed=9)
    amp = np.abs(u0.u1.coeffs) ** 2 + np.abs(u0.u2.coeffs) ** 2
    ratio = amp[1, 0] / amp[3, 4]
    assert abs(ratio - 5.0) < 1e-10 * 5.0


def test_initial_data_hermitian():
    g = GridSpec(64, 64.0)
    u0 = make_initial_data(0.8, g, seed=4)
    idx = (-np.arange(g.n)) % g.n
    for c in (u0.u1.coeffs, u0.u2.coeffs):
        assert np.allclose(c[np.ix_(idx, idx)], np.conj(c), atol=1e-15)


def test_initial_data_deterministic():
    g = GridSpec(64, 64.0)
    a = make_initial_data(0.5, g, seed=123)
    b = make_initial_data(0.5, g, seed=123)
    c = make_initial_data(0.5, g, seed=124)
    assert np.array_equal(a.u1.coeffs, b.u1.coeffs)
    assert np.array_equal(a.u2.coeffs, b.u2.coeffs)
    assert not np.array_equal(a.u1.coeffs, c.u1.coeffs)


def test_initial_data_validation():
    g = GridSpec(64, 64.0)
    for bad_gamma in (0.0, -0.5, 1.2):
        with pytest.raises(ValueError):
            make_initial_data(bad_gamma, g, seed=0)
    with pytest.raises(ValueError):
        make_initial_data(0.5, g, seed=0, amplitude=0.0)
    # box of side 4: smallest nonzero |k| is pi/2 > 1, so no admissible modes
    with pytest.raises(ValueError):
        make_initial_data(0.5, GridSpec(8, 4.0), seed=0)


def test_exponent_matches_direct_lattice_sum():
    g = GridSpec(256, 256.0)
    expected = {0.5: 0.623272926017353, 1.0: 1.05090080459944}
    for gamma, frozen in expected.items():
        u0 = make_initial_data(gamma, g, seed=7)
        prof = estimate_heat_exponent(u0, (10.0, 200.0))
        for t, e in prof.samples:
            direct = oracles.heat_energy_direct(
                u0.u1.coeffs, u0.u2.coeffs, g.n, g.length, t
            )
            assert abs(e - direct) < 1e-12 * direct
        ts = [t for t, _ in prof.samples]
        es = [e for _, e in prof.samples]
        assert abs(prof.raw_slope - oracles.fit_power_law(ts, es)) < 1e-10
        assert prof.gamma == pytest.approx(frozen, abs=1e-6)
        assert abs(prof.gamma - gamma) < 0.15


def test_exponent_window_validation():
    g = GridSpec(64, 64.0)
    u0 = make_initial_data(0.5, g, seed=1)
    t_valid = (g.length / (2.0 * np.pi)) ** 2 / 4.0
    with pytest.raises(ValueError):
        estimate_heat_exponent(u0, (1.0, t_valid + 1.0))
    with pytest.raises(ValueError):
        estimate_heat_exponent(u0, (0.0, 5.0))
    with pytest.raises(ValueError):
        estimate_heat_exponent(u0, (5.0, 2.0))
    with pytest.raises(ValueError):
        estimate_heat_exponent(u0, (1.0, 5.0), n_samples=7)
    zeros = SpectralField(g, np.zeros((g.n, g.n), dtype=complex))
    with pytest.raises(ValueError):
        estimate_heat_exponent(VelocityField(zeros, zeros), (1.0, 5.0))


def test_profile_rejects_negative_energy():
    with pytest.raises(ValueError):
        HeatDecayProfile(0.5, ((1.0, -1.0),), (1.0, 2.0), -0.5, 0.0)


def _dipole_field(grid):
    w = oracles.gaussian_vorticity_samples(
        grid.n, grid.length, 3.0, 1.0, center=(21.0, 24.0)
    ) - oracles.gaussian_vorticity_samples(
        grid.n, grid.length, 3.0, 1.0, center=(27.0, 24.0)
    )
    return from_physical(w, grid)


def test_lp_decay_check_mean_zero_passes():
    g = GridSpec(192, 48.0)
    times = list(np.geomspace(1.0, 10.0, 9))
    report = heat_lp_decay_check(_dipole_field(g), 2.0, times)
    assert report.passed
    assert report.sup == max(v for _, v in report.weighted)
    # reversed input must give the same time-ordered samples
    again = heat_lp_decay_check(_dipole_field(g), 2.0, times[::-1])
    assert again.weighted == report.weighted


def test_lp_decay_check_flags_growth():
    # a single vortex core still carries net circulation: the weighted L^2
    # norm climbs through the early window and the check must say so
    g = GridSpec(192, 48.0)
    f = from_physical(oracles.gaussian_vorticity_samples(192, 48.0, 3.0, 1.0), g)
    report = heat_lp_decay_check(f, 2.0, list(np.geomspace(0.05, 5.0, 9)))
    assert not report.passed
    report_inf = heat_lp_decay_check(f, np.inf, list(np.geomspace(1.0, 10.0, 9)))
    assert not report_inf.passed


def test_lp_decay_check_validation():
    g = GridSpec(192, 48.0)
    f = _dipole_field(g)
    with pytest.raises(ValueError):
        heat_lp_decay_check(f, 2.0, [])
    with pytest.raises(ValueError):
        heat_lp_decay_check(f, 0.5, [1.0])
    with pytest.raises(ValueError):
        heat_lp_decay_check(f, 2.0, [0.0, 1.0])
