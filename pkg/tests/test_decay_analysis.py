"""Rate fits, splitting and pressure inequalities, Duhamel and trend checks."""

import math
from types import SimpleNamespace

import numpy as np
import pytest

from nsdecay.decay_analysis import (
    DecayReport,
    LowModeRecorder,
    LowModeTrace,
    apriori_bound_check,
    duhamel_lowmode_check,
    fit_decay_rate,
    format_report,
    fourier_split_check,
    gallay_wayne_check,
    pressure_bound_check,
)
from nsdecay.perturbation_solver import (
    EnergySeries,
    SeriesRow,
    initial_velocity,
    simulate,
)
from nsdecay.spectral_core import GridSpec, SpectralField, VelocityField
from nsdecay.vortex import RadialVortexParams

from conftest import random_velocity


def _series(ts, es):
    s = EnergySeries()
    for t, e in zip(ts, es):
        s.append(SeriesRow(t, e, 0.0, 0.0, 0.0, e, 0.0, 2.0 / (1.0 + t)))
    return s


def test_fit_recovers_exact_power_law():
    ts = np.linspace(1.0, 50.0, 40)
    es = 3.7 * (1.0 + ts) ** (-0.85)
    slope, stderr = fit_decay_rate(_series(ts, es), (1.0, 50.0))
    assert slope == pytest.approx(-0.85, abs=1e-12)
    assert stderr < 1e-10


def test_fit_reports_scatter():
    rng = np.random.default_rng(3)
    ts = np.linspace(1.0, 50.0, 40)
    es = 2.0 * (1.0 + ts) ** (-0.5) * np.exp(rng.normal(0.0, 0.05, ts.size))
    slope, stderr = fit_decay_rate(_series(ts, es), (1.0, 50.0))
    assert abs(-slope - 0.5) < 0.1
    assert stderr > 1e-3


def test_fit_window_validation():
    ts = np.linspace(1.0, 50.0, 40)
    series = _series(ts, np.ones_like(ts))
    with pytest.raises(ValueError):
        fit_decay_rate(series, (5.0, 5.0))
    with pytest.raises(ValueError):
        fit_decay_rate(series, (45.0, 50.0))  # only 5 samples inside
    dead = _series(ts, np.zeros_like(ts))
    with pytest.raises(ValueError):
        fit_decay_rate(dead, (1.0, 50.0))


def _two_shell_field(grid, a, b):
    # u = (a cos(y) + b cos(3y), 0): divergence-free, shells |k| = 1 and 3
    n = grid.n
    c1 = np.zeros((n, n), complex)
    c1[0, 1] = c1[0, n - 1] = a / 2.0
    c1[0, 3] = c1[0, n - 3] = b / 2.0
    z = np.zeros((n, n), complex)
    return VelocityField(SpectralField(grid, c1), SpectralField(grid, z))


def test_split_check_two_shell_arithmetic():
    g = GridSpec(16, 2.0 * np.pi)
    a, b = 0.2, 0.1
    u = _two_shell_field(g, a, b)
    check = fourier_split_check(u, 0.0, 1.0)
    lsq = g.length**2
    # r^2 = 2 at t=0, C0=1: shell 1 is low, shell 3 is high
    assert check.E_low == pytest.approx(lsq * a * a / 2.0, rel=1e-13)
    assert check.E_high == pytest.approx(lsq * b * b / 2.0, rel=1e-13)
    assert check.lhs == pytest.approx(2.0 * lsq * b * b / 2.0, rel=1e-13)
    assert check.rhs == pytest.approx(lsq * (a * a / 2.0 + 9.0 * b * b / 2.0), rel=1e-13)
    assert check.holds


def test_split_check_equality_is_allowed():
    # all energy on the splitting sphere: r^2 E_high equals D exactly
    g = GridSpec(16, 2.0 * np.pi)
    n = g.n
    c1 = np.zeros((n, n), complex)
    c1[0, 2] = c1[0, n - 2] = 0.5
    u = VelocityField(
        SpectralField(g, c1), SpectralField(g, np.zeros((n, n), complex))
    )
    check = fourier_split_check(u, 0.0, 3.0)  # r^2 = 4 = |k|^2
    assert check.E_low == 0.0
    assert check.lhs == pytest.approx(check.rhs, rel=1e-14)
    assert check.holds


def test_split_check_validation():
    g = GridSpec(16, 2.0 * np.pi)
    u = _two_shell_field(g, 1.0, 0.0)
    with pytest.raises(ValueError):
        fourier_split_check(u, 0.0, 0.0)
    with pytest.raises(ValueError):
        fourier_split_check(u, -1.0, 1.0)


def test_apriori_decade_trend():
    ts = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0]
    good = [(1.0 + t) * f for t, f in zip(ts, [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.4])]
    rep = apriori_bound_check(_series(ts, good), 1.0)
    assert rep.passed
    assert rep.constant == pytest.approx(1.0, rel=1e-14)
    assert rep.decade_sups == pytest.approx((1.0, 0.7, 0.4), rel=1e-14)

    bad = [(1.0 + t) * f for t, f in zip(ts, [1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 1.2])]
    rep = apriori_bound_check(_series(ts, bad), 1.0)
    assert not rep.passed
    assert rep.constant == pytest.approx(1.2, rel=1e-14)


def test_apriori_validation():
    series = _series([1.0, 2.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        apriori_bound_check(series, 5.0)
    late = _series([3.0, 4.0], [1.0, 1.0])
    with pytest.raises(ValueError):
        apriori_bound_check(late, 1.0)


def test_pressure_bound_never_violated():
    g = GridSpec(64, 16.0)
    rng = np.random.default_rng(17)
    u = random_velocity(g, rng, scale=0.4)
    for vortex in (None, RadialVortexParams(1.5, 0.05)):
        rep = pressure_bound_check(u, 0.5, vortex)
        assert rep.violations == 0
        assert 0.0 < rep.max_ratio <= 1.0 + 1e-10
    zeros = SpectralField(g, np.zeros((64, 64), complex))
    rep = pressure_bound_check(VelocityField(zeros, zeros), 0.5, None)
    assert rep.violations == 0 and rep.max_ratio == 0.0


def _heat_trace(grid, amp, ksq_val, kvec, times, decay=True):
    ts = np.asarray(times, float)
    factor = np.exp(-ksq_val * ts) if decay else np.ones_like(ts)
    return LowModeTrace(
        ts,
        np.array([kvec]),
        np.array([ksq_val]),
        (amp * factor)[:, None],
        np.zeros((ts.size, 1)),
    )


def test_duhamel_accepts_pure_heat_decay():
    g = GridSpec(16, 16.0)
    k1 = 2.0 * np.pi / 16.0
    u0c = np.zeros((16, 16), complex)
    u0c[1, 0] = 0.7
    u0 = VelocityField(
        SpectralField(g, u0c), SpectralField(g, np.zeros((16, 16), complex))
    )
    trace = _heat_trace(g, 0.7, k1 * k1, (k1, 0.0), np.linspace(0.0, 1.0, 17))
    rep = duhamel_lowmode_check(trace, u0)
    assert rep.passed and rep.violations == 0 and rep.max_deficit == 0.0
    assert rep.n_modes == 1 and rep.n_times == 17


def test_duhamel_flags_undamped_mode():
    g = GridSpec(16, 16.0)
    k1 = 2.0 * np.pi / 16.0
    u0c = np.zeros((16, 16), complex)
    u0c[1, 0] = 0.7
    u0 = VelocityField(
        SpectralField(g, u0c), SpectralField(g, np.zeros((16, 16), complex))
    )
    trace = _heat_trace(
        g, 0.7, k1 * k1, (k1, 0.0), np.linspace(0.0, 1.0, 17), decay=False
    )
    rep = duhamel_lowmode_check(trace, u0)
    assert not rep.passed
    assert rep.violations > 0 and rep.max_deficit > 0.0


def test_duhamel_sampling_validation():
    g = GridSpec(16, 16.0)
    k1 = 2.0 * np.pi / 16.0
    u0c = np.zeros((16, 16), complex)
    u0c[1, 0] = 0.7
    u0 = VelocityField(
        SpectralField(g, u0c), SpectralField(g, np.zeros((16, 16), complex))
    )
    sparse = _heat_trace(g, 0.7, k1 * k1, (k1, 0.0), np.linspace(0.0, 1.0, 9))
    with pytest.raises(ValueError):
        duhamel_lowmode_check(sparse, u0)
    tiny = _heat_trace(g, 0.7, k1 * k1, (k1, 0.0), [0.0, 0.05])
    with pytest.raises(ValueError):
        duhamel_lowmode_check(tiny, u0)


def test_recorder_requires_low_modes():
    with pytest.raises(ValueError):
        LowModeRecorder(GridSpec(16, 4.0))


def test_duhamel_on_live_run():
    # full pipeline: record |u-hat| and the forcing bound during a
    # perturbation run and verify the inequality on every low mode
    cfg = SimpleNamespace(
        grid_n=64,
        grid_length=16.0,
        time_dt=2e-3,
        time_t_end=2.0,
        time_sample_interval=1.0 / 16.0,
        vortex_alpha=0.5,
        vortex_t0=0.01,
        init_kind="prescribed_gamma",
        init_gamma=0.5,
        init_seed=11,
        init_amplitude=0.5,
        run_mode="perturbation",
        analysis_c0=1.0,
    )
    grid = GridSpec(cfg.grid_n, cfg.grid_length)
    recorder = LowModeRecorder(grid)
    u0 = initial_velocity(cfg, grid)
    simulate(cfg, u0=u0, snapshot_hook=recorder)
    trace = recorder.trace()
    rep = duhamel_lowmode_check(trace, u0)
    assert rep.n_modes == 20
    assert rep.violations == 0, f"max deficit {rep.max_deficit}"
    assert rep.passed


def test_gallay_wayne_trend():
    g = GridSpec(16, 2.0 * np.pi)
    rng = np.random.default_rng(23)
    base = random_velocity(g, rng, scale=1.0)
    q = 4.0

    def scaled(t, d):
        c = t ** (-0.5 + 1.0 / q) * d
        return VelocityField(
            SpectralField(g, c * base.u1.coeffs), SpectralField(g, c * base.u2.coeffs)
        )

    ts = [1.0, 2.0, 5.0, 10.0, 20.0, 50.0]
    down = [(t, scaled(t, d)) for t, d in zip(ts, [1.0, 0.9, 0.8, 0.5, 0.4, 0.3])]
    rep = gallay_wayne_check(down, q)
    assert rep.passed
    assert rep.first_decade_mean > rep.last_decade_mean

    up = [(t, scaled(t, d)) for t, d in zip(ts, [0.5, 0.5, 0.5, 0.9, 1.0, 1.1])]
    rep = gallay_wayne_check(up, q)
    assert not rep.passed

    with pytest.raises(ValueError):
        gallay_wayne_check(down, 2.0)
    with pytest.raises(ValueError):
        gallay_wayne_check([], q)
    with pytest.raises(ValueError):
        gallay_wayne_check([(0.0, base)], q)


def test_report_formatting():
    rep = DecayReport(
        gamma_target=0.5,
        gamma_fitted=0.512,
        gamma_stderr=0.01,
        fit_window=(10.0, 100.0),
        apriori_constant=2.5,
        splitting_violations=0,
        C0=1.0,
        pressure_violations=0,
        exact_error=None,
        checks={"splitting": True, "apriori": True, "rate_recovery": True},
    )
    assert rep.passed
    text = format_report(rep)
    lines = text.splitlines()
    assert lines[0] == "gamma_target = 0.5"
    assert "exact_error = none" in lines
    assert lines[-1] == "verdict = pass"
    names = [l.split(" = ")[0] for l in lines if l.startswith("check.")]
    assert names == sorted(names)

    failing = DecayReport(
        gamma_target=None,
        gamma_fitted=float("nan"),
        gamma_stderr=0.0,
        fit_window=(0.0, 0.0),
        apriori_constant=1.0,
        splitting_violations=3,
        C0=1.0,
        pressure_violations=0,
        exact_error=2e-9,
        checks={"splitting": False},
    )
    assert not failing.passed
    text = format_report(failing)
    assert "gamma_target = none" in text
    assert "splitting_violations = 3" in text
    assert text.rstrip().endswith("verdict = fail")
