"""Scenario configs, runs, sweeps, persistence, and the command line.

Everything user-facing lives here: the flat ``section.key = value`` config
format, the vorticity-file format (``n,length`` header + n^2 reals), CSV and
report writers, and the four subcommands (simulate, sweep, decompose,
check-heat).  Numbers are written with 17 significant digits so output
round-trips double precision and byte-identical reruns are possible.

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or config error,
3 numerical abort.
"""

from __future__ import annotations

import argparse
import hashlib
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    dealias,
    from_physical,
    l2_norm_sq,
)
from nsdecay.heat_semigroup import estimate_heat_exponent, make_initial_data
from nsdecay.vortex import RadialVortexParams, biot_savart_spectral
from nsdecay.decomposition import far_field_exponent, radial_energy_decompose
from nsdecay.perturbation_solver import (
    EnergySeries,
    SeriesRow,
    SolverAbort,
    SolverState,
    initial_velocity,
    simulate,
)
from nsdecay.decay_analysis import (
    DecayReport,
    SplitCheck,
    apriori_bound_check,
    fit_decay_rate,
    format_report,
    pressure_bound_check,
)

__all__ = [
    "ScenarioConfig",
    "parse_config",
    "serialize_config",
    "config_hash",
    "read_vorticity_file",
    "write_vorticity_file",
    "run_scenario",
    "run_sweep",
    "main",
]

_MODES = ("perturbation", "navier_stokes", "heat")
_KINDS = ("prescribed_gamma", "vorticity_file", "taylor_green", "zero")

# (config key, attribute, type); serialization follows this order
_KEYS: tuple[tuple[str, str, type], ...] = (
    ("grid.n", "grid_n", int),
    ("grid.length", "grid_length", float),
    ("time.dt", "time_dt", float),
    ("time.t_end", "time_t_end", float),
    ("time.sample_interval", "time_sample_interval", float),
    ("time.t0", "time_t0", float),
    ("vortex.alpha", "vortex_alpha", float),
    ("vortex.t0", "vortex_t0", float),
    ("init.kind", "init_kind", str),
    ("init.gamma", "init_gamma", float),
    ("init.seed", "init_seed", int),
    ("init.amplitude", "init_amplitude", float),
    ("init.vorticity_file", "init_vorticity_file", str),
    ("run.mode", "run_mode", str),
    ("fit.t_min", "fit_t_min", float),
    ("fit.t_max", "fit_t_max", float),
    ("analysis.C0", "analysis_c0", float),
    ("analysis.q", "analysis_q", float),
    ("output.dir", "output_dir", str),
)


@dataclass(frozen=True)
class ScenarioConfig:
    """One fully resolved scenario; every field has a concrete value.

    fit_t_min/fit_t_max of 0 mean "unset" in a parsed file and are replaced
    by the default window [10, min(100, 0.5 (L/2pi)^2)] clamped into
    [time.t0, time.t_end].
    """

    grid_n: int = 256
    grid_length: float = 64.0
    time_dt: float = 2e-3
    time_t_end: float = 100.0
    time_sample_interval: float = 0.5
    time_t0: float = 1.0
    vortex_alpha: float = 1.0
    vortex_t0: float = 0.01
    init_kind: str = "prescribed_gamma"
    init_gamma: float = 1.0
    init_seed: int = 0
    init_amplitude: float = 1.0
    init_vorticity_file: str = ""
    run_mode: str = "perturbation"
    fit_t_min: float = 0.0
    fit_t_max: float = 0.0
    analysis_c0: float = 1.0
    analysis_q: float = 4.0
    output_dir: str = "."


def _default_fit_window(cfg: ScenarioConfig) -> tuple[float, float]:
    box_cap = 0.5 * (cfg.grid_length / (2.0 * math.pi)) ** 2
    hi = min(cfg.time_t_end, 100.0, box_cap)
    lo = max(cfg.time_t0, min(10.0, 0.5 * cfg.time_t_end))
    if not lo < hi:
        lo, hi = cfg.time_t0, cfg.time_t_end
    return lo, hi


def _validate(cfg: ScenarioConfig) -> ScenarioConfig:
    def bad(key: str, why: str):
        return ValueError(f"invalid {key}: {why}")

    if cfg.grid_n < 8 or cfg.grid_n % 2:
        raise bad("grid.n", f"must be even and >= 8, got {cfg.grid_n}")
    if not cfg.grid_length > 0:
        raise bad("grid.length", f"must be positive, got {cfg.grid_length}")
    for key, attr in (
        ("time.dt", "time_dt"),
        ("time.t_end", "time_t_end"),
        ("time.sample_interval", "time_sample_interval"),
        ("time.t0", "time_t0"),
        ("vortex.t0", "vortex_t0"),
        ("init.amplitude", "init_amplitude"),
        ("analysis.C0", "analysis_c0"),
    ):
        if not getattr(cfg, attr) > 0:
            raise bad(key, f"must be positive, got {getattr(cfg, attr)}")
    if not math.isfinite(cfg.vortex_alpha):
        raise bad("vortex.alpha", "must be finite")
    if cfg.init_kind not in _KINDS:
        raise bad("init.kind", f"must be one of {_KINDS}, got {cfg.init_kind!r}")
    if cfg.run_mode not in _MODES:
        raise bad("run.mode", f"must be one of {_MODES}, got {cfg.run_mode!r}")
    if cfg.init_kind == "prescribed_gamma" and not 0.0 < cfg.init_gamma <= 1.0:
        raise bad("init.gamma", f"must be in (0, 1], got {cfg.init_gamma}")
    if cfg.init_seed < 0:
        raise bad("init.seed", f"must be nonnegative, got {cfg.init_seed}")
    if cfg.init_kind == "vorticity_file" and not cfg.init_vorticity_file:
        raise bad("init.vorticity_file", "required when init.kind = vorticity_file")
    if not cfg.analysis_q > 2:
        raise bad("analysis.q", f"must exceed 2, got {cfg.analysis_q}")
    if not cfg.time_t0 <= cfg.time_t_end:
        raise bad("time.t0", "must not exceed time.t_end")
    if not cfg.output_dir:
        raise bad("output.dir", "must be nonempty")

    if cfg.fit_t_min == 0.0 and cfg.fit_t_max == 0.0:
        lo, hi = _default_fit_window(cfg)
        cfg = replace(cfg, fit_t_min=lo, fit_t_max=hi)
    if not cfg.fit_t_min < cfg.fit_t_max:
        raise bad("fit.t_min", f"window [{cfg.fit_t_min}, {cfg.fit_t_max}] is empty")
    if cfg.fit_t_min < cfg.time_t0 or cfg.fit_t_max > cfg.time_t_end:
        raise bad(
            "fit.t_min",
            f"window [{cfg.fit_t_min}, {cfg.fit_t_max}] must lie inside "
            f"[{cfg.time_t0}, {cfg.time_t_end}]",
        )
    return cfg


def parse_config(text: str) -> ScenarioConfig:
    """Parse ``section.key = value`` lines into a validated config.

    ``#`` starts a comment; blank lines are skipped; unknown or repeated
    keys are errors with their line number.
    """
    by_key = {key: (attr, typ) for key, attr, typ in _KEYS}
    seen: dict[str, int] = {}
    values: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'section.key = value'")
        key, _, val = line.partition("=")
        key, val = key.strip(), val.strip()
        if key not in by_key:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in seen:
            raise ValueError(
                f"line {lineno}: duplicate key {key!r} (first on line {seen[key]})"
            )
        seen[key] = lineno
        attr, typ = by_key[key]
        if typ is str:
            values[attr] = val
        else:
            try:
                values[attr] = typ(val) if typ is not int else int(val, 10)
            except ValueError:
                raise ValueError(
                    f"line {lineno}: cannot parse {val!r} as {typ.__name__} "
                    f"for {key}"
                ) from None
    return _validate(ScenarioConfig(**values))


def serialize_config(cfg: ScenarioConfig) -> str:
    """Canonical text form; parse(serialize(c)) == c."""
    lines = []
    for key, attr, typ in _KEYS:
        v = getattr(cfg, attr)
        if typ is float:
            lines.append(f"{key} = {v:.17g}")
        else:
            lines.append(f"{key} = {v}")
    return "\n".join(lines) + "\n"


def config_hash(cfg: ScenarioConfig) -> str:
    """Scenario identifier: 12 hex chars over every field except output.dir.

    Where the artifacts land (output.dir, or the NSDECAY_OUTPUT_DIR
    override) is environmental and must not change the identity of a run.
    """
    canon = serialize_config(replace(cfg, output_dir="."))
    return hashlib.sha256(canon.encode()).hexdigest()[:12]


def read_vorticity_file(path: str | Path) -> tuple[np.ndarray, GridSpec]:
    """Load `n,length` header + n^2 reals; returns (samples, grid)."""
    text = Path(path).read_text()
    head, _, body = text.partition("\n")
    parts = head.split(",")
    if len(parts) != 2:
        raise ValueError(f"{path}: header must be 'n,length', got {head!r}")
    n = int(parts[0])
    length = float(parts[1])
    vals = np.array(body.split(), dtype=float)
    if vals.size != n * n:
        raise ValueError(f"{path}: expected {n * n} values, found {vals.size}")
    return vals.reshape(n, n), GridSpec(n=n, length=length)


def write_vorticity_file(path: str | Path, samples: np.ndarray, grid: GridSpec):
    if samples.shape != (grid.n, grid.n):
        raise ValueError(f"samples shape {samples.shape} != grid {grid.n}")
    rows = [f"{grid.n},{grid.length:.17g}"]
    for row in samples:
        rows.append(" ".join(f"{v:.17g}" for v in row))
    Path(path).write_text("\n".join(rows) + "\n")


def _resolve_outdir(cfg: ScenarioConfig) -> Path:
    override = os.environ.get("NSDECAY_OUTPUT_DIR")
    out = Path(override) if override else Path(cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _initial_data(cfg: ScenarioConfig, grid: GridSpec) -> VelocityField | None:
    """Harness-side initial data; file-based kinds are resolved here."""
    if cfg.init_kind != "vorticity_file":
        return None  # solver constructs it
    samples, fgrid = read_vorticity_file(cfg.init_vorticity_file)
    if (fgrid.n, fgrid.length) != (grid.n, grid.length):
        raise ValueError(
            f"vorticity file grid {fgrid.n}x{fgrid.n}, L={fgrid.length} does not "
            f"match config grid {grid.n}x{grid.n}, L={grid.length}"
        )
    omega = dealias(from_physical(samples, grid))
    return biot_savart_spectral(omega)


_FMT = "%.17g"


def _series_line(row: SeriesRow) -> str:
    vals = (row.t, row.E, row.D, row.Tv, row.v_inf, row.E_low, row.E_high, row.r2)
    return ",".join(_FMT % v for v in vals)


def _emit_indices(cfg: ScenarioConfig) -> tuple[int, list[int]]:
    """Replicate the solver's sampling schedule; pick 20 check indices."""
    n_steps = max(1, round(cfg.time_t_end / cfg.time_dt))
    every = max(1, round(cfg.time_sample_interval / cfg.time_dt))
    total = 1 + sum(
        1 for i in range(n_steps) if (i + 1) % every == 0 or i == n_steps - 1
    )
    count = min(20, total)
    picks = sorted({int(round(x)) for x in np.linspace(0, total - 1, count)})
    return total, picks


class _SnapshotChecks:
    """simulate() hook: pressure bound and exact-solution error at 20 samples."""

    def __init__(self, cfg: ScenarioConfig, picks: list[int]):
        self.cfg = cfg
        self.picks = set(picks)
        self.index = 0
        self.pressure_violations = 0
        self.max_pressure_ratio = 0.0
        self.exact_error: float | None = None
        self._tg = (
            cfg.init_kind == "taylor_green"
            and cfg.run_mode in ("navier_stokes", "heat")
        )
        self._ref: tuple[np.ndarray, np.ndarray] | None = None
        self._ref_norm = 0.0

    def __call__(self, state: SolverState) -> None:
        i = self.index
        self.index += 1
        if self._tg and self._ref is None:
            self._ref = (state.u.u1.coeffs.copy(), state.u.u2.coeffs.copy())
            self._ref_norm = math.sqrt(
                l2_norm_sq(state.u.u1) + l2_norm_sq(state.u.u2)
            )
        if i not in self.picks:
            return
        vortex = state.vortex if state.mode == "perturbation" else None
        rep = pressure_bound_check(state.u, state.t, vortex)
        self.pressure_violations += rep.violations
        self.max_pressure_ratio = max(self.max_pressure_ratio, rep.max_ratio)
        if self._tg and self._ref is not None and self._ref_norm > 0:
            g = state.u.grid
            q = 2.0 * math.pi * round(g.length / (2.0 * math.pi)) / g.length
            decay = math.exp(-2.0 * q * q * state.t)
            diff1 = state.u.u1.coeffs - decay * self._ref[0]
            diff2 = state.u.u2.coeffs - decay * self._ref[1]
            err = math.sqrt(
                l2_norm_sq(SpectralField(g, diff1))
                + l2_norm_sq(SpectralField(g, diff2))
            )
            err /= self._ref_norm
            self.exact_error = max(self.exact_error or 0.0, err)


def _splitting_violations(series: EnergySeries) -> int:
    count = 0
    for row in series:
        check = SplitCheck(row.E_low, row.E_high, row.r2 * row.E_high, row.D)
        if not check.holds:
            count += 1
    return count


def run_scenario(cfg: ScenarioConfig) -> tuple[EnergySeries, DecayReport]:
    """Run one scenario end to end; writes series.csv, report.txt, report.csv.

    The report's checks: splitting inequality on every sample, pressure
    bound on 20 snapshots, a priori bound from time.t0 on, rate recovery
    when the data has a prescribed exponent, exact-solution error for
    integrable initial data.  Zero-energy runs pass trivially.
    """
    outdir = _resolve_outdir(cfg)
    grid = GridSpec(n=cfg.grid_n, length=cfg.grid_length)
    u0 = _initial_data(cfg, grid)
    _, picks = _emit_indices(cfg)
    snaps = _SnapshotChecks(cfg, picks)

    series_path = outdir / "series.csv"
    with open(series_path, "w") as fh:
        fh.write("t,E,D,Tv,v_inf,E_low,E_high,r2\n")
        sink = lambda row: fh.write(_series_line(row) + "\n")
        series = simulate(cfg, u0=u0, row_sink=sink, snapshot_hook=snaps)

    energies = series.energies()
    zero_data = float(np.max(energies)) <= 1e-28

    split_bad = _splitting_violations(series)
    apriori = apriori_bound_check(series, cfg.time_t0)
    checks: dict[str, bool] = {
        "splitting": split_bad == 0,
        "pressure": snaps.pressure_violations == 0,
        "apriori": apriori.passed,
    }

    gamma_target = cfg.init_gamma if cfg.init_kind == "prescribed_gamma" else None
    gamma_fitted, gamma_stderr = float("nan"), float("nan")
    window = (cfg.fit_t_min, cfg.fit_t_max)
    if gamma_target is not None and not zero_data:
        slope, gamma_stderr = fit_decay_rate(series, window)
        gamma_fitted = -slope
        checks["rate_recovery"] = abs(gamma_fitted - gamma_target) <= 0.15
        env = [
            row.E * (1.0 + row.t) ** gamma_target
            for row in series
            if window[0] <= row.t <= window[1]
        ]
        checks["rate_envelope"] = max(env) / min(env) <= 10.0
    if snaps.exact_error is not None:
        checks["exact_solution"] = snaps.exact_error <= 1e-8

    report = DecayReport(
        gamma_target=gamma_target,
        gamma_fitted=gamma_fitted,
        gamma_stderr=gamma_stderr,
        fit_window=window,
        apriori_constant=apriori.constant,
        splitting_violations=split_bad,
        C0=cfg.analysis_c0,
        pressure_violations=snaps.pressure_violations,
        exact_error=snaps.exact_error,
        checks=checks,
    )
    (outdir / "report.txt").write_text(format_report(report))
    _write_report_csv(outdir / "report.csv", cfg, report)
    return series, report


def _write_report_csv(path: Path, cfg: ScenarioConfig, report: DecayReport):
    cols = [
        ("config_hash", config_hash(cfg)),
        ("gamma_target", _csv_num(report.gamma_target)),
        ("gamma_fitted", _csv_num(report.gamma_fitted)),
        ("gamma_stderr", _csv_num(report.gamma_stderr)),
        ("fit_t_min", _csv_num(report.fit_window[0])),
        ("fit_t_max", _csv_num(report.fit_window[1])),
        ("apriori_constant", _csv_num(report.apriori_constant)),
        ("splitting_violations", str(report.splitting_violations)),
        ("pressure_violations", str(report.pressure_violations)),
        ("exact_error", _csv_num(report.exact_error)),
        ("passed", "1" if report.passed else "0"),
    ]
    for name in sorted(report.checks):
        cols.append((f"check_{name}", "1" if report.checks[name] else "0"))
    with open(path, "w") as fh:
        fh.write(",".join(c for c, _ in cols) + "\n")
        fh.write(",".join(v for _, v in cols) + "\n")


def _csv_num(x) -> str:
    if x is None:
        return "nan"
    return _FMT % float(x)


def _sweep_worker(args: tuple[ScenarioConfig, str]) -> tuple:
    cfg, outdir = args
    cfg = replace(cfg, output_dir=outdir)
    start = time.perf_counter()
    try:
        _, report = run_scenario(cfg)
    except (ValueError, SolverAbort, OSError) as exc:
        wall = time.perf_counter() - start
        return (config_hash(cfg), cfg.init_gamma, float("nan"), float("nan"), -1, wall, False, f"{type(exc).__name__}: {exc}")
    wall = time.perf_counter() - start
    violations = report.splitting_violations + report.pressure_violations
    gamma_target = report.gamma_target if report.gamma_target is not None else float("nan")
    return (
        config_hash(cfg),
        gamma_target,
        report.gamma_fitted,
        report.apriori_constant,
        violations,
        wall,
        report.passed,
        "",
    )


def run_sweep(
    configs: list[ScenarioConfig], jobs: int = 1, outdir: str | Path | None = None
) -> tuple[list[tuple], bool]:
    """Run scenarios (optionally in parallel), write sweep.csv.

    Each scenario gets its own subdirectory scenario_NNN under the sweep
    output dir.  Rows keep submission order, so sweep.csv is identical for
    any job count except for the wall_time column.
    """
    if jobs < 1:
        raise ValueError(f"jobs must be >= 1, got {jobs}")
    base = Path(os.environ.get("NSDECAY_OUTPUT_DIR") or outdir or ".")
    base.mkdir(parents=True, exist_ok=True)
    # children must not re-apply the env override to their subdirectories
    env_saved = os.environ.pop("NSDECAY_OUTPUT_DIR", None)
    try:
        tasks = [
            (cfg, str(base / f"scenario_{i:03d}")) for i, cfg in enumerate(configs)
        ]
        if jobs == 1 or len(tasks) <= 1:
            rows = [_sweep_worker(t) for t in tasks]
        else:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                rows = list(pool.map(_sweep_worker, tasks))
    finally:
        if env_saved is not None:
            os.environ["NSDECAY_OUTPUT_DIR"] = env_saved

    header = "config_hash,gamma_target,gamma_fitted,apriori_constant,violations,wall_time"
    lines = [header]
    for h, gt, gf, ac, viol, wall, _, _ in rows:
        lines.append(
            f"{h},{_csv_num(gt)},{_csv_num(gf)},{_csv_num(ac)},{viol},{wall:.3f}"
        )
    (base / "sweep.csv").write_text("\n".join(lines) + "\n")
    all_passed = all(r[6] for r in rows)
    return rows, all_passed


def _cmd_simulate(args) -> int:
    cfg = parse_config(Path(args.config).read_text())
    _, report = run_scenario(cfg)
    sys.stdout.write(format_report(report))
    return 0 if report.passed else 1


def _cmd_sweep(args) -> int:
    configs = [parse_config(Path(p).read_text()) for p in args.configs]
    rows, ok = run_sweep(configs, jobs=args.jobs, outdir=".")
    for h, gt, gf, ac, viol, wall, passed, err in rows:
        status = "pass" if passed else ("error " + err if err else "fail")
        sys.stdout.write(
            f"{h} gamma_target={_csv_num(gt)} gamma_fitted={_csv_num(gf)} "
            f"violations={viol} {status}\n"
        )
    return 0 if ok else 1


def _cmd_decompose(args) -> int:
    samples, grid = read_vorticity_file(args.vorticity_file)
    omega = dealias(from_physical(samples, grid))
    dec = radial_energy_decompose(omega, args.t0)
    u_norm = math.sqrt(l2_norm_sq(dec.u0.u1) + l2_norm_sq(dec.u0.u2))
    try:
        radii = np.linspace(grid.length / 6, 0.4 * grid.length, 6)
        slope = far_field_exponent(dec.u0, radii)
    except ValueError:
        slope = float("nan")
    sys.stdout.write(f"alpha = {dec.vortex.alpha:.17g}\n")
    sys.stdout.write(f"vortex_t0 = {dec.vortex.t0:.17g}\n")
    sys.stdout.write(f"residual_circulation = {dec.residual_circulation:.17g}\n")
    sys.stdout.write(f"u0_l2_norm = {u_norm:.17g}\n")
    sys.stdout.write(f"far_field_slope = {slope:.17g}\n")
    return 0


def _cmd_check_heat(args) -> int:
    cfg = parse_config(Path(args.config).read_text())
    if cfg.init_kind != "prescribed_gamma":
        raise ValueError("check-heat requires init.kind = prescribed_gamma")
    grid = GridSpec(n=cfg.grid_n, length=cfg.grid_length)
    u0 = make_initial_data(
        cfg.init_gamma, grid, cfg.init_seed, amplitude=cfg.init_amplitude
    )
    # the pure-heat estimate is only trustworthy well below the box cutoff
    cap = 0.24 * (cfg.grid_length / (2.0 * math.pi)) ** 2
    t_max = min(cfg.fit_t_max, cap)
    if not cfg.fit_t_min < t_max:
        raise ValueError(
            f"fit window [{cfg.fit_t_min}, {t_max}] empty after box cap {cap:.3g}"
        )
    profile = estimate_heat_exponent(u0, (cfg.fit_t_min, t_max))
    err = abs(profile.gamma - cfg.init_gamma)
    sys.stdout.write(f"gamma_target = {cfg.init_gamma:.17g}\n")
    sys.stdout.write(f"gamma_fitted = {profile.gamma:.17g}\n")
    sys.stdout.write(f"gamma_stderr = {profile.stderr:.17g}\n")
    sys.stdout.write(f"fit_t_min = {profile.fit_window[0]:.17g}\n")
    sys.stdout.write(f"fit_t_max = {profile.fit_window[1]:.17g}\n")
    sys.stdout.write(f"abs_error = {err:.17g}\n")
    return 0 if err <= 0.1 else 1


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="nsdecay",
        description="Decay-rate experiments for perturbed 2D Navier-Stokes flows.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="run one scenario and its checks")
    p.add_argument("config")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("sweep", help="run several scenarios, collect sweep.csv")
    p.add_argument("configs", nargs="+")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("decompose", help="split vorticity into vortex + remainder")
    p.add_argument("vorticity_file")
    p.add_argument("--t0", type=float, default=1.0)
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("check-heat", help="fit the heat-flow exponent only")
    p.add_argument("config")
    p.set_defaults(func=_cmd_check_heat)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SolverAbort as exc:
        sys.stderr.write(f"numerical abort: {exc}\n")
        return 3
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
