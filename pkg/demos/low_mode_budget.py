"""Each low mode is budgeted by the heat flow plus an explicit forcing.

Modes below |k| = 1 escape the dissipation argument, but they obey a
pointwise bound: |u-hat(k,t)| can never exceed the freely decaying initial
amplitude plus the time integral of |k| (2||(vu)-hat||_F + ||(uu)-hat||_F),
the worst the nonlinearity and the background can pump into that mode.
This demo records both sides during a live run and reports the margin.
"""

from types import SimpleNamespace

import numpy as np

from nsdecay.decay_analysis import LowModeRecorder, duhamel_lowmode_check
from nsdecay.heat_semigroup import make_initial_data
from nsdecay.perturbation_solver import simulate
from nsdecay.spectral_core import GridSpec


def main() -> None:
    grid = GridSpec(64, 16.0)
    cfg = SimpleNamespace(
        grid_n=grid.n,
        grid_length=grid.length,
        time_dt=2e-3,
        time_t_end=2.0,
        time_sample_interval=1.0 / 16.0,
        time_t0=1.0,
        vortex_alpha=0.5,
        vortex_t0=0.01,
        init_kind="prescribed_gamma",
        init_gamma=0.5,
        init_seed=11,
        init_amplitude=0.5,
        run_mode="perturbation",
        analysis_c0=1.0,
    )
    u0 = make_initial_data(cfg.init_gamma, grid, cfg.init_seed, cfg.init_amplitude)
    recorder = LowModeRecorder(grid, cutoff=1.0)
    simulate(cfg, u0=u0, snapshot_hook=recorder)
    trace = recorder.trace()
    report = duhamel_lowmode_check(trace, u0)

    print("low-mode amplitude budget on a live perturbation run")
    print(f"box L = {grid.length:g} at {grid.n}^2, alpha = {cfg.vortex_alpha}, "
          f"t <= {cfg.time_t_end:g}")
    print()
    print(f"modes tracked below |k| = 1: {report.n_modes}")
    print(f"samples per mode:            {report.n_times}")
    print(f"bound violations:            {report.violations}")
    print(f"worst overshoot of budget:   {report.max_deficit:.3e} "
          "(0 = bound never exceeded)")
    print()

    # show the budget for the slowest mode at a few times
    i = int(np.argmin(trace.ksq))
    k = np.sqrt(trace.ksq[i])
    print(f"slowest tracked mode, |k| = {k:.3f}:")
    print(f"{'t':>6} {'|u-hat|':>12} {'heat term':>12} {'forcing integral':>17}")
    decay = np.exp(-trace.ksq[i] * (trace.times - trace.times[0]))
    heat = decay * trace.uhat_abs[0, i]
    forcing = np.concatenate(
        [[0.0], np.cumsum(np.diff(trace.times) * 0.5
                          * (trace.forcing[1:, i] + trace.forcing[:-1, i]))]
    )
    for j in range(0, len(trace.times), len(trace.times) // 6):
        print(f"{trace.times[j]:6.2f} {trace.uhat_abs[j, i]:12.3e} "
              f"{heat[j]:12.3e} {forcing[j]:17.3e}")
    print()
    print("every tracked amplitude stays inside heat term + forcing integral;")
    print("summing these budgets over the shrinking low-mode ball is what")
    print("turns the frequency split into an actual decay rate")


if __name__ == "__main__":
    main()
