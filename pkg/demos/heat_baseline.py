"""The linear heat flow sets the decay rate the nonlinear runs inherit.

For initial data with |u0-hat(k)| ~ |k|^(gamma-1) near k = 0, the heat
semigroup alone gives energy ~ t^(-gamma).  This demo builds such data for
several gamma, evolves it with the exact multiplier e^(-|k|^2 t), and fits
the exponent, all in a box big enough that the discrete mode sum tracks
the continuum integral through the fit window.
"""

import numpy as np

from nsdecay.heat_semigroup import (
    estimate_heat_exponent,
    heat_evolve,
    make_initial_data,
)
from nsdecay.spectral_core import GridSpec, l2_norm_sq


def main() -> None:
    grid = GridSpec(512, 256.0 * np.pi)
    window = (10.0, 100.0)

    print("pure heat flow on prescribed low-frequency spectra")
    print(f"box L = 256 pi at 512^2; exponent fitted over t in {window}")
    print()
    print(f"{'gamma':>6} {'fitted':>8} {'stderr':>9} {'E(10)':>10} {'E(100)':>10}")
    for gamma in (0.25, 0.5, 0.75, 1.0):
        u0 = make_initial_data(gamma, grid, seed=0, amplitude=1.0)
        prof = estimate_heat_exponent(u0, window)
        energies = []
        for t in window:
            ut = heat_evolve(u0.u1, t), heat_evolve(u0.u2, t)
            energies.append(l2_norm_sq(ut[0]) + l2_norm_sq(ut[1]))
        print(
            f"{gamma:6.2f} {prof.gamma:8.3f} {prof.stderr:9.1e} "
            f"{energies[0]:10.2e} {energies[1]:10.2e}"
        )
    print()
    print("the fitted exponents ride slightly above gamma: the box admits no")
    print("modes below 2 pi / L, so the largest scales the continuum rate")
    print("would draw on are missing, and the finite window inflates the")
    print("slope; both biases shrink as the box grows")


if __name__ == "__main__":
    main()
