"""Energy decay of 2D Navier-Stokes perturbations around a radial vortex.

A pseudo-spectral laboratory on a periodic box: exact heat semigroup and
prescribed-decay initial data, the closed-form Oseen background with its
scaling checks, the radial energy decomposition for vortex data with
circulation, an integrating-factor RK4 solver for the perturbation system,
and the analysis layer (rate fits, Fourier splitting, pressure and Duhamel
bounds) that turns runs into pass/fail decay verdicts.
"""

from nsdecay.spectral_core import (
    GridSpec,
    SpectralField,
    VelocityField,
    curl2d,
    dealias,
    from_physical,
    gradient,
    leray_project,
    to_physical,
)
from nsdecay.heat_semigroup import (
    HeatDecayProfile,
    estimate_heat_exponent,
    heat_evolve,
    heat_evolve_velocity,
    make_initial_data,
)
from nsdecay.vortex import (
    RadialVortexParams,
    biot_savart_spectral,
    oseen_velocity,
    radial_vorticity,
)
from nsdecay.decomposition import Decomposition, radial_energy_decompose
from nsdecay.perturbation_solver import EnergySeries, SolverState, simulate, step
from nsdecay.decay_analysis import DecayReport, fit_decay_rate, fourier_split_check
from nsdecay.cli_harness import ScenarioConfig, parse_config, run_scenario

__version__ = "0.1.0"

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
    "HeatDecayProfile",
    "heat_evolve",
    "heat_evolve_velocity",
    "make_initial_data",
    "estimate_heat_exponent",
    "RadialVortexParams",
    "radial_vorticity",
    "oseen_velocity",
    "biot_savart_spectral",
    "Decomposition",
    "radial_energy_decompose",
    "SolverState",
    "EnergySeries",
    "step",
    "simulate",
    "DecayReport",
    "fit_decay_rate",
    "fourier_split_check",
    "ScenarioConfig",
    "parse_config",
    "run_scenario",
]
