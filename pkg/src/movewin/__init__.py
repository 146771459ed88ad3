"""Moving-window Fourier spectral solver for the linear Schrodinger equation.

The whole-space problem i u_t + Lap u = V u is truncated to a scaled torus
[-L, L]^d by a smooth cutoff, advanced by a first-order exponential
integrator, and the window is doubled dynamically whenever the solution
reaches its boundary.
"""

from movewin.backend import USING_COMPILED
from movewin.config import SimConfig
from movewin.cutoff import CutoffSpec, bump, cutoff_eval, transition
from movewin.harness import (ConvergenceTable, ReferenceSolution,
                             error_vs_exact, error_vs_reference, fit_slope,
                             projection_rate_check, sweep_space, sweep_time)
from movewin.physics import (FreeGaussian, eval_initial, eval_potential,
                             exact_free_solution, get_initial, get_potential)
from movewin.spectral import (Field, Grid, forward, interpolate_fn, inverse,
                              l2_distance, l2_norm, make_grid,
                              multiply_dealiased, project,
                              resample_zero_extend)
from movewin.stepper import (NumericsError, StepperState, evolve,
                             free_propagate, initial_field, make_state, phi1,
                             step)
from movewin.window import WindowPolicy, boundary_indicator, maybe_extend

__version__ = "0.1.0"

__all__ = [
    "USING_COMPILED", "SimConfig", "CutoffSpec", "bump", "cutoff_eval",
    "transition", "ConvergenceTable", "ReferenceSolution", "error_vs_exact",
    "error_vs_reference", "fit_slope", "projection_rate_check", "sweep_space",
    "sweep_time", "FreeGaussian", "eval_initial", "eval_potential",
    "exact_free_solution", "get_initial", "get_potential", "Field", "Grid",
    "forward", "interpolate_fn", "inverse", "l2_distance", "l2_norm",
    "make_grid", "multiply_dealiased", "project", "resample_zero_extend",
    "NumericsError", "StepperState", "evolve", "free_propagate",
    "initial_field", "make_state", "phi1", "step", "WindowPolicy",
    "boundary_indicator", "maybe_extend", "__version__",
]
