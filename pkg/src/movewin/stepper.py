"""Exponential Euler integrator on the scaled torus.

One step of the scheme:

    u^{n+1} = E_tau u^n - i tau Phi1 [ P_N( V_N . u^n ) ]

where E_tau multiplies mode k by exp(-i tau pi^2 |k|^2 / L^2) (the free
propagator, unitary), Phi1 multiplies mode k by phi1(-i tau pi^2 |k|^2 / L^2),
and V_N = I_N(chi_{a,L} V) is the interpolated, cutoff potential.  The product
V_N . u^n is projected exactly via the padded grid (dealiased) by default.

Wavenumber convention: mode k has spatial frequency k*pi/L, hence Laplacian
eigenvalue -|k pi / L|^2.
"""

import math
from dataclasses import dataclass, replace

import numpy as np
import scipy.fft as sfft

from movewin import window as window_mod
from movewin.backend import fft_workers, kernels
from movewin.cutoff import CutoffSpec, cutoff_fn
from movewin.physics import get_initial, get_potential
from movewin.spectral import (Field, Grid, interpolate_fn, make_grid,
                              multiply_dealiased, pad_modes, project,
                              resample_zero_extend, truncate_modes, l2_norm,
                              _pad_length)

PHI1_SERIES_RADIUS = 1e-4


class NumericsError(RuntimeError):
    """Raised when the solution leaves the representable range (NaN/Inf)."""


def phi1(z):
    """phi1(z) = (e^z - 1)/z with phi1(0) = 1.

    For |z| >= 1e-4 the quotient is evaluated in the cancellation-free form
    2 e^{z/2} sinh(z/2) / z; below that a degree-4 Taylor polynomial is used
    (relative error ~1e-23 at the switch, below double-precision noise).
    """
    z = np.asarray(z, dtype=np.complex128)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    out = np.empty_like(z)
    small = np.abs(z) < PHI1_SERIES_RADIUS
    zs = z[small]
    out[small] = 1.0 + zs * (1/2 + zs * (1/6 + zs * (1/24 + zs * (1/120))))
    zb = z[~small]
    out[~small] = 2.0 * np.exp(zb / 2.0) * np.sinh(zb / 2.0) / zb
    return complex(out[0]) if scalar else out


def _laplacian_symbol(grid):
    """Laplacian eigenvalues -|k pi/L|^2 over the mode set, DFT order."""
    return -(math.pi / grid.L) ** 2 * grid.mode_sq


def free_propagate(field, tau):
    """Apply the free propagator: mode k gains phase exp(-i tau pi^2|k|^2/L^2)."""
    sym = np.exp(1j * tau * _laplacian_symbol(field.grid))
    return Field.from_coeffs(field.grid, sym * field.coeffs)


@dataclass(frozen=True)
class _SymbolCache:
    """Per-(grid, tau) multiplier arrays and the padded potential samples."""

    L: float
    N: int
    tau: float
    exp_sym: np.ndarray
    phi1_sym: np.ndarray
    pot_is_zero: bool
    pad_len: int
    pot_pad_samples: np.ndarray  # dealias path: I_N(chi V) on the padded grid
    pot_samples: np.ndarray      # collocation path: I_N(chi V) at the nodes


def _build_cache(grid, tau, potential_field, dealias):
    lam = _laplacian_symbol(grid)
    exp_sym = np.exp(1j * tau * lam)
    phi1_sym = phi1(1j * tau * lam)
    pot_is_zero = not np.any(potential_field.coeffs)
    pad = _pad_length(grid.N)
    if pot_is_zero or not dealias:
        pot_pad = np.empty(0, dtype=np.complex128)
    else:
        pot_pad = sfft.ifftn(pad_modes(potential_field.coeffs, grid.N, pad),
                             workers=fft_workers())
    pot_samples = (np.empty(0, dtype=np.complex128) if pot_is_zero or dealias
                   else potential_field.samples)
    return _SymbolCache(grid.L, grid.N, tau, exp_sym, phi1_sym.reshape(grid.shape),
                        pot_is_zero, pad, pot_pad, pot_samples)


@dataclass(frozen=True)
class StepperState:
    """Confined integration state: field, clock, and window-local caches."""

    field: Field
    t: float
    tau: float
    potential: object          # physics.Potential; evaluable on any window
    plateau_a: float
    dealias: bool
    potential_field: Field     # I_N(chi_{a,L} V) on the current window
    cache: _SymbolCache

    @property
    def grid(self):
        return self.field.grid

    def with_field(self, field, t=None):
        return replace(self, field=field, t=self.t if t is None else t)

    def with_window(self, L_new, N_new):
        """Move to a wider window: resample the field, rebuild all caches."""
        field = resample_zero_extend(self.field, L_new, N_new)
        return make_state(field, self.tau, self.potential, t=self.t,
                          plateau_a=self.plateau_a, dealias=self.dealias)


def potential_on_grid(potential, grid, plateau_a=0.5):
    """I_N(chi_{a,L} V): interpolate the cutoff potential on the grid."""
    chi = cutoff_fn(CutoffSpec(plateau_a, grid.L, grid.d))
    pot = get_potential(potential) if isinstance(potential, str) else potential
    if pot.id == "zero":
        return Field.zero(grid)
    return interpolate_fn(lambda *xs: chi(*xs) * pot.fn(*xs), grid)


def initial_field(initial, grid, plateau_a=0.5, oversample=2):
    """Discretized initial datum u0 -> P_N(chi_{a,L} u0).

    The exact projection is approximated by interpolating on an
    `oversample`-times finer grid and truncating, which keeps the aliasing
    contribution below the scheme error.
    """
    chi = cutoff_fn(CutoffSpec(plateau_a, grid.L, grid.d))
    data = get_initial(initial) if isinstance(initial, str) else initial
    fine = grid.with_params(N=oversample * grid.N)
    interp = interpolate_fn(lambda *xs: chi(*xs) * data.fn(*xs), fine)
    return project(interp, grid.N)


def make_state(field, tau, potential, t=0.0, plateau_a=0.5, dealias=True):
    """Assemble a StepperState with freshly built symbol caches."""
    pot = get_potential(potential) if isinstance(potential, str) else potential
    pot_field = potential_on_grid(pot, field.grid, plateau_a)
    cache = _build_cache(field.grid, tau, pot_field, dealias)
    return StepperState(field, t, tau, pot, plateau_a, dealias, pot_field, cache)


def _potential_term(state):
    """Coefficients of P_N(I_N(chi V) . u^n) on the current window."""
    cache = state.cache
    grid = state.grid
    if cache.pot_is_zero:
        return np.zeros(grid.shape, dtype=np.complex128)
    if not state.dealias:
        return multiply_dealiased(state.potential_field, state.field,
                                  dealias=False).coeffs
    P = cache.pad_len
    su = sfft.ifftn(pad_modes(state.field.coeffs, grid.N, P),
                    workers=fft_workers())
    prod = sfft.fftn(cache.pot_pad_samples * su, workers=fft_workers())
    return truncate_modes(prod * (P ** grid.d), grid.N)


def step(state):
    """Advance one time step; raises NumericsError on NaN/Inf."""
    grid = state.grid
    cache = state.cache
    if cache.pot_is_zero:
        new = cache.exp_sym * state.field.coeffs
    else:
        w = _potential_term(state)
        new = kernels.step_combine(
            state.field.coeffs.ravel(), w.ravel(),
            cache.exp_sym.ravel(), cache.phi1_sym.ravel(), state.tau)
        new = new.reshape(grid.shape)
    if not np.all(np.isfinite(new.view(np.float64))):
        bad = np.argwhere(~np.isfinite(new))[0]
        mode = tuple(int(grid.axis_modes[i]) for i in bad)
        raise NumericsError(
            f"non-finite coefficient at mode {mode} (t={state.t + state.tau})")
    return state.with_field(Field.from_coeffs(grid, new), t=state.t + state.tau)


def _steps_for(T, tau):
    n = round(T / tau)
    if abs(n * tau - T) > 1e-9 * max(1.0, abs(T)):
        raise ValueError(f"final time {T} is not an integer multiple of tau={tau}")
    return n


@dataclass
class EvolveResult:
    state: StepperState
    extensions: list
    n_steps: int


def evolve(config, observers=()):
    """Run the scheme from t=0 to t=T as described by a SimConfig.

    Observers are callables (step_index, state, indicator_or_None) invoked
    after every step and once before the first; the boundary indicator is
    only computed on steps where the window policy checks it.
    """
    grid = make_grid(config.d, config.L0, config.N0)
    field = initial_field(config.initial_id, grid, config.plateau_a)
    state = make_state(field, config.tau, config.potential_id,
                       plateau_a=config.plateau_a, dealias=config.dealias)
    n_steps = _steps_for(config.T, config.tau)
    policy = config.window
    extensions = []
    for obs in observers:
        obs(0, state, None)
    for i in range(1, n_steps + 1):
        try:
            state = step(state)
        except NumericsError as exc:
            raise NumericsError(f"step {i}: {exc}") from exc
        indicator = None
        if policy is not None and policy.enabled and i % policy.check_interval == 0:
            state, events, indicator = window_mod.maybe_extend(
                state, policy, prior_extensions=len(extensions))
            extensions.extend(events)
        for obs in observers:
            obs(i, state, indicator)
    return EvolveResult(state, extensions, n_steps)
