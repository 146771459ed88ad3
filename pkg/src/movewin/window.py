"""Boundary monitoring and dynamic doubling of the computational window.

When the solution's modulus on the outermost grid shell reaches the threshold,
the window half-width and the mode cutoff are both doubled (preserving the
resolution N/L), the field is zero-extended onto the new window, and the
potential interpolant and stepper caches are rebuilt there.  The check repeats
until the indicator falls below the threshold or the extension budget is
exhausted.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class WindowPolicy:
    eps: float = 1e-4
    check_interval: int = 1
    max_extensions: int = 6
    enabled: bool = True

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError(f"threshold must be positive, got {self.eps}")
        if self.check_interval < 1:
            raise ValueError("check_interval must be >= 1")
        if self.max_extensions < 0:
            raise ValueError("max_extensions must be >= 0")


@dataclass(frozen=True)
class ExtensionEvent:
    t: float
    old_L: float
    new_L: float
    old_N: int
    new_N: int
    indicator: float


def boundary_indicator(field):
    """Maximum modulus of the samples on the outermost grid shell.

    Nodes sit strictly inside (-L, L); the extreme nodes stand proxy for the
    boundary values, offset by less than one spacing.
    """
    s = field.samples
    if field.grid.d == 1:
        return float(max(abs(s[0]), abs(s[-1])))
    edge = max(np.abs(s[0, :]).max(), np.abs(s[-1, :]).max(),
               np.abs(s[:, 0]).max(), np.abs(s[:, -1]).max())
    return float(edge)


def maybe_extend(state, policy, prior_extensions=0):
    """Apply the extension loop to a stepper state.

    `prior_extensions` counts doublings already performed in this run; the
    policy's `max_extensions` caps the run total.  Returns
    (state, events, first_indicator) and raises RuntimeError when the packet
    outruns the budget.
    """
    indicator = boundary_indicator(state.field)
    first = indicator
    events = []
    while indicator >= policy.eps:
        if prior_extensions + len(events) >= policy.max_extensions:
            raise RuntimeError(
                f"boundary indicator {indicator:.3e} >= {policy.eps:.3e} after "
                f"{policy.max_extensions} window extensions (t={state.t})")
        grid = state.grid
        new_L, new_N = 2.0 * grid.L, 2 * grid.N
        state = state.with_window(new_L, new_N)
        events.append(ExtensionEvent(state.t, grid.L, new_L, grid.N, new_N,
                                     indicator))
        indicator = boundary_indicator(state.field)
    return state, events, first
