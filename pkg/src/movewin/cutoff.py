"""Smooth compactly supported cutoff and the bump used by the potentials.

The cutoff equals 1 on the plateau [-aL, aL]^d, vanishes outside (-L, L)^d,
and is C-infinity in between.  The concrete profile is the standard
bump-quotient ramp g(y) = h(1-y)/(h(y)+h(1-y)) with h(y) = exp(-1/y); any
profile with these support/plateau properties is admissible, this one is
closed-form and cheap.
"""

from dataclasses import dataclass

import numpy as np

from movewin.backend import kernels


@dataclass(frozen=True)
class CutoffSpec:
    """Plateau fraction a in (0,1), half-width L, dimension d."""

    a: float = 0.5
    L: float = 1.0
    d: int = 1

    def __post_init__(self):
        if not 0.0 < self.a < 1.0:
            raise ValueError(f"plateau fraction must lie in (0,1), got {self.a}")
        if not self.L > 0:
            raise ValueError(f"half-width must be positive, got {self.L}")
        if self.d not in (1, 2):
            raise ValueError(f"dimension must be 1 or 2, got {self.d}")


def bump(r):
    """exp(-1/(1-r^2)) for |r| < 1, exactly 0 elsewhere.  Total function.

    The 2-D radial variant is obtained by passing r = sqrt(x^2 + y^2).
    """
    arr = np.asarray(r, dtype=np.float64)
    out = kernels.bump_profile(np.ascontiguousarray(arr.ravel()))
    out = out.reshape(arr.shape)
    return out if arr.ndim else float(out)


def transition(y):
    """C-infinity ramp: 1 for y <= 0, 0 for y >= 1, strictly decreasing between."""
    arr = np.asarray(y, dtype=np.float64)
    out = kernels.ramp_profile(np.ascontiguousarray(arr.ravel()))
    out = out.reshape(arr.shape)
    return out if arr.ndim else float(out)


def cutoff_axis(spec, x):
    """1-D cutoff profile g((|x|/L - a)/(1 - a)) along a single axis."""
    x = np.asarray(x, dtype=np.float64)
    return transition((np.abs(x) / spec.L - spec.a) / (1.0 - spec.a))


def cutoff_eval(spec, *coords):
    """Evaluate the cutoff at points given by d coordinate arrays.

    Returns the product of per-axis profiles; broadcasting follows the inputs.
    """
    if len(coords) != spec.d:
        raise ValueError(f"expected {spec.d} coordinate arrays, got {len(coords)}")
    out = cutoff_axis(spec, coords[0])
    for c in coords[1:]:
        out = out * cutoff_axis(spec, c)
    return out


def cutoff_fn(spec):
    """The cutoff as a plain callable of the d coordinates."""
    return lambda *coords: cutoff_eval(spec, *coords)
