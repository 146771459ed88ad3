"""Pure-NumPy implementations of the hot kernels.

These are the reference implementations; `movewin._kernels` (Cython) provides
drop-in replacements selected at import time by `movewin.backend`.  Both sides
must stay bit-compatible up to floating-point reassociation (tested in
tests/test_kernels.py).
"""

import numpy as np

IMPLEMENTATION = "python"

# Below this value exp(-1/y) underflows; treated as exact zero.
RAMP_FLOOR = 1e-300


def step_combine(u, w, exp_sym, phi1_sym, tau):
    """Fused exponential-Euler update: exp_sym*u - i*tau*(phi1_sym*w)."""
    return exp_sym * u - (1j * tau) * (phi1_sym * w)


def bump_profile(z):
    """exp(-1/(1-z^2)) where |z| < 1, exactly 0 elsewhere."""
    z = np.asarray(z, dtype=np.float64)
    out = np.zeros_like(z)
    inside = np.abs(z) < 1.0
    out[inside] = np.exp(-1.0 / (1.0 - z[inside] ** 2))
    return out


def ramp_profile(y):
    """C-infinity ramp g(y) = h(1-y) / (h(y) + h(1-y)), h(y) = exp(-1/y)."""
    y = np.asarray(y, dtype=np.float64)
    out = np.empty_like(y)
    out[y <= 0.0] = 1.0
    out[y >= 1.0] = 0.0
    mid = (y > 0.0) & (y < 1.0)
    ym = y[mid]
    ha = _h(ym)
    hb = _h(1.0 - ym)
    out[mid] = hb / (ha + hb)
    return out


def _h(y):
    out = np.zeros_like(y)
    ok = y > RAMP_FLOOR
    out[ok] = np.exp(-1.0 / y[ok])
    return out


def trig_eval(coeffs_ascending, theta, block=512):
    """Evaluate sum_k c_k e^{i k theta_m} for k = -N..N at arbitrary angles.

    `coeffs_ascending` holds the mode coefficients in ascending-k order.
    Blocked over evaluation points to bound the phase-matrix memory.
    """
    c = np.ascontiguousarray(coeffs_ascending, dtype=np.complex128)
    theta = np.asarray(theta, dtype=np.float64)
    n = (c.shape[0] - 1) // 2
    k = np.arange(-n, n + 1)
    out = np.empty(theta.shape[0], dtype=np.complex128)
    for start in range(0, theta.shape[0], block):
        th = theta[start:start + block]
        out[start:start + block] = np.exp(1j * np.outer(th, k)) @ c
    return out
