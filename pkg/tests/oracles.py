"""Independent reference computations used to freeze expected test values.

Everything here is deliberately naive (dense loops, raw numpy.fft, dense
quadrature) and independent of the library's own transform/product/stepping
paths, so that agreement is meaningful.
"""

import numpy as np


def convolution_product(f_coeffs, g_coeffs, N, d):
    """Truncated convolution sum_{k1+k2=k} a_{k1} b_{k2}, |k|_inf <= N.

    Coefficient arrays are in DFT layout; O(N^{2d}) double loop.
    """
    M = 2 * N + 1
    out = np.zeros_like(f_coeffs)
    if d == 1:
        for k1 in range(-N, N + 1):
            for k2 in range(-N, N + 1):
                k = k1 + k2
                if abs(k) <= N:
                    out[k % M] += f_coeffs[k1 % M] * g_coeffs[k2 % M]
        return out
    for k1x in range(-N, N + 1):
        for k1y in range(-N, N + 1):
            a = f_coeffs[k1x % M, k1y % M]
            if a == 0:
                continue
            for k2x in range(-N, N + 1):
                kx = k1x + k2x
                if abs(kx) > N:
                    continue
                for k2y in range(-N, N + 1):
                    ky = k1y + k2y
                    if abs(ky) <= N:
                        out[kx % M, ky % M] += a * g_coeffs[k2x % M, k2y % M]
    return out


def eval_trig_poly(coeffs, L, x, d=1, y=None):
    """Dense direct evaluation of the trig polynomial (no FFT)."""
    M = coeffs.shape[0]
    N = (M - 1) // 2
    k = np.rint(np.fft.fftfreq(M) * M).astype(int)
    if d == 1:
        return np.sum(coeffs[None, :] * np.exp(1j * np.pi * np.outer(x, k) / L),
                      axis=1)
    out = np.zeros(np.broadcast(x, y).shape, dtype=complex)
    for i in range(M):
        for j in range(M):
            if coeffs[i, j] != 0:
                out = out + coeffs[i, j] * np.exp(
                    1j * np.pi * (k[i] * x + k[j] * y) / L)
    return out


def quadrature_norm(field, oversample=4):
    """L2 norm via dense quadrature of |f|^2 on an oversampled node set."""
    grid = field.grid
    M_fine = oversample * grid.M
    x = -grid.L + 2 * grid.L * np.arange(M_fine) / M_fine
    if grid.d == 1:
        vals = eval_trig_poly(field.coeffs, grid.L, x)
        return float(np.sqrt(np.sum(np.abs(vals) ** 2) * 2 * grid.L / M_fine))
    X, Y = np.meshgrid(x, x, indexing="ij")
    vals = eval_trig_poly(field.coeffs, grid.L, X, d=2, y=Y)
    return float(np.sqrt(np.sum(np.abs(vals) ** 2) * (2 * grid.L / M_fine) ** 2))


def spectral_free_propagation(u0_fn, L, n_modes, t):
    """Whole-line free evolution via a raw numpy FFT on a big torus.

    Independent of the library stack: numpy.fft directly, even grid, no
    cutoff.  Valid while the solution stays well inside [-L, L].
    """
    M = 2 * n_modes
    x = -L + 2 * L * np.arange(M) / M
    u0 = u0_fn(x)
    xi = 2 * np.pi * np.fft.fftfreq(M, d=2 * L / M)
    u_hat = np.fft.fft(u0)
    u_t = np.fft.ifft(u_hat * np.exp(-1j * t * xi ** 2))
    return x, u_t


def phi1_series(z, terms=200):
    """(e^z - 1)/z as the Taylor series sum_{n>=0} z^n/(n+1)!."""
    z = complex(z)
    total = 0.0 + 0.0j
    term = 1.0 + 0.0j
    for n in range(terms):
        total += term
        term = term * z / (n + 2)
    return total


def fit_loglog(params, errors):
    """Plain least-squares slope in log-log, kept separate from the library."""
    x = np.log(np.asarray(params, dtype=float))
    y = np.log(np.asarray(errors, dtype=float))
    A = np.vstack([x, np.ones_like(x)]).T
    slope, _ = np.linalg.lstsq(A, y, rcond=None)[0]
    return float(slope)
