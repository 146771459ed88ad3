"""Discrete geometry and spectral algebra on the scaled torus [-L, L]^d.

A `Grid` holds the collocation geometry: per axis, the 2N+1 nodes
x_n = 2nL/(2N+1) for n = -N..N.  A `Field` is canonically a complex
coefficient array over the modes k in {-N..N}^d of the basis
e^{i pi k.x / L}; the physical samples at the nodes are a derived (cached)
view.  Coefficients are stored in standard DFT layout, i.e. per-axis mode
order 0, 1, .., N, -N, .., -1, so index j maps to mode k = j for j <= N and
k = j - (2N+1) otherwise.  Sample arrays exposed to callers are in ascending
node order (x increasing; axis 0 is x, axis 1 is y).

All operations are pure functions; Grid and Field are immutable values.
"""

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft

from movewin.backend import fft_workers, kernels


@dataclass(frozen=True)
class Grid:
    """Collocation geometry of the torus [-L, L]^d with mode cutoff N."""

    d: int
    L: float
    N: int

    @property
    def M(self):
        """Per-axis node (and mode) count, always odd."""
        return 2 * self.N + 1

    @property
    def spacing(self):
        return 2.0 * self.L / self.M

    @property
    def shape(self):
        return (self.M,) * self.d

    @property
    def size(self):
        return self.M ** self.d

    @cached_property
    def axis_nodes(self):
        """1-D node coordinates 2nL/(2N+1), n = -N..N, ascending."""
        n = np.arange(-self.N, self.N + 1)
        return 2.0 * n * self.L / self.M

    @cached_property
    def axis_modes(self):
        """Per-axis integer modes in DFT order: 0, 1, .., N, -N, .., -1."""
        return np.rint(sfft.fftfreq(self.M) * self.M).astype(np.int64)

    @cached_property
    def mode_sq(self):
        """|k|^2 over the full mode set, DFT order, shape (M,)*d."""
        k2 = self.axis_modes.astype(np.float64) ** 2
        if self.d == 1:
            return k2
        return k2[:, None] + k2[None, :]

    def meshgrid(self):
        """Node coordinates as d arrays of shape (M,)*d (indexing 'ij')."""
        if self.d == 1:
            return (self.axis_nodes,)
        return np.meshgrid(self.axis_nodes, self.axis_nodes, indexing="ij")

    def with_params(self, L=None, N=None):
        return Grid(self.d, self.L if L is None else float(L),
                    self.N if N is None else int(N))


def make_grid(d, L, N):
    """Build a Grid, validating d in {1, 2}, L > 0, N >= 1."""
    if d not in (1, 2):
        raise ValueError(f"dimension must be 1 or 2, got {d}")
    if not L > 0:
        raise ValueError(f"half-width L must be positive, got {L}")
    if not (isinstance(N, (int, np.integer)) and N >= 1):
        raise ValueError(f"mode cutoff N must be an integer >= 1, got {N}")
    return Grid(int(d), float(L), int(N))


@dataclass(frozen=True, eq=False)
class Field:
    """State on a Grid: spectral coefficients plus a cached sample view."""

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        if self.coeffs.shape != self.grid.shape:
            raise ValueError(
                f"coefficient shape {self.coeffs.shape} does not match grid "
                f"shape {self.grid.shape}")

    @classmethod
    def from_coeffs(cls, grid, coeffs):
        c = np.ascontiguousarray(coeffs, dtype=np.complex128)
        return cls(grid, c)

    @classmethod
    def from_samples(cls, grid, samples):
        field = cls(grid, forward(grid, samples))
        # seed the cache: interpolation reproduces the given node values
        field.__dict__["samples"] = np.asarray(samples, dtype=np.complex128)
        return field

    @cached_property
    def samples(self):
        """Physical values at the nodes, ascending node order."""
        return inverse(self.grid, self.coeffs)

    @classmethod
    def zero(cls, grid):
        return cls(grid, np.zeros(grid.shape, dtype=np.complex128))


def forward(grid, samples):
    """Interpolation coefficients a_k of the samples on the grid nodes.

    The returned trigonometric polynomial sum_k a_k e^{i pi k.x/L} matches the
    samples at every node.
    """
    s = np.asarray(samples, dtype=np.complex128)
    if s.shape != grid.shape:
        raise ValueError(f"sample shape {s.shape} does not match grid shape "
                         f"{grid.shape}")
    return sfft.fftn(sfft.ifftshift(s), workers=fft_workers()) / grid.size


def inverse(grid, coeffs):
    """Evaluate the trigonometric polynomial at the nodes (ascending order)."""
    c = np.asarray(coeffs, dtype=np.complex128)
    if c.shape != grid.shape:
        raise ValueError(f"coefficient shape {c.shape} does not match grid "
                         f"shape {grid.shape}")
    return sfft.fftshift(sfft.ifftn(c, workers=fft_workers()) * grid.size)


def _corner_index(N_keep, M_target):
    """Indices of modes -N_keep..N_keep inside a size-M_target DFT axis."""
    return np.r_[0:N_keep + 1, M_target - N_keep:M_target]


def truncate_modes(coeffs, N_new):
    """Keep modes |k|_inf <= N_new (per-axis corner extraction)."""
    M_old = coeffs.shape[0]
    idx = _corner_index(N_new, M_old)
    out = coeffs[np.ix_(*[idx] * coeffs.ndim)] if coeffs.ndim > 1 else coeffs[idx]
    return np.ascontiguousarray(out)


def pad_modes(coeffs, N_old, M_target):
    """Embed modes -N_old..N_old into a size-M_target DFT layout (zeros)."""
    d = coeffs.ndim
    out = np.zeros((M_target,) * d, dtype=np.complex128)
    idx = _corner_index(N_old, M_target)
    if d == 1:
        out[idx] = coeffs
    else:
        out[np.ix_(idx, idx)] = coeffs
    return out


def fold_modes(coeffs, M_target):
    """Alias modes onto a size-M_target DFT layout (k -> k mod M_target)."""
    d = coeffs.ndim
    M_old = coeffs.shape[0]
    src = np.rint(sfft.fftfreq(M_old) * M_old).astype(np.int64) % M_target
    out = np.zeros((M_target,) * d, dtype=np.complex128)
    if d == 1:
        np.add.at(out, src, coeffs)
    else:
        np.add.at(out, (src[:, None], src[None, :]), coeffs)
    return out


def project(field, M):
    """Low-frequency projection: zero modes |k|_inf > M, truncate to cutoff M."""
    N = field.grid.N
    if M > N:
        raise ValueError(f"projection cutoff {M} exceeds field cutoff {N}")
    if M == N:
        return field
    new_grid = field.grid.with_params(N=M)
    return Field.from_coeffs(new_grid, truncate_modes(field.coeffs, M))


def interpolate_fn(fn, grid):
    """Trigonometric interpolation of a pointwise-evaluable function.

    `fn` must accept the d coordinate arrays (vectorized) and return values;
    the resulting Field reproduces fn exactly at the nodes.
    """
    values = np.asarray(fn(*grid.meshgrid()), dtype=np.complex128)
    values = np.broadcast_to(values, grid.shape)
    return Field.from_samples(grid, values)


def _pad_length(N):
    """Padded per-axis size >= 4N+1 for exact products of degree-N polys."""
    return sfft.next_fast_len(4 * N + 1, real=False)


def multiply_dealiased(f, g, dealias=True):
    """Projection (cutoff N) of the pointwise product of two fields.

    With `dealias` the product is computed exactly: both factors are resampled
    to a padded grid of per-axis size >= 4N+1, multiplied pointwise, and the
    result is truncated back to |k|_inf <= N.  With dealias=False the product
    is formed on the native collocation grid, which aliases modes above N.
    """
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    grid = f.grid
    if not dealias:
        return Field.from_samples(grid, f.samples * g.samples)
    P = _pad_length(grid.N)
    sf = sfft.ifftn(pad_modes(f.coeffs, grid.N, P), workers=fft_workers())
    sg = sfft.ifftn(pad_modes(g.coeffs, grid.N, P), workers=fft_workers())
    prod = sfft.fftn(sf * sg, workers=fft_workers()) * (P ** grid.d)
    return Field.from_coeffs(grid, truncate_modes(prod, grid.N))


def resample_zero_extend(field, L_new, N_new):
    """Zero-extend the field to [-L_new, L_new]^d and re-interpolate.

    Realizes I_{L_new, N_new} applied to the zero extension: the field's
    trigonometric polynomial is evaluated at the new nodes inside the old
    window, zero is taken outside, and the result is transformed on the new
    grid.  Exact (up to round-off) when L_new/L is an integer.
    """
    grid = field.grid
    if L_new < grid.L:
        raise ValueError(f"cannot shrink window: L_new={L_new} < L={grid.L}")
    N_new = int(N_new)
    if N_new < 1:
        raise ValueError("N_new must be >= 1")
    if L_new == grid.L and N_new == grid.N:
        return field
    new_grid = grid.with_params(L=L_new, N=N_new)
    ratio = L_new / grid.L
    r = int(round(ratio))
    if abs(ratio - r) < 1e-12:
        samples = _resample_commensurate(field, new_grid, r)
    else:
        samples = _resample_direct(field, new_grid)
    return Field.from_samples(new_grid, samples)


def _resample_commensurate(field, new_grid, r):
    """New-node samples via an r-times finer grid on the old torus."""
    grid = field.grid
    M_new = new_grid.M
    if M_new >= grid.M:
        fine = pad_modes(field.coeffs, grid.N, M_new)
    else:
        fine = fold_modes(field.coeffs, M_new)
    fine_samples = sfft.ifftn(fine, workers=fft_workers()) * (M_new ** grid.d)
    m = new_grid.axis_modes  # signed new-node indices in DFT order
    src = (m * r) % M_new
    # per-axis: new node m*h_new lies inside the old window iff |m| < M_new/(2r)
    inside = np.abs(m) * (2 * r) < M_new
    if grid.d == 1:
        samples_dft = np.where(inside, fine_samples[src], 0.0)
    else:
        samples_dft = fine_samples[np.ix_(src, src)]
        samples_dft = samples_dft * np.outer(inside, inside)
    return sfft.fftshift(samples_dft)


def _resample_direct(field, new_grid):
    """New-node samples by direct polynomial evaluation (incommensurate)."""
    grid = field.grid
    nodes = new_grid.axis_nodes
    inside = np.abs(nodes) < grid.L
    theta = np.pi * nodes / grid.L
    c = sfft.fftshift(field.coeffs)
    if grid.d == 1:
        vals = kernels.trig_eval(np.ascontiguousarray(c), theta)
        return np.where(inside, vals, 0.0)
    # separable: evaluate along x for each y-mode column, then along y
    tmp = np.empty((nodes.size, c.shape[1]), dtype=np.complex128)
    for j in range(c.shape[1]):
        tmp[:, j] = kernels.trig_eval(np.ascontiguousarray(c[:, j]), theta)
    out = np.empty((nodes.size, nodes.size), dtype=np.complex128)
    for i in range(nodes.size):
        out[i, :] = kernels.trig_eval(np.ascontiguousarray(tmp[i, :]), theta)
    return out * np.outer(inside, inside)


def l2_norm(field):
    """L2 norm on the torus: (2L)^{d/2} times the l2 norm of coefficients."""
    g = field.grid
    return (2.0 * g.L) ** (g.d / 2.0) * np.linalg.norm(field.coeffs)


def l2_distance(f, g):
    """L2 distance between zero extensions, reconciling grids if needed."""
    if f.grid == g.grid:
        gr = f.grid
        return (2.0 * gr.L) ** (gr.d / 2.0) * np.linalg.norm(f.coeffs - g.coeffs)
    a, b = f, g
    if (b.grid.L, b.grid.N) < (a.grid.L, a.grid.N):
        a, b = b, a
    if a.grid.d != b.grid.d:
        raise ValueError("fields have different dimensions")
    if b.grid.L < a.grid.L:
        raise ValueError("neither window contains the other")
    a = resample_zero_extend(a, b.grid.L, b.grid.N)
    return l2_distance(a, b)
