"""Catalog of initial conditions, potentials, and the free-evolution oracle.

All evaluators are total, vectorized functions of the coordinates.  Initial
data carry a regularity tag gamma: the Sobolev index governing the provable
spatial convergence rate (numpy.inf for smooth data).
"""

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.special import erfc

from movewin.cutoff import bump


@dataclass(frozen=True)
class InitialData:
    id: str
    d: int
    gamma: float
    fn: Callable


@dataclass(frozen=True)
class Potential:
    id: str
    d: int
    support_radius: float  # sup-norm radius outside which V is exactly 0
    fn: Callable


def frac_pow(s, p):
    """|s|^p via exp(p*log|s|), with the exact-zero case handled explicitly."""
    s = np.asarray(s, dtype=np.float64)
    out = np.zeros_like(s)
    nz = s != 0.0
    out[nz] = np.exp(p * np.log(np.abs(s[nz])))
    return out


def _free_gaussian(x):
    return np.exp(-x ** 2 / 9.0 + 1j * x)


def _tunnel_smooth(x):
    s = x + 5.0
    return np.exp(-s ** 2 + 8j * s)


def _tunnel_h1(x):
    s = np.asarray(x, dtype=np.float64) + 8.0
    return frac_pow(s, 0.51) * np.exp(-s ** 2) * np.exp(4j * s)


def _tunnel_h2(x):
    s = np.asarray(x, dtype=np.float64) + 8.0
    return s * frac_pow(s, 0.51) * np.exp(-s ** 2) * np.exp(4j * s)


def _scatter_smooth(x, y):
    r2 = (x + 2.0) ** 2 + y ** 2
    return np.exp(-r2) * np.exp(4j * (x + 2.0))


def _scatter_h2(x, y):
    r2 = (x + 2.0) ** 2 + y ** 2
    return frac_pow(np.sqrt(r2), 1.02) * np.exp(-r2) * np.exp(4j * (x + 2.0))


INITIAL_DATA = {
    "free-gaussian": InitialData("free-gaussian", 1, np.inf, _free_gaussian),
    "tunnel-I": InitialData("tunnel-I", 1, np.inf, _tunnel_smooth),
    "tunnel-II-H1": InitialData("tunnel-II-H1", 1, 1.0, _tunnel_h1),
    "tunnel-III-H2": InitialData("tunnel-III-H2", 1, 2.0, _tunnel_h2),
    "scatter-I": InitialData("scatter-I", 2, np.inf, _scatter_smooth),
    "scatter-II-H2": InitialData("scatter-II-H2", 2, 2.0, _scatter_h2),
}


def _zero_potential(*coords):
    return np.zeros(np.broadcast(*coords).shape) if len(coords) > 1 \
        else np.zeros_like(np.asarray(coords[0], dtype=np.float64))


def _tunnel_bump(x):
    return 200.0 * bump(10.0 * np.asarray(x, dtype=np.float64))


_LATTICE_CENTERS = [(i, 6.0 * j / 5.0) for i in (-1, 0, 1) for j in range(-5, 6)]


def _lattice(x, y):
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    out = np.zeros(np.broadcast(x, y).shape)
    for cx, cy in _LATTICE_CENTERS:
        out += 10.0 * bump(4.0 * ((x - cx) ** 2 + (y - cy) ** 2))
    return out


POTENTIALS = {
    "zero": Potential("zero", 0, 0.0, _zero_potential),
    "tunnel-bump": Potential("tunnel-bump", 1, 0.1, _tunnel_bump),
    # bump argument 4*rho^2 <= 1 gives radius 1/2 around each lattice site
    "lattice": Potential("lattice", 2, 6.5, _lattice),
}


def get_initial(id):
    try:
        return INITIAL_DATA[id]
    except KeyError:
        raise KeyError(f"unknown initial-data id {id!r}; known: "
                       f"{sorted(INITIAL_DATA)}") from None


def get_potential(id):
    try:
        return POTENTIALS[id]
    except KeyError:
        raise KeyError(f"unknown potential id {id!r}; known: "
                       f"{sorted(POTENTIALS)}") from None


def eval_initial(id, *coords):
    return get_initial(id).fn(*coords)


def eval_potential(id, *coords):
    return get_potential(id).fn(*coords)


@dataclass(frozen=True)
class FreeGaussian:
    """Analytic free evolution of u0 = exp(-(x-x0)^2/sigma^2 + i k0 (x-x0)).

    Derived from the Fourier representation of the free propagator:

        u(x,t) = (1 + 4it/sigma^2)^(-1/2)
                 * exp(i k0 (x - x0 - k0 t))
                 * exp(-(x - x0 - 2 k0 t)^2 / (sigma^2 + 4it))

    which reproduces u0 at t = 0 and whose modulus peak travels at the group
    velocity 2*k0.  (The closed form printed alongside the original free-packet
    experiment is inconsistent at t = 0 and is not used.)
    """

    x0: float = 0.0
    sigma: float = 3.0
    k0: float = 1.0

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")

    def __call__(self, x, t):
        x = np.asarray(x, dtype=np.float64)
        s2 = self.sigma ** 2
        xi = x - self.x0
        amp = 1.0 / np.sqrt(1.0 + 4j * t / s2)
        phase = np.exp(1j * self.k0 * (xi - self.k0 * t))
        envelope = np.exp(-((xi - 2.0 * self.k0 * t) ** 2) / (s2 + 4j * t))
        return amp * phase * envelope

    def _modulus_sq_params(self, t):
        """|u(.,t)|^2 = B exp(-(x-mu)^2/w^2); returns (B, mu, w)."""
        s2 = self.sigma ** 2
        B = 1.0 / math.sqrt(1.0 + 16.0 * t ** 2 / s2 ** 2)
        mu = self.x0 + 2.0 * self.k0 * t
        w = math.sqrt((s2 ** 2 + 16.0 * t ** 2) / (2.0 * s2))
        return B, mu, w

    def tail_mass(self, X, t):
        """Integral of |u(.,t)|^2 over |x| > X (exact, via erfc)."""
        B, mu, w = self._modulus_sq_params(t)
        return B * w * math.sqrt(math.pi) / 2.0 * (
            erfc((X - mu) / w) + erfc((X + mu) / w))

    def total_mass(self):
        """L2 norm squared, conserved by the free flow."""
        B, _, w = self._modulus_sq_params(0.0)
        return B * w * math.sqrt(math.pi)


def exact_free_solution(x, t, x0=0.0, sigma=3.0, k0=1.0):
    """Convenience wrapper around FreeGaussian for single evaluations."""
    return FreeGaussian(x0=x0, sigma=sigma, k0=k0)(x, t)
