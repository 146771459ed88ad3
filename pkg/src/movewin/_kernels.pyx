# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the hot kernels (see _kernels_py for contracts)."""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, exp, fabs, sin

cnp.import_array()

IMPLEMENTATION = "cython"

cdef double RAMP_FLOOR = 1e-300


def step_combine(cnp.complex128_t[::1] u, cnp.complex128_t[::1] w,
                 cnp.complex128_t[::1] exp_sym, cnp.complex128_t[::1] phi1_sym,
                 double tau):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(n, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef double complex itau = 1j * tau
    with nogil:
        for i in range(n):
            o[i] = exp_sym[i] * u[i] - itau * (phi1_sym[i] * w[i])
    return out


def bump_profile(cnp.float64_t[::1] z):
    cdef Py_ssize_t i, n = z.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.zeros(n, dtype=np.float64)
    cdef cnp.float64_t[::1] o = out
    with nogil:
        for i in range(n):
            if fabs(z[i]) < 1.0:
                o[i] = exp(-1.0 / (1.0 - z[i] * z[i]))
    return out


cdef inline double _h(double y) nogil:
    if y <= RAMP_FLOOR:
        return 0.0
    return exp(-1.0 / y)


def ramp_profile(cnp.float64_t[::1] y):
    cdef Py_ssize_t i, n = y.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(n, dtype=np.float64)
    cdef cnp.float64_t[::1] o = out
    cdef double ha, hb
    with nogil:
        for i in range(n):
            if y[i] <= 0.0:
                o[i] = 1.0
            elif y[i] >= 1.0:
                o[i] = 0.0
            else:
                ha = _h(y[i])
                hb = _h(1.0 - y[i])
                o[i] = hb / (ha + hb)
    return out


cdef inline double complex _cis(double t) nogil:
    return cos(t) + 1j * sin(t)


def trig_eval(cnp.complex128_t[::1] coeffs_ascending, cnp.float64_t[::1] theta,
              Py_ssize_t block=512):
    """Direct evaluation of sum_k c_k e^{i k theta_m}, k = -N..N ascending.

    Uses a unit-modulus phase recurrence per point; `block` is accepted for
    interface parity with the NumPy fallback and ignored.
    """
    cdef Py_ssize_t m, j, npts = theta.shape[0], nmodes = coeffs_ascending.shape[0]
    cdef long nmax = (nmodes - 1) // 2
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] out = np.empty(npts, dtype=np.complex128)
    cdef cnp.complex128_t[::1] o = out
    cdef double complex acc, phase, stepf
    cdef double th
    with nogil:
        for m in range(npts):
            th = theta[m]
            stepf = _cis(th)
            phase = _cis(-nmax * th)
            acc = 0
            for j in range(nmodes):
                acc = acc + coeffs_ascending[j] * phase
                phase = phase * stepf
            o[m] = acc
    return out
