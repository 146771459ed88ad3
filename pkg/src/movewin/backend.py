"""Kernel-backend selection and FFT worker configuration.

The compiled extension `movewin._kernels` is preferred when importable;
otherwise the NumPy fallback `movewin._kernels_py` is used.  Setting the
environment variable ``MOVEWIN_FORCE_PYTHON`` (to any non-empty value) forces
the fallback, which is how the benchmark compares the two paths.

``MOVEWIN_THREADS`` caps the parallelism of the FFT backend (default 1,
keeping runs deterministic and sandbox-friendly).
"""

import os

from movewin import _kernels_py

if os.environ.get("MOVEWIN_FORCE_PYTHON"):
    kernels = _kernels_py
else:
    try:
        from movewin import _kernels as kernels  # type: ignore[no-redef]
    except ImportError:
        kernels = _kernels_py

USING_COMPILED = kernels.IMPLEMENTATION == "cython"


def fft_workers():
    """Worker count passed to scipy.fft (capped by MOVEWIN_THREADS)."""
    raw = os.environ.get("MOVEWIN_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        n = 1
    return max(1, n)
