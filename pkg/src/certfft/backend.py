"""Kernel backend selection.

The hot inner loops (radix-2 butterflies, Goertzel recurrence) exist twice:
jitted with numba in ``_kernels_numba`` and as plain numpy/Python code in
``_kernels_numpy``.  Selection happens once at import time:

* ``CERTFFT_BACKEND=numpy``  -> force the pure-numpy kernels
* ``CERTFFT_BACKEND=numba``  -> require numba (ImportError if missing)
* unset or ``auto``          -> numba when importable, numpy otherwise

``benchmarks/backend_bench.py`` times both implementations side by side.
"""

import os

_requested = os.getenv("CERTFFT_BACKEND", "auto").strip().lower() or "auto"

if _requested in ("numpy", "python"):
    USING_NUMBA = False
elif _requested in ("auto", "numba"):
    try:
        import numba  # noqa: F401

        USING_NUMBA = True
    except ImportError:
        if _requested == "numba":
            raise
        USING_NUMBA = False
else:
    raise ValueError(
        f"unknown CERTFFT_BACKEND={_requested!r}; expected 'auto', 'numba' or 'numpy'"
    )

if USING_NUMBA:
    from . import _kernels_numba as kernels
else:
    from . import _kernels_numpy as kernels

BACKEND_NAME = "numba" if USING_NUMBA else "numpy"

radix2_fft_inplace = kernels.radix2_fft_inplace
goertzel_mag_kernel = kernels.goertzel_mag


def backend_name() -> str:
    """Name of the kernel backend selected at import time."""
    return BACKEND_NAME
