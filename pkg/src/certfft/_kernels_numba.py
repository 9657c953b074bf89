"""Numba-jitted hot loops.

Same contracts as ``_kernels_numpy``; see that module for the reference
semantics.  Twiddle factors are rebuilt per stage from ``np.exp`` so no
rounding error accumulates across butterflies.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def radix2_fft_inplace(a):
    """In-place iterative radix-2 DFT of a complex128 array (power-of-two length)."""
    n = a.shape[0]
    if n <= 1:
        return a
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            tmp = a[i]
            a[i] = a[j]
            a[j] = tmp
    length = 2
    while length <= n:
        half = length >> 1
        tw = np.exp(-2j * np.pi * np.arange(half) / length)
        for start in range(0, n, length):
            for t in range(half):
                u = a[start + t]
                v = a[start + half + t] * tw[t]
                a[start + t] = u + v
                a[start + half + t] = u - v
        length <<= 1
    return a


@njit(cache=True)
def goertzel_mag(x, f):
    """Magnitude of DFT bin ``f`` via the second-order Goertzel recurrence."""
    n = x.shape[0]
    w = 2.0 * np.pi * f / n
    coeff = 2.0 * np.cos(w)
    s1 = 0.0 + 0.0j
    s2 = 0.0 + 0.0j
    for i in range(n):
        s0 = x[i] + coeff * s1 - s2
        s2 = s1
        s1 = s0
    return abs(s1 - np.exp(-1j * w) * s2)
