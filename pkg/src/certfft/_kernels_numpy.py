"""Pure-numpy kernel fallbacks (no numba required).

``radix2_fft_inplace`` runs the identical radix-2 schedule as the jitted
kernel with the butterflies vectorized per stage.  ``goertzel_mag`` runs the
same second-order recurrence in plain Python; it is exact but slow, which is
the trade the fallback backend makes.
"""

import numpy as np


def radix2_fft_inplace(a):
    """In-place iterative radix-2 DFT of a complex128 array (power-of-two length)."""
    n = a.shape[0]
    if n <= 1:
        return a
    levels = n.bit_length() - 1
    rev = np.zeros(n, dtype=np.int64)
    work = np.arange(n, dtype=np.int64)
    for _ in range(levels):
        rev = (rev << 1) | (work & 1)
        work >>= 1
    a[:] = a[rev]
    length = 2
    while length <= n:
        half = length >> 1
        tw = np.exp(-2j * np.pi * np.arange(half) / length)
        blocks = a.reshape(-1, length)
        u = blocks[:, :half].copy()
        v = blocks[:, half:] * tw
        blocks[:, :half] = u + v
        blocks[:, half:] = u - v
        length <<= 1
    return a


def goertzel_mag(x, f):
    """Magnitude of DFT bin ``f`` via the second-order Goertzel recurrence."""
    n = x.shape[0]
    w = 2.0 * np.pi * f / n
    coeff = float(2.0 * np.cos(w))
    rot = complex(np.exp(-1j * w))
    s1 = 0j
    s2 = 0j
    for sample in x.tolist():
        s0 = sample + coeff * s1 - s2
        s2 = s1
        s1 = s0
    return abs(s1 - rot * s2)
