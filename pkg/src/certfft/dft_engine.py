"""Transforms and residue views.

``fft_any`` handles arbitrary lengths: iterative radix-2 for powers of two,
Bluestein's chirp-z embedding otherwise (direct evaluation below 64 samples,
where the embedding overhead is not worth it).  The inner butterfly loops
live in the selected kernel backend (see ``backend``).

A residue view at modulus m aggregates spectral energy by frequency class
``f mod m``.  When m divides N this is the decimated-signal DFT and costs
O(m log m) after an O(N/m)-stride gather.  When m does not divide N there is
no exact decimation; the view is then produced by folding the full-length
spectrum, which is exact but costs a full transform.  Both paths yield the
same values ``(m/N) * sum_{f = r (mod m)} X[f]``, so magnitudes are
comparable across mixed configurations.
"""

import heapq
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from . import backend
from .errors import DivisibilityError
from .opcount import OpCounter, butterfly_model
from .signal_model import Signal, Spectrum


@dataclass(frozen=True)
class ResidueView:
    """Per-modulus view: aliased spectrum plus the selected residue peaks.

    ``stride`` is the decimation stride ``N // modulus`` for exact views and
    ``None`` for folded views.  ``selected`` holds (residue, magnitude) pairs
    sorted by magnitude descending, residue ascending; zero bins never appear.
    """

    modulus: int
    stride: Optional[int]
    spectrum: np.ndarray
    selected: Tuple[Tuple[int, float], ...]

    @property
    def exact(self) -> bool:
        return self.stride is not None

    @property
    def residues(self) -> Tuple[int, ...]:
        return tuple(r for r, _ in self.selected)


def _dft_direct(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    idx = np.arange(n, dtype=np.int64)
    phase = np.outer(idx, idx) % n
    return np.exp(-2j * np.pi * phase / n) @ a


def _bluestein(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    m = 1 << (2 * n - 1).bit_length()
    j = np.arange(n, dtype=np.int64)
    # j^2 reduced mod 2n keeps the chirp argument small and the phase exact
    w = np.exp(-1j * np.pi * ((j * j) % (2 * n)) / n)
    padded = np.zeros(m, dtype=np.complex128)
    padded[:n] = a * w
    chirp = np.zeros(m, dtype=np.complex128)
    wc = np.conj(w)
    chirp[:n] = wc
    if n > 1:
        chirp[m - (n - 1):] = wc[1:][::-1]
    fa = backend.radix2_fft_inplace(padded)
    fb = backend.radix2_fft_inplace(chirp)
    prod = fa * fb
    np.conj(prod, out=prod)
    backend.radix2_fft_inplace(prod)
    np.conj(prod, out=prod)
    prod /= m
    return prod[:n] * w


def _fft_values(a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if n == 1:
        return a
    if n & (n - 1) == 0:
        return backend.radix2_fft_inplace(a)
    if n < 64:
        return _dft_direct(a)
    return _bluestein(a)


def fft_any(x: Signal, ops: Optional[OpCounter] = None) -> Spectrum:
    """Full DFT at any length; charges ``butterfly_model(n)`` ops."""
    if ops is not None:
        ops.fft_butterflies += butterfly_model(x.n)
    a = np.array(x.samples, dtype=np.complex128, copy=True)
    return Spectrum(_fft_values(a))


def decimate(x: Signal, d: int) -> Signal:
    """Keep every d-th sample.  ``d`` must divide the signal length exactly."""
    d = int(d)
    if d < 1:
        raise ValueError("decimation stride must be >= 1")
    if x.n % d != 0:
        raise DivisibilityError(
            f"stride {d} does not divide signal length {x.n}; "
            "exact decimation requires d | N"
        )
    return Signal(x.samples[::d].copy())


def _fold_spectrum(coeffs: np.ndarray, m: int) -> np.ndarray:
    pad = (-coeffs.size) % m
    if pad:
        coeffs = np.concatenate([coeffs, np.zeros(pad, dtype=np.complex128)])
    return coeffs.reshape(-1, m).sum(axis=0)


def top_k_select(spectrum: Spectrum, count: int) -> List[Tuple[int, float]]:
    """Heap-select up to ``count`` largest-magnitude bins.

    Bins at or below ``1e-12 * max magnitude`` are excluded so zero padding
    never produces phantom residues.  Ties break toward the lower bin index;
    the result is sorted by magnitude descending, then index ascending.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    mags = np.abs(spectrum.coeffs)
    if count == 0:
        return []
    floor = 1e-12 * float(mags.max())
    eligible = [(-float(mags[i]), i) for i in range(mags.size) if mags[i] > floor]
    top = heapq.nsmallest(count, eligible)
    return [(i, -neg) for neg, i in top]


def decimated_view(
    x: Signal,
    m: int,
    select_count: int,
    ops: Optional[OpCounter] = None,
) -> ResidueView:
    """Residue view at modulus ``m`` with its top ``select_count`` peaks.

    Exact decimation when ``m | N``; full-spectrum fold otherwise (see module
    notes).  Either way bin r holds ``(m/N) * sum_{f = r (mod m)} X[f]``.
    """
    m = int(m)
    if not 1 <= m <= x.n:
        raise ValueError(f"modulus {m} must lie in [1, {x.n}]")
    if select_count < 1:
        raise ValueError("select_count must be >= 1")
    if x.n % m == 0:
        stride = x.n // m
        values = fft_any(decimate(x, stride), ops).coeffs
    else:
        stride = None
        full = fft_any(x, ops).coeffs
        values = _fold_spectrum(full, m) * (m / x.n)
    spec = Spectrum(values)
    return ResidueView(
        modulus=m,
        stride=stride,
        spectrum=spec.coeffs,
        selected=tuple(top_k_select(spec, select_count)),
    )


def goertzel_mag(x: Signal, f: int, ops: Optional[OpCounter] = None) -> float:
    """|X[f]| for a single bin in O(N) via the Goertzel recurrence."""
    f = int(f)
    if not 0 <= f < x.n:
        raise ValueError(f"bin {f} outside [0, {x.n})")
    if ops is not None:
        ops.goertzel_iterations += x.n
    a = np.ascontiguousarray(x.samples, dtype=np.complex128)
    return float(backend.goertzel_mag_kernel(a, f))
