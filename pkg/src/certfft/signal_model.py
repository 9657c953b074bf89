"""Signal model: sparse spectra, synthesis, the brute-force DFT oracle, file I/O.

The synthesis convention is ``x[t] = (1/N) * sum_f A_f * exp(+2j*pi*f*t/N)``,
so the unnormalized DFT of a synthesized signal returns the specified
amplitudes exactly: ``dft_naive(synthesize(spec))[f] == A_f``.
"""

import struct
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple

import numpy as np

from .errors import InvalidSpecError, SignalFormatError

_MAGIC = b"SFFT1"
_HEADER_LEN = len(_MAGIC) + 8  # magic + u64 length
_RECORD_LEN = 16  # two little-endian float64 per sample


@dataclass(frozen=True)
class Signal:
    """Length-N sequence of complex time-domain samples."""

    samples: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.samples, dtype=np.complex128)
        if arr.ndim != 1:
            raise ValueError("signal samples must be one-dimensional")
        if arr.size < 1:
            raise ValueError("signal must contain at least one sample")
        object.__setattr__(self, "samples", arr)

    @property
    def n(self) -> int:
        return int(self.samples.size)


@dataclass(frozen=True)
class Spectrum:
    """Length-N sequence of complex DFT coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("spectrum must be a one-dimensional, non-empty array")
        object.__setattr__(self, "coeffs", arr)

    @property
    def n(self) -> int:
        return int(self.coeffs.size)


@dataclass(frozen=True)
class SparseSpec:
    """A k-sparse spectrum given as distinct (frequency, complex amplitude) tones.

    Parameters
    ----------
    n : int
        Transform length; all tone frequencies must lie in ``[0, n)``.
    tones : sequence of (int, complex)
        Frequency/amplitude pairs.  Frequencies must be distinct.
    """

    n: int
    tones: Tuple[Tuple[int, complex], ...]

    def __post_init__(self):
        if int(self.n) < 1:
            raise InvalidSpecError("spectrum length must be positive")
        object.__setattr__(self, "n", int(self.n))
        norm = []
        seen = set()
        for freq, amp in self.tones:
            f = int(freq)
            if not 0 <= f < self.n:
                raise InvalidSpecError(f"tone frequency {f} outside [0, {self.n})")
            if f in seen:
                raise InvalidSpecError(f"duplicate tone frequency {f}")
            seen.add(f)
            norm.append((f, complex(amp)))
        object.__setattr__(self, "tones", tuple(norm))

    @property
    def k(self) -> int:
        return len(self.tones)


def synthesize(spec: SparseSpec) -> Signal:
    """Build the time-domain signal whose unnormalized DFT equals ``spec``.

    Parameters
    ----------
    spec : SparseSpec
        Target spectrum.

    Returns
    -------
    Signal
        ``x[t] = (1/N) * sum_f A_f * exp(+2j*pi*f*t/N)``.

    Notes
    -----
    The exponent is reduced modulo N in integer arithmetic before the complex
    exponential is taken, so phases stay exact even for long signals.
    """
    n = spec.n
    t = np.arange(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.complex128)
    for freq, amp in spec.tones:
        acc += amp * np.exp(2j * np.pi * ((freq * t) % n) / n)
    acc /= n
    return Signal(acc)


def random_sparse(
    n: int,
    k: int,
    seed: int,
    amp_range: Tuple[float, float] = (1.0, 2.0),
) -> SparseSpec:
    """Draw a random k-sparse spectrum, fully determined by ``seed``.

    Frequencies are k distinct values uniform over ``[0, n)``; amplitude
    magnitudes are uniform over ``amp_range`` with uniform random phase.
    Randomness comes from ``numpy.random.Generator(PCG64(seed))``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} must satisfy 0 <= k <= n={n}")
    lo, hi = float(amp_range[0]), float(amp_range[1])
    if not (0.0 < lo <= hi):
        raise ValueError("amp_range must satisfy 0 < min <= max")
    rng = np.random.Generator(np.random.PCG64(seed))
    freqs = np.sort(rng.choice(n, size=k, replace=False))
    mags = rng.uniform(lo, hi, size=k)
    phases = rng.uniform(0.0, 2.0 * np.pi, size=k)
    tones = tuple(
        (int(f), complex(m * np.exp(1j * p))) for f, m, p in zip(freqs, mags, phases)
    )
    return SparseSpec(n, tones)


def dft_naive(x: Signal) -> Spectrum:
    """Reference O(N^2) DFT straight from the definition.

    ``X[f] = sum_n x[n] * exp(-2j*pi*f*n/N)``.  This is the independent oracle
    the fast paths are tested against; keep it free of FFT machinery.
    """
    n = x.n
    idx = np.arange(n, dtype=np.int64)
    phase = np.outer(idx, idx) % n
    w = np.exp(-2j * np.pi * phase / n)
    return Spectrum(w @ x.samples)


def save_signal(x: Signal, path) -> None:
    """Write ``x`` in the SFFT1 binary format.

    Layout: 5-byte ASCII magic ``SFFT1``, unsigned 64-bit little-endian N,
    then N records of two IEEE-754 little-endian float64 (real, imag).
    """
    data = np.empty(2 * x.n, dtype="<f8")
    data[0::2] = x.samples.real
    data[1::2] = x.samples.imag
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<Q", x.n))
        fh.write(data.tobytes())


def load_signal(path) -> Signal:
    """Read an SFFT1 file written by :func:`save_signal` (bit-exact round trip)."""
    blob = Path(path).read_bytes()
    if len(blob) < len(_MAGIC) or blob[: len(_MAGIC)] != _MAGIC:
        raise SignalFormatError(
            f"bad magic: expected {_MAGIC!r}, got {blob[:len(_MAGIC)]!r}", offset=0
        )
    if len(blob) < _HEADER_LEN:
        raise SignalFormatError("truncated header: missing sample count", offset=len(blob))
    (n,) = struct.unpack("<Q", blob[len(_MAGIC) : _HEADER_LEN])
    if n == 0:
        raise SignalFormatError("header declares zero samples", offset=len(_MAGIC))
    expected = _HEADER_LEN + _RECORD_LEN * n
    if len(blob) < expected:
        raise SignalFormatError(
            f"truncated payload: header declares {n} samples "
            f"({expected} bytes total), file ends early",
            offset=len(blob),
        )
    if len(blob) > expected:
        raise SignalFormatError(
            f"trailing data after {n} samples", offset=expected
        )
    raw = np.frombuffer(blob, dtype="<f8", offset=_HEADER_LEN, count=2 * int(n))
    return Signal(raw[0::2] + 1j * raw[1::2])
