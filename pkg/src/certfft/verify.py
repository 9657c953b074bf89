"""Self-check suites behind the ``verify`` CLI command.

Each suite re-derives a core identity with an independent brute-force route
and reports (name, passed, detail).  ``quick=True`` shrinks case counts for
smoke runs.
"""

import math
from itertools import product as iter_product
from typing import List, Tuple

import numpy as np

from .crt_gating import ModuliConfig, affine_coeffs, garner2
from .dft_engine import decimate, fft_any, goertzel_mag
from .signal_model import Signal, dft_naive

SuiteResult = Tuple[str, bool, str]


def _random_signal(rng: np.random.Generator, n: int) -> Signal:
    return Signal(rng.standard_normal(n) + 1j * rng.standard_normal(n))


def garner_exhaustive(quick: bool = False) -> SuiteResult:
    """Both congruences hold and the pair map is bijective, all coprime moduli."""
    limit = 12 if quick else 30
    cases = 0
    for m1 in range(1, limit + 1):
        for m2 in range(1, limit + 1):
            if math.gcd(m1, m2) != 1:
                continue
            seen = set()
            for r1, r2 in iter_product(range(m1), range(m2)):
                f = garner2(r1, r2, m1, m2)
                cases += 1
                if f % m1 != r1 or f % m2 != r2 or not 0 <= f < m1 * m2:
                    return (
                        "garner-exhaustive",
                        False,
                        f"congruence violated at ({r1},{r2}) mod ({m1},{m2})",
                    )
                seen.add(f)
            if len(seen) != m1 * m2:
                return (
                    "garner-exhaustive",
                    False,
                    f"map not bijective for ({m1},{m2})",
                )
    return ("garner-exhaustive", True, f"{cases} residue pairs checked")


def affine_identity(quick: bool = False) -> SuiteResult:
    """Garner mod m3 equals u*r1 + v*r2 mod m3 on vulnerable configs."""
    cases = 0
    cfg = ModuliConfig(10, 21, 6, 210)
    co = affine_coeffs(cfg)
    for r1, r2 in iter_product(range(10), range(21)):
        cases += 1
        if garner2(r1, r2, 10, 21) % 6 != (co.u * r1 + co.v * r2) % 6:
            return ("affine-identity", False, f"(10,21,6) fails at ({r1},{r2})")
    big = ModuliConfig(1081, 1073, 667, 1081 * 1073)
    cb = affine_coeffs(big)
    rng = np.random.Generator(np.random.PCG64(2024))
    samples = 1_000 if quick else 10_000
    for _ in range(samples):
        r1 = int(rng.integers(0, 1081))
        r2 = int(rng.integers(0, 1073))
        cases += 1
        if garner2(r1, r2, 1081, 1073) % 667 != (cb.u * r1 + cb.v * r2) % 667:
            return (
                "affine-identity",
                False,
                f"(1081,1073,667) fails at ({r1},{r2})",
            )
    return ("affine-identity", True, f"{cases} residue pairs checked")


def aliasing_identity(quick: bool = False) -> SuiteResult:
    """d * X_d[r] equals the sum of full-spectrum bins congruent to r."""
    lengths = (12, 16) if quick else (12, 16, 60, 210)
    per_length = 3 if quick else 10
    rng = np.random.Generator(np.random.PCG64(7))
    cases = 0
    for n in lengths:
        divisors = [m for m in range(1, n + 1) if n % m == 0]
        for _ in range(per_length):
            x = _random_signal(rng, n)
            full = dft_naive(x).coeffs
            scale = float(np.abs(full).max())
            for m in divisors:
                d = n // m
                dec = fft_any(decimate(x, d)).coeffs
                folded = full.reshape(d, m).sum(axis=0)
                cases += m
                if not np.allclose(d * dec, folded, rtol=0, atol=1e-9 * scale):
                    return (
                        "aliasing-identity",
                        False,
                        f"identity fails for n={n}, m={m}",
                    )
    return ("aliasing-identity", True, f"{cases} residue bins checked")


def goertzel_vs_naive(quick: bool = False) -> SuiteResult:
    """Goertzel single-bin magnitude matches the naive DFT bin."""
    rng = np.random.Generator(np.random.PCG64(99))
    samples = 100 if quick else 1_000
    for i in range(samples):
        n = int(rng.integers(1, 257))
        x = _random_signal(rng, n)
        f = int(rng.integers(0, n))
        expect = abs(dft_naive(x).coeffs[f])
        got = goertzel_mag(x, f)
        scale = max(expect, 1.0)
        if abs(got - expect) > 1e-9 * scale:
            return (
                "goertzel-vs-naive",
                False,
                f"case {i}: n={n} f={f} |err|={abs(got - expect):.3e}",
            )
    return ("goertzel-vs-naive", True, f"{samples} random bins checked")


def run_all(quick: bool = False) -> List[SuiteResult]:
    return [
        garner_exhaustive(quick),
        affine_identity(quick),
        aliasing_identity(quick),
        goertzel_vs_naive(quick),
    ]
