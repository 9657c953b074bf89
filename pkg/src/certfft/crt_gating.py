"""Modular arithmetic core: Garner reconstruction, affine gating structure,
alias expansion, and the 2-of-3 gated candidate generator.

Garner's two-residue formula ``f = r1 + m1 * ((r2 - r1) * inv(m1, m2) mod m2)``
is the unique solution of the pair of congruences in ``[0, m1*m2)``.  When
``m3 | m1*m2`` the map ``(r1, r2) -> f mod m3`` collapses to the affine form
``u*r1 + v*r2 mod m3``, which is what makes non-pairwise-coprime third moduli
exploitable; ``affine_coeffs`` exposes the (u, v) pair.
"""

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .errors import ConfigurationError, NoInverseError
from .opcount import OpCounter

# Products beyond 2^63 are rejected outright: frequencies are meant to fit
# unsigned 64-bit consumers, and desk-scale N sits far below this anyway.
_PRODUCT_LIMIT = 2**63

ResidueList = Sequence[Tuple[int, float]]


def mod_inverse(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` (m >= 2) via the extended Euclid loop."""
    m = int(m)
    if m < 2:
        raise ValueError("modulus must be at least 2")
    a = int(a) % m
    r0, r1 = a, m
    s0, s1 = 1, 0
    while r1:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if r0 != 1:
        raise NoInverseError(f"{a} is not invertible modulo {m} (gcd {r0})")
    return s0 % m


def _garner_base(r1: int, r2: int, m1: int, m2: int, gamma: int) -> int:
    if m2 == 1:
        return r1
    return r1 + m1 * (((r2 - r1) * gamma) % m2)


def _gamma_for(m1: int, m2: int) -> int:
    # gamma = inv(m1) mod m2; modulus 1 admits everything, use 0 as placeholder
    return 0 if m2 == 1 else mod_inverse(m1, m2)


def garner2(r1: int, r2: int, m1: int, m2: int) -> int:
    """Unique ``f`` in ``[0, m1*m2)`` with ``f = r1 (mod m1)``, ``f = r2 (mod m2)``."""
    m1, m2 = int(m1), int(m2)
    if m1 < 1 or m2 < 1:
        raise ValueError("moduli must be positive")
    if m1 * m2 > _PRODUCT_LIMIT:
        raise ValueError(f"modulus product {m1 * m2} exceeds the 2**63 contract")
    r1, r2 = int(r1), int(r2)
    if not 0 <= r1 < m1:
        raise ValueError(f"residue r1={r1} outside [0, {m1})")
    if not 0 <= r2 < m2:
        raise ValueError(f"residue r2={r2} outside [0, {m2})")
    if math.gcd(m1, m2) != 1:
        raise NoInverseError(f"moduli {m1}, {m2} are not coprime")
    return _garner_base(r1, r2, m1, m2, _gamma_for(m1, m2))


@dataclass(frozen=True)
class ModuliConfig:
    """The (m1, m2, m3) triple bound to a signal length ``n``.

    m1 and m2 must be coprime; m1 must divide n so view 1 is an exact
    decimation (it anchors the reconstruction).  m2 and m3 may be non-divisors,
    in which case their views are produced by exact spectral folding.
    """

    m1: int
    m2: int
    m3: int
    n: int

    def __post_init__(self):
        for name in ("m1", "m2", "m3", "n"):
            object.__setattr__(self, name, int(getattr(self, name)))
        if min(self.m1, self.m2, self.m3) < 1 or self.n < 1:
            raise ConfigurationError("moduli and signal length must be positive")
        if max(self.m1, self.m2, self.m3) > self.n:
            raise ConfigurationError("moduli cannot exceed the signal length")
        if self.m1 * self.m2 > _PRODUCT_LIMIT:
            raise ConfigurationError(
                f"m1*m2 = {self.m1 * self.m2} exceeds the 2**63 contract"
            )
        if math.gcd(self.m1, self.m2) != 1:
            raise ConfigurationError(
                f"m1={self.m1} and m2={self.m2} must be coprime"
            )
        if self.n % self.m1 != 0:
            raise ConfigurationError(
                f"view-1 modulus {self.m1} does not divide n={self.n}"
            )

    @property
    def moduli(self) -> Tuple[int, int, int]:
        return (self.m1, self.m2, self.m3)

    @property
    def product(self) -> int:
        """CRT range M = m1*m2."""
        return self.m1 * self.m2

    @property
    def d1(self) -> int:
        return self.n // self.m1

    @property
    def d2(self) -> Optional[int]:
        return self.n // self.m2 if self.n % self.m2 == 0 else None

    @property
    def d3(self) -> Optional[int]:
        return self.n // self.m3 if self.n % self.m3 == 0 else None

    @property
    def strides(self) -> Tuple[int, Optional[int], Optional[int]]:
        return (self.d1, self.d2, self.d3)

    @property
    def pairwise_coprime(self) -> bool:
        return (
            math.gcd(self.m1, self.m3) == 1
            and math.gcd(self.m2, self.m3) == 1
        )

    @property
    def vulnerable(self) -> bool:
        """True when m3 divides m1*m2, the structure the adversary lab exploits."""
        return (self.m1 * self.m2) % self.m3 == 0


@dataclass(frozen=True)
class AffineCoeffs:
    """gamma = inv(m1) mod m2, v = m1*gamma mod m3, u = (1 - v) mod m3."""

    gamma: int
    u: int
    v: int


def affine_coeffs(cfg: ModuliConfig) -> AffineCoeffs:
    """Coefficients of the mod-m3 reduction of Garner reconstruction.

    ``u + v = 1 (mod m3)`` always; when ``cfg.vulnerable`` the identity
    ``garner2(r1, r2) mod m3 == (u*r1 + v*r2) mod m3`` holds for all pairs.
    """
    gamma = _gamma_for(cfg.m1, cfg.m2)
    v = (cfg.m1 * gamma) % cfg.m3
    u = (1 - v) % cfg.m3
    return AffineCoeffs(gamma=gamma, u=u, v=v)


def alias_expand(f_base: int, big_m: int, n: int) -> List[int]:
    """All frequencies in ``[0, n)`` congruent to ``f_base`` modulo ``big_m``."""
    f_base, big_m, n = int(f_base), int(big_m), int(n)
    if big_m < 1:
        raise ValueError("modulus must be positive")
    if not 0 <= f_base < big_m:
        raise ValueError(f"base frequency {f_base} outside [0, {big_m})")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(range(f_base, n, big_m))


@dataclass(frozen=True)
class Candidate:
    """A reconstructed frequency with its cross-view magnitude estimate."""

    freq: int
    est_magnitude: float
    source: Tuple[int, int]


@dataclass(frozen=True)
class GateResult:
    """Gating output: deduplicated candidates plus the raw admission count.

    ``survivors_prededup`` counts every admitted (pair, alias) combination,
    which is the quantity the candidate-count certificate thresholds;
    ``candidates`` is deduplicated by frequency (max estimate kept) and
    sorted by frequency ascending.
    """

    candidates: Tuple[Candidate, ...]
    survivors_prededup: int


def _check_residues(residues: ResidueList, modulus: int, label: str) -> None:
    for r, _mag in residues:
        if not 0 <= int(r) < modulus:
            raise ValueError(f"{label} residue {r} outside [0, {modulus})")


def gate_candidates(
    r1_list: ResidueList,
    r2_list: ResidueList,
    r3_list: ResidueList,
    cfg: ModuliConfig,
    ops: Optional[OpCounter] = None,
) -> GateResult:
    """Reconstruct all view-1 x view-2 residue pairs and gate them on view 3.

    Every pair is pushed through Garner's formula; each alias of the result
    inside ``[0, n)`` is admitted iff its residue modulo m3 appears in the
    view-3 residue set (magnitudes in view 3 are ignored).  The candidate
    magnitude estimate is ``min(mag1, mag2)``.
    """
    _check_residues(r1_list, cfg.m1, "view-1")
    _check_residues(r2_list, cfg.m2, "view-2")
    _check_residues(r3_list, cfg.m3, "view-3")
    if math.gcd(cfg.m1, cfg.m2) != 1:
        raise NoInverseError(f"moduli {cfg.m1}, {cfg.m2} are not coprime")
    gamma = _gamma_for(cfg.m1, cfg.m2)
    gate_set = {int(r) for r, _ in r3_list}
    big_m = cfg.product
    if ops is not None:
        ops.crt_pair_ops += len(r1_list) * len(r2_list)
    kept = {}
    admissions = 0
    for r1, mag1 in r1_list:
        for r2, mag2 in r2_list:
            f_base = _garner_base(int(r1), int(r2), cfg.m1, cfg.m2, gamma)
            est = min(float(mag1), float(mag2))
            for f in range(f_base, cfg.n, big_m):
                if f % cfg.m3 not in gate_set:
                    continue
                admissions += 1
                prev = kept.get(f)
                if prev is None or est > prev.est_magnitude:
                    kept[f] = Candidate(freq=f, est_magnitude=est, source=(int(r1), int(r2)))
    ordered = tuple(kept[f] for f in sorted(kept))
    return GateResult(candidates=ordered, survivors_prededup=admissions)
