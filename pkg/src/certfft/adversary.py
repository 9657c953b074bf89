"""Worst-case input construction for the gated CRT pipeline.

With moduli built as m1 = g1*p, m2 = g2*q, m3 = g1*g2 (four distinct primes),
m3 divides m1*m2 and the mod-m3 reduction of Garner reconstruction is affine:
f = u*r1 + v*r2 (mod m3).  Aligned arithmetic progressions in views 1 and 2
then make every residue pair land on view-3 residues, so all k^2 pairs pass
gating.

Under these hypotheses the progression steps are forced to multiples of g1
and g2 respectively, which drives the common step image L to 0 (mod m3): all
pairs collapse onto a single view-3 residue and the realized survivor count
is exactly k^2.  ``predict_survivors_formula`` exposes the more general
difference-set count ``sum_{d in S} (k - |d|)`` as a standalone function for
non-degenerate difference sets.
"""

import json
import math
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Optional, Sequence, Tuple

from .crt_gating import ModuliConfig, affine_coeffs, garner2
from .errors import ConstructionError
from .signal_model import Signal, SparseSpec, synthesize


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


def build_moduli(
    g1: int, g2: int, m1p: int, m2p: int, n: Optional[int] = None
) -> ModuliConfig:
    """Moduli (g1*m1p, g2*m2p, g1*g2) from four distinct primes.

    ``n`` defaults to m1*m2, making every modulus an exact divisor of the
    signal length.  The result is always vulnerable (m3 | m1*m2) and never
    pairwise coprime.
    """
    primes = (int(g1), int(g2), int(m1p), int(m2p))
    for p in primes:
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
    if len(set(primes)) != 4:
        raise ValueError(f"primes must be distinct, got {primes}")
    g1, g2, m1p, m2p = primes
    m1, m2, m3 = g1 * m1p, g2 * m2p, g1 * g2
    if n is None:
        n = m1 * m2
    else:
        n = int(n)
        for m in (m1, m2, m3):
            if n % m != 0:
                raise ValueError(f"n={n} is not a multiple of modulus {m}")
    return ModuliConfig(m1=m1, m2=m2, m3=m3, n=n)


def _shared_factor(m3: int, m1: int) -> int:
    """Largest divisor of m3 composed entirely of primes dividing m1."""
    g = 1
    rest = m3
    while True:
        d = math.gcd(rest, m1)
        if d == 1:
            return g
        g *= d
        rest //= d


@dataclass(frozen=True)
class AdversarialPlan:
    """A fully determined adversarial instance.

    ``r1_set``/``r2_set`` are the aligned progressions, ``r3_set`` the view-3
    residues the gating test will accept, ``true_freqs`` the k planted tones
    (identity pairing).  ``base`` and ``step_image`` (L) describe the affine
    image: pair (i, j) maps to ``base + (i - j) * L`` modulo m3.
    """

    moduli: ModuliConfig
    k: int
    a0: int
    b0: int
    d_a: int
    d_b: int
    diff_set: Tuple[int, ...]
    pairing: Tuple[int, ...]
    base: int
    step_image: int
    r1_set: Tuple[int, ...]
    r2_set: Tuple[int, ...]
    r3_set: Tuple[int, ...]
    true_freqs: Tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "moduli": {
                "m1": self.moduli.m1,
                "m2": self.moduli.m2,
                "m3": self.moduli.m3,
                "n": self.moduli.n,
            },
            "k": self.k,
            "a0": self.a0,
            "b0": self.b0,
            "d_a": self.d_a,
            "d_b": self.d_b,
            "diff_set": list(self.diff_set),
            "pairing": list(self.pairing),
            "base": self.base,
            "step_image": self.step_image,
            "r1_set": list(self.r1_set),
            "r2_set": list(self.r2_set),
            "r3_set": list(self.r3_set),
            "true_freqs": list(self.true_freqs),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "AdversarialPlan":
        mod = data["moduli"]
        return cls(
            moduli=ModuliConfig(mod["m1"], mod["m2"], mod["m3"], mod["n"]),
            k=int(data["k"]),
            a0=int(data["a0"]),
            b0=int(data["b0"]),
            d_a=int(data["d_a"]),
            d_b=int(data["d_b"]),
            diff_set=tuple(data["diff_set"]),
            pairing=tuple(data["pairing"]),
            base=int(data["base"]),
            step_image=int(data["step_image"]),
            r1_set=tuple(data["r1_set"]),
            r2_set=tuple(data["r2_set"]),
            r3_set=tuple(data["r3_set"]),
            true_freqs=tuple(data["true_freqs"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "AdversarialPlan":
        return cls.from_dict(json.loads(text))


def build_aligned_sets(
    cfg: ModuliConfig, k: int, a0: int = 0, b0: int = 0
) -> AdversarialPlan:
    """Aligned arithmetic-progression residue sets for a vulnerable config.

    Steps are the smallest positive multiples of the shared factors
    (d_a = gcd-part of m3 in m1, d_b = the complementary part), which satisfy
    the alignment congruence ``u*d_a = v*d_b (mod m3)`` with common image 0.
    Raises ConstructionError when k distinct progression elements do not fit.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not cfg.vulnerable:
        raise ConstructionError(
            f"moduli ({cfg.m1}, {cfg.m2}, {cfg.m3}) are not vulnerable: "
            "m3 must divide m1*m2"
        )
    if not 0 <= a0 < cfg.m1:
        raise ValueError(f"a0={a0} outside [0, {cfg.m1})")
    if not 0 <= b0 < cfg.m2:
        raise ValueError(f"b0={b0} outside [0, {cfg.m2})")

    g1 = _shared_factor(cfg.m3, cfg.m1)
    g2 = cfg.m3 // g1
    if cfg.m1 % g1 != 0 or cfg.m2 % g2 != 0:
        raise ConstructionError(
            f"cannot split m3={cfg.m3} into factors dividing m1 and m2"
        )
    coeffs = affine_coeffs(cfg)
    d_a, d_b = g1, g2
    step_image = (coeffs.u * d_a) % cfg.m3
    if step_image != (coeffs.v * d_b) % cfg.m3:
        raise ConstructionError("alignment congruence failed; moduli unusable")
    base = (coeffs.u * a0 + coeffs.v * b0) % cfg.m3

    if k > 0:
        max1 = cfg.m1 // g1
        max2 = cfg.m2 // g2
        if k > max1:
            raise ConstructionError(
                f"need {k} distinct residues modulo {cfg.m1} with step {d_a}; "
                f"only {max1} exist"
            )
        if k > max2:
            raise ConstructionError(
                f"need {k} distinct residues modulo {cfg.m2} with step {d_b}; "
                f"only {max2} exist"
            )

    r1_set = tuple((a0 + i * d_a) % cfg.m1 for i in range(k))
    r2_set = tuple((b0 - j * d_b) % cfg.m2 for j in range(k))
    diff_set: Tuple[int, ...] = (0,) if k > 0 else ()
    r3_set = tuple(sorted({(base + s * step_image) % cfg.m3 for s in diff_set}))
    pairing = tuple(range(k))
    true_freqs = tuple(
        garner2(r1_set[i], r2_set[pairing[i]], cfg.m1, cfg.m2) for i in range(k)
    )
    if len(set(true_freqs)) != k:
        raise ConstructionError("planted frequencies collide; construction invalid")
    return AdversarialPlan(
        moduli=cfg,
        k=k,
        a0=a0,
        b0=b0,
        d_a=d_a,
        d_b=d_b,
        diff_set=diff_set,
        pairing=pairing,
        base=base,
        step_image=step_image,
        r1_set=r1_set,
        r2_set=r2_set,
        r3_set=r3_set,
        true_freqs=true_freqs,
    )


def predict_survivors_formula(k: int, diff_set: Sequence[int]) -> int:
    """Survivor count ``sum_{d in S} (k - |d|)`` for a difference set S."""
    seen = set()
    total = 0
    for d in diff_set:
        d = int(d)
        if abs(d) >= k:
            raise ValueError(f"difference {d} must satisfy |d| < k={k}")
        if d in seen:
            raise ValueError(f"difference set contains duplicate {d}")
        seen.add(d)
        total += k - abs(d)
    return total


def predict_survivors_degenerate(k: int) -> int:
    """All-pairs survivor count k^2 for the fully collapsed (L = 0) regime."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return k * k


def symmetric_difference_set(k: int) -> Tuple[int, ...]:
    """The k differences {0, +1, -1, +2, -2, ...} used for survivor-count bounds."""
    out = [0]
    step = 1
    while len(out) < k:
        out.append(step)
        if len(out) < k:
            out.append(-step)
        step += 1
    return tuple(out[:k])


def synthesize_adversarial(plan: AdversarialPlan) -> Signal:
    """Unit-amplitude zero-phase tones at the plan's planted frequencies.

    Positive real amplitudes cannot cancel inside a shared residue bin, so
    every planted tone is guaranteed to show up in all three views.
    """
    if plan.moduli.n != plan.moduli.product:
        raise ConstructionError(
            "adversarial synthesis requires n == m1*m2 "
            f"(got n={plan.moduli.n}, m1*m2={plan.moduli.product})"
        )
    spec = SparseSpec(plan.moduli.n, tuple((f, 1 + 0j) for f in plan.true_freqs))
    return synthesize(spec)


def count_survivors_oracle(plan: AdversarialPlan) -> int:
    """Brute-force count of residue pairs whose Garner image passes gating."""
    accept = set(plan.r3_set)
    cfg = plan.moduli
    count = 0
    for r1, r2 in iter_product(plan.r1_set, plan.r2_set):
        if garner2(r1, r2, cfg.m1, cfg.m2) % cfg.m3 in accept:
            count += 1
    return count
