"""End-to-end hybrid run: views, certificates, gating, validation, fallback.

Phases:

1. three residue views, each keeping its top ``coverage * k`` bins;
2. pre-gating bucket occupancy check;
3. Garner reconstruction of all view-1 x view-2 residue pairs, alias
   expansion into [0, N), 2-of-3 gating against view 3;
3b. candidate-count check on raw admissions, candidate-level occupancy check;
4. Goertzel validation of the surviving candidates.

Any certificate failure reverts to a dense transform plus top-k selection.
All work is metered in an OpCounter (see ``opcount`` for the unit).
"""

import heapq
import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .certificates import (
    CERT_BUCKET,
    CERT_COUNT,
    CERT_NONE,
    VERDICT_FAIL,
    VERDICT_PASS,
    CertificateReport,
    bucket_occupancy_candidates,
    bucket_occupancy_pregate,
    candidate_count_check,
    phase_consistency,
)
from .crt_gating import Candidate, ModuliConfig, gate_candidates
from .dft_engine import decimated_view, fft_any, goertzel_mag
from .errors import ConfigurationError
from .opcount import OpCounter, butterfly_model
from .signal_model import Signal

PATH_SPARSE = "sparse"
PATH_FALLBACK = "fallback"

FORCE_AUTO = "auto"
FORCE_SPARSE = "sparse"
FORCE_DENSE = "dense"

Peak = Tuple[int, float]


@dataclass(frozen=True)
class HybridConfig:
    """Tuning knobs for one hybrid run."""

    k: int
    moduli: ModuliConfig
    coverage: int = 2
    bucket_threshold: int = 3
    count_factor: int = 3
    validation_threshold_rel: float = 0.01
    validation_threshold_abs: float = 1e-9
    force_path: str = FORCE_AUTO

    def __post_init__(self):
        if self.k < 0:
            raise ConfigurationError("k must be nonnegative")
        if self.coverage < 1:
            raise ConfigurationError("coverage must be >= 1")
        if self.bucket_threshold < 1 or self.count_factor < 1:
            raise ConfigurationError("thresholds must be positive")
        if self.validation_threshold_rel <= 0 or self.validation_threshold_abs <= 0:
            raise ConfigurationError("validation thresholds must be positive")
        if self.force_path not in (FORCE_AUTO, FORCE_SPARSE, FORCE_DENSE):
            raise ConfigurationError(f"bad force_path {self.force_path!r}")


@dataclass(frozen=True)
class HybridResult:
    """Recovered peaks plus the evidence of how they were obtained.

    ``peaks`` is sorted by magnitude descending (ties toward lower frequency).
    ``survivors_prededup`` / ``survivors_dedup`` are the gating admission and
    deduplicated candidate counts; ``validated_count`` is how many candidates
    survived Goertzel validation (0 on the fallback path).
    """

    peaks: Tuple[Peak, ...]
    path: str
    certificates: CertificateReport
    ops: OpCounter
    dense_ops_reference: int
    survivors_prededup: int
    survivors_dedup: int
    validated_count: int

    def as_dict(self) -> dict:
        return {
            "peaks": [[int(f), float(m)] for f, m in self.peaks],
            "path": self.path,
            "certificates": self.certificates.as_dict(),
            "ops": self.ops.as_dict(),
            "dense_ops_reference": int(self.dense_ops_reference),
            "survivors_prededup": int(self.survivors_prededup),
            "survivors_dedup": int(self.survivors_dedup),
            "validated_count": int(self.validated_count),
        }


def dense_topk(x: Signal, k: int, ops: Optional[OpCounter] = None) -> List[Peak]:
    """k largest-magnitude bins of the full transform, ties toward lower index."""
    if not 0 <= k <= x.n:
        raise ValueError(f"k={k} must lie in [0, {x.n}]")
    spectrum = fft_any(x, ops)
    mags = np.abs(spectrum.coeffs)
    order = np.argsort(-mags, kind="stable")[:k]
    return [(int(i), float(mags[i])) for i in order]


def goertzel_validate(
    x: Signal,
    cands: Sequence[Candidate],
    cfg: HybridConfig,
    ops: Optional[OpCounter] = None,
) -> List[Peak]:
    """Measure each candidate bin exactly; keep those above the threshold.

    The threshold is ``max(abs_floor, rel * max measured magnitude)`` so it is
    scale-invariant for noiseless inputs while still rejecting empty bins.
    """
    if not cands:
        return []
    measured = [(c.freq, goertzel_mag(x, c.freq, ops)) for c in cands]
    peak = max(m for _, m in measured)
    threshold = max(
        cfg.validation_threshold_abs, cfg.validation_threshold_rel * peak
    )
    return [(f, m) for f, m in measured if m > threshold]


def _top_peaks(validated: Sequence[Peak], k: int) -> Tuple[Peak, ...]:
    best = heapq.nsmallest(k, ((-m, f) for f, m in validated))
    return tuple((f, -neg) for neg, f in best)


def _pass_report(cfg: HybridConfig, occ_pre=0, occ_cand=0, count=0, phase=None):
    return CertificateReport(
        max_bucket_occupancy_pregate=occ_pre,
        max_bucket_occupancy_candidates=occ_cand,
        candidate_count=count,
        candidate_count_threshold=cfg.count_factor * cfg.k,
        bucket_threshold=cfg.bucket_threshold,
        phase_max_error=phase,
        verdict=VERDICT_PASS,
        failing_certificate=CERT_NONE,
    )


def _fail_report(cfg: HybridConfig, failing, occ_pre, occ_cand, count, phase=None):
    return CertificateReport(
        max_bucket_occupancy_pregate=occ_pre,
        max_bucket_occupancy_candidates=occ_cand,
        candidate_count=count,
        candidate_count_threshold=cfg.count_factor * cfg.k,
        bucket_threshold=cfg.bucket_threshold,
        phase_max_error=phase,
        verdict=VERDICT_FAIL,
        failing_certificate=failing,
    )


def run_hybrid(x: Signal, cfg: HybridConfig) -> HybridResult:
    """Run the certificate-guarded sparse path, falling back to dense on failure.

    For an exactly k-sparse on-grid input the returned peak frequency set
    equals ``dense_topk(x, k)`` regardless of which path executes.
    """
    moduli = cfg.moduli
    if moduli.n != x.n:
        raise ConfigurationError(
            f"moduli configured for n={moduli.n} but signal has n={x.n}"
        )
    ops = OpCounter()
    dense_ref = butterfly_model(x.n)

    if cfg.force_path == FORCE_DENSE:
        peaks = tuple(dense_topk(x, cfg.k, ops))
        return HybridResult(
            peaks, PATH_FALLBACK, _pass_report(cfg), ops, dense_ref, 0, 0, 0
        )

    if cfg.k == 0:
        return HybridResult(
            (), PATH_SPARSE, _pass_report(cfg), ops, dense_ref, 0, 0, 0
        )

    select_count = cfg.coverage * cfg.k
    views = tuple(
        decimated_view(x, m, select_count, ops) for m in moduli.moduli
    )

    occ_pre = bucket_occupancy_pregate(views)
    if occ_pre > cfg.bucket_threshold and cfg.force_path != FORCE_SPARSE:
        peaks = tuple(dense_topk(x, cfg.k, ops))
        report = _fail_report(cfg, CERT_BUCKET, occ_pre, 0, 0)
        return HybridResult(peaks, PATH_FALLBACK, report, ops, dense_ref, 0, 0, 0)

    gate = gate_candidates(
        views[0].selected, views[1].selected, views[2].selected, moduli, ops
    )
    occ_cand = bucket_occupancy_candidates(gate.candidates, moduli)
    count_ok = candidate_count_check(
        gate.survivors_prededup, cfg.k, cfg.count_factor
    )
    bucket_ok = (
        occ_pre <= cfg.bucket_threshold and occ_cand <= cfg.bucket_threshold
    )

    if not (count_ok and bucket_ok):
        failing = CERT_COUNT if not count_ok else CERT_BUCKET
        if cfg.force_path != FORCE_SPARSE:
            peaks = tuple(dense_topk(x, cfg.k, ops))
            report = _fail_report(
                cfg, failing, occ_pre, occ_cand, gate.survivors_prededup
            )
            return HybridResult(
                peaks,
                PATH_FALLBACK,
                report,
                ops,
                dense_ref,
                gate.survivors_prededup,
                len(gate.candidates),
                0,
            )
        verdict_failing = failing
    else:
        verdict_failing = CERT_NONE

    validated = goertzel_validate(x, gate.candidates, cfg, ops)
    phase_err, _flags = phase_consistency(gate.candidates, views, moduli)
    peaks = _top_peaks(validated, cfg.k)
    if verdict_failing == CERT_NONE:
        report = _pass_report(
            cfg, occ_pre, occ_cand, gate.survivors_prededup, phase_err
        )
    else:
        report = _fail_report(
            cfg, verdict_failing, occ_pre, occ_cand, gate.survivors_prededup, phase_err
        )
    return HybridResult(
        peaks,
        PATH_SPARSE,
        report,
        ops,
        dense_ref,
        gate.survivors_prededup,
        len(gate.candidates),
        len(validated),
    )


def predict_costs(n: int, k: int, c: int) -> Tuple[float, float, float]:
    """Closed-form cost model: (expected candidates, sparse ops, dense ops).

    expected = k + k^3 c^3 / sqrt(n); sparse = 1.5 sqrt(n) log2(n) + expected*n;
    dense = n log2(n).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if k < 0 or c < 1:
        raise ValueError("need k >= 0 and c >= 1")
    expected = k + (k**3) * (c**3) / math.sqrt(n)
    sparse = 1.5 * math.sqrt(n) * math.log2(n) + expected * n
    dense = n * math.log2(n)
    return expected, sparse, dense
