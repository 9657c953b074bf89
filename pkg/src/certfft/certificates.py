"""Deterministic safety certificates.

Two occupancy readings are computed.  The pre-gating one measures residue
multiplicity inside each view's selected list; with deduplicated selections it
can never exceed 1, so it is reported for interface fidelity but fires only on
malformed inputs.  The candidate-level one counts how many gated candidates
share a residue bin per view, which is the reading that actually detects
collision pile-ups.  Fallback triggers on either exceeding the bucket
threshold, or on the raw survivor count exceeding ``count_factor * k``.

The phase certificate is a diagnostic: it never changes the pipeline verdict.
Its default model expects bins holding a single candidate to carry the tone's
own phase (stride decimation starting at sample 0 adds no offset); the
alternative ``linear_offset`` model adds ``2*pi*f*(d_i - 1)/(2N)`` per view
for consumers that assume a centered sampling grid.
"""

import math
from collections import Counter
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .crt_gating import Candidate, ModuliConfig
from .dft_engine import ResidueView

VERDICT_PASS = "pass"
VERDICT_FAIL = "fail"
CERT_NONE = "none"
CERT_BUCKET = "bucket"
CERT_COUNT = "count"

PHASE_ZERO_OFFSET = "zero_offset"
PHASE_LINEAR_OFFSET = "linear_offset"


@dataclass(frozen=True)
class CertificateReport:
    """Measurements plus the thresholds they were judged against."""

    max_bucket_occupancy_pregate: int
    max_bucket_occupancy_candidates: int
    candidate_count: int
    candidate_count_threshold: int
    bucket_threshold: int
    phase_max_error: Optional[float]
    verdict: str
    failing_certificate: str

    def __post_init__(self):
        if self.verdict not in (VERDICT_PASS, VERDICT_FAIL):
            raise ValueError(f"bad verdict {self.verdict!r}")
        if self.failing_certificate not in (CERT_NONE, CERT_BUCKET, CERT_COUNT):
            raise ValueError(f"bad failing_certificate {self.failing_certificate!r}")
        if (self.verdict == VERDICT_FAIL) != (self.failing_certificate != CERT_NONE):
            raise ValueError("verdict and failing_certificate disagree")

    def as_dict(self) -> dict:
        return {
            "max_bucket_occupancy_pregate": int(self.max_bucket_occupancy_pregate),
            "max_bucket_occupancy_candidates": int(self.max_bucket_occupancy_candidates),
            "candidate_count": int(self.candidate_count),
            "candidate_count_threshold": int(self.candidate_count_threshold),
            "bucket_threshold": int(self.bucket_threshold),
            "phase_max_error": (
                None if self.phase_max_error is None else float(self.phase_max_error)
            ),
            "verdict": self.verdict,
            "failing_certificate": self.failing_certificate,
        }


def bucket_occupancy_pregate(views: Sequence[ResidueView]) -> int:
    """Max residue multiplicity within any view's selected list (0 if empty)."""
    best = 0
    for view in views:
        counts = Counter(r for r, _ in view.selected)
        if counts:
            best = max(best, max(counts.values()))
    return best


def bucket_occupancy_candidates(
    cands: Sequence[Candidate], cfg: ModuliConfig
) -> int:
    """Max number of candidates sharing one residue bin across the three views."""
    best = 0
    for m in cfg.moduli:
        counts = Counter(c.freq % m for c in cands)
        if counts:
            best = max(best, max(counts.values()))
    return best


def candidate_count_check(count: int, k: int, factor: int = 3) -> bool:
    """True (pass) iff ``count <= factor * k``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    if factor < 1:
        raise ValueError("factor must be >= 1")
    return count <= factor * k


@dataclass(frozen=True)
class PhaseFlag:
    """Per-candidate phase check outcome.

    ``status`` is ``ok``/``inconsistent``/``indeterminate``;
    ``indeterminate_views`` lists 1-based views skipped because the
    candidate's bin there is shared with another candidate (or empty).
    """

    freq: int
    status: str
    max_error: Optional[float]
    indeterminate_views: Tuple[int, ...]


def _wrap_angle(x: float) -> float:
    return (x + math.pi) % (2.0 * math.pi) - math.pi


def phase_consistency(
    cands: Sequence[Candidate],
    views: Sequence[ResidueView],
    cfg: ModuliConfig,
    tol: float = 1e-6,
    model: str = PHASE_ZERO_OFFSET,
) -> Tuple[float, List[PhaseFlag]]:
    """Compare measured cross-view phase differences against the chosen model.

    Only bins holding exactly one candidate are measurable; a candidate with
    fewer than two measurable views is flagged indeterminate.  Returns the
    max absolute error (radians) over all evaluated view pairs, and one flag
    per candidate.  Diagnostic only.
    """
    if model not in (PHASE_ZERO_OFFSET, PHASE_LINEAR_OFFSET):
        raise ValueError(f"unknown phase model {model!r}")
    bin_load = [
        Counter(c.freq % view.modulus for c in cands) for view in views
    ]
    flags: List[PhaseFlag] = []
    overall = 0.0
    for cand in cands:
        corrected = []
        indeterminate = []
        for i, view in enumerate(views):
            r = cand.freq % view.modulus
            if bin_load[i][r] != 1 or abs(view.spectrum[r]) == 0.0:
                indeterminate.append(i + 1)
                continue
            measured = float(np.angle(view.spectrum[r]))
            if model == PHASE_LINEAR_OFFSET:
                stride = cfg.n / view.modulus
                measured -= 2.0 * math.pi * cand.freq * (stride - 1.0) / (2.0 * cfg.n)
            corrected.append(measured)
        if len(corrected) < 2:
            flags.append(
                PhaseFlag(cand.freq, "indeterminate", None, tuple(indeterminate))
            )
            continue
        err = 0.0
        for a in range(len(corrected)):
            for b in range(a + 1, len(corrected)):
                err = max(err, abs(_wrap_angle(corrected[a] - corrected[b])))
        overall = max(overall, err)
        status = "ok" if err <= tol else "inconsistent"
        flags.append(PhaseFlag(cand.freq, status, err, tuple(indeterminate)))
    return overall, flags
