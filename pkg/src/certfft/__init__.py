"""certfft: certificate-guarded sparse FFT with dense fallback.

Recovers k-sparse spectra from three residue views (coprime decimation),
reconstructs candidate frequencies with two-residue CRT, gates them against
the third view, and validates survivors with exact single-bin evaluation.
Deterministic safety certificates (bucket occupancy, candidate count) divert
structured-collision inputs to a dense transform, so worst-case cost stays at
the dense bound.  An adversary lab constructs the collision patterns the
certificates exist to catch.
"""

__version__ = "0.1.0"

from .backend import BACKEND_NAME, USING_NUMBA, backend_name
from .crt_gating import (
    AffineCoeffs,
    Candidate,
    GateResult,
    ModuliConfig,
    affine_coeffs,
    alias_expand,
    garner2,
    gate_candidates,
    mod_inverse,
)
from .certificates import (
    CertificateReport,
    PhaseFlag,
    bucket_occupancy_candidates,
    bucket_occupancy_pregate,
    candidate_count_check,
    phase_consistency,
)
from .adversary import (
    AdversarialPlan,
    build_aligned_sets,
    build_moduli,
    count_survivors_oracle,
    predict_survivors_degenerate,
    predict_survivors_formula,
    symmetric_difference_set,
    synthesize_adversarial,
)
from .dft_engine import (
    ResidueView,
    decimate,
    decimated_view,
    fft_any,
    goertzel_mag,
    top_k_select,
)
from .errors import (
    CertFFTError,
    ConfigurationError,
    ConstructionError,
    DivisibilityError,
    InvalidSpecError,
    NoInverseError,
    SignalFormatError,
)
from .opcount import OpCounter, butterfly_model
from .pipeline import (
    HybridConfig,
    HybridResult,
    dense_topk,
    goertzel_validate,
    predict_costs,
    run_hybrid,
)
from .signal_model import (
    Signal,
    SparseSpec,
    Spectrum,
    dft_naive,
    load_signal,
    random_sparse,
    save_signal,
    synthesize,
)

__all__ = [
    "AdversarialPlan",
    "AffineCoeffs",
    "BACKEND_NAME",
    "Candidate",
    "CertFFTError",
    "CertificateReport",
    "ConfigurationError",
    "ConstructionError",
    "DivisibilityError",
    "GateResult",
    "HybridConfig",
    "HybridResult",
    "InvalidSpecError",
    "ModuliConfig",
    "NoInverseError",
    "OpCounter",
    "PhaseFlag",
    "ResidueView",
    "Signal",
    "SignalFormatError",
    "SparseSpec",
    "Spectrum",
    "USING_NUMBA",
    "affine_coeffs",
    "alias_expand",
    "backend_name",
    "bucket_occupancy_candidates",
    "bucket_occupancy_pregate",
    "build_aligned_sets",
    "build_moduli",
    "butterfly_model",
    "candidate_count_check",
    "count_survivors_oracle",
    "decimate",
    "decimated_view",
    "dense_topk",
    "dft_naive",
    "fft_any",
    "garner2",
    "gate_candidates",
    "goertzel_mag",
    "goertzel_validate",
    "load_signal",
    "mod_inverse",
    "phase_consistency",
    "predict_costs",
    "predict_survivors_degenerate",
    "predict_survivors_formula",
    "random_sparse",
    "run_hybrid",
    "save_signal",
    "symmetric_difference_set",
    "synthesize",
    "synthesize_adversarial",
    "top_k_select",
]
