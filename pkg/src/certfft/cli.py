"""Command-line interface.

Subcommands: ``synth`` (write a signal file), ``run`` (hybrid pipeline with a
JSON report), ``adversary`` (build a worst-case instance), ``verify``
(invariant self-checks), ``bench`` (sweep with CSV output).

Exit codes: 0 success (fallback is success), 1 verify failure, 2 bad
arguments or invalid synthesis/prime inputs, 3 infeasible moduli or
configuration, 4 file errors.
"""

import argparse
import csv
import json
import sys
import time
from pathlib import Path

from . import __version__
from .adversary import (
    build_aligned_sets,
    build_moduli,
    count_survivors_oracle,
    predict_survivors_degenerate,
    predict_survivors_formula,
    symmetric_difference_set,
    synthesize_adversarial,
)
from .crt_gating import ModuliConfig
from .errors import (
    ConfigurationError,
    ConstructionError,
    DivisibilityError,
    InvalidSpecError,
    NoInverseError,
    SignalFormatError,
)
from .pipeline import HybridConfig, predict_costs, run_hybrid
from .signal_model import (
    SparseSpec,
    load_signal,
    random_sparse,
    save_signal,
    synthesize,
)
from .verify import run_all

REPORT_SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_ARGS = 2
EXIT_BAD_MODULI = 3
EXIT_FILE_ERROR = 4

_CONFIG_ERRORS = (ConfigurationError, DivisibilityError, NoInverseError)
_FILE_ERRORS = (OSError, SignalFormatError)


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _parse_tones(text: str):
    tones = []
    for chunk in text.split(","):
        parts = chunk.split(":")
        if len(parts) != 3:
            raise InvalidSpecError(
                f"tone {chunk!r} is not of the form freq:re:im"
            )
        f, re_part, im_part = parts
        tones.append((int(f), complex(float(re_part), float(im_part))))
    return tuple(tones)


def cmd_synth(args) -> int:
    if (args.tones is None) == (args.random_k is None):
        return _fail(EXIT_BAD_ARGS, "exactly one of --tones / --random-k is required")
    try:
        if args.tones is not None:
            spec = SparseSpec(args.n, _parse_tones(args.tones))
        else:
            if args.seed is None:
                return _fail(EXIT_BAD_ARGS, "--random-k requires --seed")
            spec = random_sparse(
                args.n, args.random_k, args.seed, (args.amp_min, args.amp_max)
            )
        signal = synthesize(spec)
    except (InvalidSpecError, ValueError) as exc:
        return _fail(EXIT_BAD_ARGS, str(exc))
    try:
        save_signal(signal, args.out)
    except OSError as exc:
        return _fail(EXIT_FILE_ERROR, str(exc))
    print(f"wrote {args.out}: n={signal.n}, k={spec.k}")
    return EXIT_OK


def _build_report(args, result, signal_n: int, timing_ms: float) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "tool_version": __version__,
        "input": {
            "n": signal_n,
            "k": args.k,
            "moduli": {"m1": args.m1, "m2": args.m2, "m3": args.m3},
            "coverage": args.c,
            "thresholds": {
                "bucket": args.tau,
                "count_factor": args.count_factor,
                "validation_rel": 0.01,
                "validation_abs": 1e-9,
            },
            "force_path": args.force,
            "signal_path": str(args.infile),
        },
        "result": result.as_dict(),
        "timing_ms": timing_ms,
    }


def cmd_run(args) -> int:
    try:
        signal = load_signal(args.infile)
    except _FILE_ERRORS as exc:
        return _fail(EXIT_FILE_ERROR, str(exc))
    try:
        moduli = ModuliConfig(args.m1, args.m2, args.m3, signal.n)
        cfg = HybridConfig(
            k=args.k,
            moduli=moduli,
            coverage=args.c,
            bucket_threshold=args.tau,
            count_factor=args.count_factor,
            force_path=args.force,
        )
        start = time.perf_counter()
        result = run_hybrid(signal, cfg)
        timing_ms = (time.perf_counter() - start) * 1e3
    except _CONFIG_ERRORS as exc:
        return _fail(EXIT_BAD_MODULI, str(exc))
    except ValueError as exc:
        return _fail(EXIT_BAD_ARGS, str(exc))
    report = _build_report(args, result, signal.n, timing_ms)
    if args.report:
        try:
            Path(args.report).write_text(
                json.dumps(report, indent=2, sort_keys=True) + "\n"
            )
        except OSError as exc:
            return _fail(EXIT_FILE_ERROR, str(exc))
    print(f"path: {result.path}")
    print(
        f"certificates: {result.certificates.verdict}"
        f" (failing: {result.certificates.failing_certificate})"
    )
    print(f"ops: {result.ops.total} (dense reference {result.dense_ops_reference})")
    print("freq  magnitude")
    for freq, mag in result.peaks:
        print(f"{freq:>6d}  {mag:.12g}")
    return EXIT_OK


def cmd_adversary(args) -> int:
    try:
        moduli = build_moduli(args.g1, args.g2, args.m1p, args.m2p)
        plan = build_aligned_sets(moduli, args.k)
    except (ValueError, ConstructionError) as exc:
        return _fail(EXIT_BAD_ARGS, str(exc))
    signal = synthesize_adversarial(plan)
    oracle = count_survivors_oracle(plan)
    degenerate = predict_survivors_degenerate(plan.k)
    if plan.k > 0:
        formula = predict_survivors_formula(plan.k, symmetric_difference_set(plan.k))
    else:
        formula = 0
    try:
        save_signal(signal, args.out)
        Path(args.plan).write_text(plan.to_json() + "\n")
    except OSError as exc:
        return _fail(EXIT_FILE_ERROR, str(exc))
    print(
        f"moduli: (m1, m2, m3) = ({moduli.m1}, {moduli.m2}, {moduli.m3}), "
        f"n = {moduli.n}"
    )
    print(f"plan: k={plan.k} d_a={plan.d_a} d_b={plan.d_b} base={plan.base} "
          f"L={plan.step_image}")
    print(f"predicted survivors (difference-set formula): {formula}")
    print(f"predicted survivors (degenerate all-pairs):   {degenerate}")
    print(f"oracle survivors (brute force):               {oracle}")
    print(f"wrote signal to {args.out} and plan to {args.plan}")
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_all(quick=args.quick)
    failures = 0
    for name, passed, detail in results:
        tag = "PASS" if passed else "FAIL"
        if not passed:
            failures += 1
        print(f"{tag}  {name}: {detail}")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAIL


def _parse_sweep(text: str):
    if not text.startswith("k="):
        raise ValueError(f"bad sweep spec {text!r}; expected k=LO..HI")
    lo, sep, hi = text[2:].partition("..")
    if not sep:
        raise ValueError(f"bad sweep spec {text!r}; expected k=LO..HI")
    lo_i, hi_i = int(lo), int(hi)
    if lo_i < 0 or hi_i < lo_i:
        raise ValueError(f"bad sweep range {lo_i}..{hi_i}")
    return lo_i, hi_i


CSV_COLUMNS = [
    "k", "trial", "seed", "path",
    "survivors_predup", "survivors_dedup", "validated",
    "fft_ops", "goertzel_ops", "crt_ops", "total_ops", "dense_ref_ops",
    "predicted_candidates", "predicted_sparse_ops",
]


def cmd_bench(args) -> int:
    try:
        k_lo, k_hi = _parse_sweep(args.sweep)
        parts = [int(v) for v in args.moduli.split(",")]
        if len(parts) != 3:
            raise ValueError("--moduli expects m1,m2,m3")
        moduli = ModuliConfig(parts[0], parts[1], parts[2], args.n)
    except _CONFIG_ERRORS as exc:
        return _fail(EXIT_BAD_MODULI, str(exc))
    except ValueError as exc:
        return _fail(EXIT_BAD_ARGS, str(exc))
    rows = []
    for k in range(k_lo, k_hi + 1):
        expected, sparse_ops, _dense = predict_costs(args.n, k, args.c)
        for trial in range(args.trials):
            seed = args.seed + 1009 * k + trial
            spec = random_sparse(args.n, k, seed, (1.0, 2.0))
            signal = synthesize(spec)
            cfg = HybridConfig(k=k, moduli=moduli, coverage=args.c)
            result = run_hybrid(signal, cfg)
            rows.append({
                "k": k,
                "trial": trial,
                "seed": seed,
                "path": result.path,
                "survivors_predup": result.survivors_prededup,
                "survivors_dedup": result.survivors_dedup,
                "validated": result.validated_count,
                "fft_ops": result.ops.fft_butterflies,
                "goertzel_ops": result.ops.goertzel_iterations,
                "crt_ops": result.ops.crt_pair_ops,
                "total_ops": result.ops.total,
                "dense_ref_ops": result.dense_ops_reference,
                "predicted_candidates": f"{expected:.6g}",
                "predicted_sparse_ops": f"{sparse_ops:.6g}",
            })
    rows.sort(key=lambda r: (r["k"], r["trial"]))
    try:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        return _fail(EXIT_FILE_ERROR, str(exc))
    print(f"wrote {len(rows)} rows to {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="certfft",
        description="Certificate-guarded sparse FFT with dense fallback",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_synth = sub.add_parser("synth", help="synthesize a signal file")
    p_synth.add_argument("--n", type=int, required=True, help="signal length")
    p_synth.add_argument("--tones", help="comma list of freq:re:im tones")
    p_synth.add_argument("--random-k", type=int, help="draw k random tones")
    p_synth.add_argument("--seed", type=int, help="seed for --random-k")
    p_synth.add_argument("--amp-min", type=float, default=1.0)
    p_synth.add_argument("--amp-max", type=float, default=2.0)
    p_synth.add_argument("--out", required=True, help="output signal path")
    p_synth.set_defaults(func=cmd_synth)

    p_run = sub.add_parser("run", help="run the hybrid pipeline on a signal file")
    p_run.add_argument("--in", dest="infile", required=True, help="input signal")
    p_run.add_argument("--k", type=int, required=True, help="sparsity")
    p_run.add_argument("--m1", type=int, required=True)
    p_run.add_argument("--m2", type=int, required=True)
    p_run.add_argument("--m3", type=int, required=True)
    p_run.add_argument("--c", type=int, default=2, help="coverage multiplier")
    p_run.add_argument("--tau", type=int, default=3, help="bucket threshold")
    p_run.add_argument("--count-factor", type=int, default=3)
    p_run.add_argument("--force", choices=["auto", "sparse", "dense"],
                       default="auto")
    p_run.add_argument("--report", help="write a JSON run report here")
    p_run.set_defaults(func=cmd_run)

    p_adv = sub.add_parser("adversary", help="build a worst-case instance")
    p_adv.add_argument("--g1", type=int, required=True)
    p_adv.add_argument("--g2", type=int, required=True)
    p_adv.add_argument("--m1p", type=int, required=True)
    p_adv.add_argument("--m2p", type=int, required=True)
    p_adv.add_argument("--k", type=int, required=True)
    p_adv.add_argument("--out", required=True, help="output signal path")
    p_adv.add_argument("--plan", required=True, help="output plan JSON path")
    p_adv.set_defaults(func=cmd_adversary)

    p_verify = sub.add_parser("verify", help="run the invariant self-checks")
    p_verify.add_argument("--quick", action="store_true",
                          help="reduced iteration counts")
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="sweep sparsity levels, write CSV")
    p_bench.add_argument("--sweep", required=True, help="k=LO..HI")
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--moduli", required=True, help="m1,m2,m3")
    p_bench.add_argument("--trials", type=int, required=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--c", type=int, default=2)
    p_bench.add_argument("--csv", required=True, help="output CSV path")
    p_bench.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
