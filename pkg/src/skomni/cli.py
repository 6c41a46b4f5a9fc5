"""Command-line interface.

Subcommands mirror the library: capacity, singleton, silent, omnivocality,
isentropy, hunt.  Model files are JSON and auto-detected: an object with
"atoms" is a joint pmf, one with "edges" is a PIN multigraph (analyzed in
exact rational arithmetic).  Text output prints floats with six decimals
and rationals as p/q; --json emits a single JSON object instead.

Exit codes: 0 success, 2 malformed input, 3 domain/size errors,
4 internal inconsistency (two routes to the same quantity disagreed).
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from . import subsets
from .capacity import (
    MinimizerStatus,
    singleton_minimizer_check,
    sk_capacity,
)
from .errors import (
    InputError,
    InternalInconsistencyError,
    InvalidPartitionError,
    InvalidSubsetError,
    PreconditionError,
    SizeLimitError,
)
from .isentropic import block_conditional_entropy, check_block_rate_monotone, isentropy_check
from .omnivocality import (
    OmniStatus,
    hunt_record,
    verdict_by_condition,
    verdict_by_lp,
    verdict_for_three_terminals,
)
from .partitions import format_partition
from .pin import PinGraph, PinOracle, pin_capacity
from .silent_rate import silent_capacity
from .sources import ExtendedPrecisionOracle, JointSource, TabularOracle


@dataclass(frozen=True)
class RunConfig:
    """Validated run-wide settings shared by the subcommands."""

    tolerance: float = 1e-9
    output: str = "text"  # "text" | "json"
    seed: int = 0
    trials: int = 1
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.tolerance > 0:
            raise InputError(f"tolerance must be positive, got {self.tolerance}")
        if self.output not in ("text", "json"):
            raise InputError(f"unknown output mode {self.output!r}")
        if self.trials < 1:
            raise InputError(f"trial count must be >= 1, got {self.trials}")
        if self.jobs < 1:
            raise InputError(f"jobs must be >= 1, got {self.jobs}")


Model = Union[JointSource, PinGraph]


def _load_model(path: str, renormalize: bool = False) -> Model:
    try:
        data = json.loads(open(path).read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None
    if isinstance(data, dict) and "edges" in data:
        return PinGraph.from_json_dict(data)
    if isinstance(data, dict) and "atoms" in data:
        return JointSource.from_json_dict(data, renormalize=renormalize)
    raise InputError(f"{path} has neither 'atoms' (source) nor 'edges' (PIN graph)")


def _oracle(model: Model):
    return PinOracle(model) if isinstance(model, PinGraph) else TabularOracle(model)


def _fmt(value: Any) -> str:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return f"{float(value):.6f}"


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    return float(value)


def _emit(config: RunConfig, payload: dict[str, Any], text_lines: list[str]) -> int:
    if config.output == "json":
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)
    return 0


def _config(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        tolerance=getattr(args, "tol", 1e-9),
        output="json" if getattr(args, "json", False) else "text",
        seed=getattr(args, "seed", 0),
        trials=getattr(args, "trials", 1),
        jobs=getattr(args, "jobs", 1),
    )


def cmd_capacity(args: argparse.Namespace) -> int:
    config = _config(args)
    model = _load_model(args.model, args.renormalize)
    if isinstance(model, PinGraph):
        report = pin_capacity(model)
    else:
        report = sk_capacity(TabularOracle(model), config.tolerance)
    argmin = [format_partition(p) for p in report.argmin]
    payload = {
        "m": model.m,
        "exact": report.exact,
        "capacity": _jsonable(report.value),
        "argmin": argmin,
        "partitions_examined": report.partitions_examined,
    }
    lines = [
        f"C = {_fmt(report.value)} bits; argmin: {' '.join(argmin)}",
        f"partitions examined: {report.partitions_examined}",
    ]
    return _emit(config, payload, lines)


def cmd_singleton(args: argparse.Namespace) -> int:
    config = _config(args)
    model = _load_model(args.model, args.renormalize)
    verdict = singleton_minimizer_check(_oracle(model), args.method, config.tolerance)
    payload: dict[str, Any] = {
        "status": verdict.status.value,
        "method": verdict.method,
        "comparisons": verdict.comparisons,
        "witness": None,
    }
    head = f"{verdict.status.value} ({verdict.comparisons} comparisons)"
    lines = [head]
    if verdict.witness is not None:
        w = verdict.witness
        literal = format_partition(w.partition)
        payload["witness"] = {
            "partition": literal,
            "surplus": _jsonable(w.surplus),
            "singleton_surplus": _jsonable(w.singleton_surplus),
        }
        label = {
            MinimizerStatus.NON_UNIQUE: "tie at",
            MinimizerStatus.NOT_MINIMIZER: "beaten at",
            MinimizerStatus.AMBIGUOUS: "undecided at",
        }[verdict.status]
        lines[0] = f"{head}; {label} {literal}"
        lines.append(
            f"surplus({literal}) = {_fmt(w.surplus)}; "
            f"surplus(singletons) = {_fmt(w.singleton_surplus)}"
        )
    return _emit(config, payload, lines)


def cmd_silent(args: argparse.Namespace) -> int:
    config = _config(args)
    model = _load_model(args.model, args.renormalize)
    oracle = _oracle(model)
    speakers = subsets.parse_subset(args.speakers, oracle.m)
    report = silent_capacity(oracle, speakers)
    payload = {
        "speakers": subsets.format_subset(speakers),
        "speakers_entropy": _jsonable(report.speakers_entropy),
        "min_sum_rate": _jsonable(report.min_sum_rate),
        "capacity": _jsonable(report.capacity),
        "rates": {str(t): _jsonable(r) for t, r in report.rates.items()},
        "binding": [
            {"subset": subsets.format_subset(c.speakers_subset), "bound": _jsonable(c.lower_bound)}
            for c in report.binding
        ],
        "sum_rate_bound": _jsonable(report.sum_rate_bound)
        if report.sum_rate_bound is not None
        else None,
    }
    rates = ", ".join(f"R{t} = {_fmt(r)}" for t, r in sorted(report.rates.items()))
    lines = [
        f"speakers: {subsets.format_subset(speakers)}",
        f"H(speakers) = {_fmt(report.speakers_entropy)}",
        f"R_min = {_fmt(report.min_sum_rate)}",
        f"C_restricted = {_fmt(report.capacity)}",
        f"rates: {rates}",
        "binding: " + "; ".join(subsets.format_subset(c.speakers_subset) for c in report.binding),
    ]
    if report.sum_rate_bound is not None:
        lines.append(f"sum-rate lower bound = {_fmt(report.sum_rate_bound)}")
    return _emit(config, payload, lines)


def _omnivocality_lines(verdict) -> list[str]:
    lines = [f"{verdict.method}: {verdict.status.value}"]
    if verdict.status is OmniStatus.UNKNOWN:
        lines[0] += " (condition is only sufficient; no verdict without it)"
    if verdict.silent_witness is not None:
        w = verdict.silent_witness
        lines[0] += (
            f"; construction: {w.construction.value}"
            f"; silent {{{subsets.format_subset(w.silent)}}}"
        )
    if verdict.w_set:
        lines.append(f"  cut-surplus witnesses W = {{{subsets.format_subset(verdict.w_set)}}}")
    for row in verdict.evidence:
        lines.append(
            f"  speakers {subsets.format_subset(row.speakers)}: "
            f"C_restricted = {_fmt(row.silent_capacity)}, "
            f"C = {_fmt(row.capacity)}, gap = {_fmt(row.gap)}"
        )
    return lines


def _omnivocality_payload(verdict) -> dict[str, Any]:
    return {
        "method": verdict.method,
        "status": verdict.status.value,
        "silent_witness": None
        if verdict.silent_witness is None
        else {
            "silent": subsets.format_subset(verdict.silent_witness.silent),
            "construction": verdict.silent_witness.construction.value,
        },
        "w_set": subsets.format_subset(verdict.w_set) if verdict.w_set else None,
        "evidence": [
            {
                "speakers": subsets.format_subset(row.speakers),
                "silent_capacity": _jsonable(row.silent_capacity),
                "capacity": _jsonable(row.capacity),
                "gap": _jsonable(row.gap),
            }
            for row in verdict.evidence
        ],
    }


def cmd_omnivocality(args: argparse.Namespace) -> int:
    config = _config(args)
    model = _load_model(args.model, args.renormalize)
    methods = [args.method] if args.method != "all" else ["condition", "lp"]
    oracle = _oracle(model)
    if args.method == "all" and oracle.m == 3:
        methods.append("three")
    runner = {
        "condition": verdict_by_condition,
        "lp": verdict_by_lp,
        "three": verdict_for_three_terminals,
    }

    def run_all(oracle, band):
        return [runner[name](oracle, band) for name in methods]

    if args.dps and isinstance(model, JointSource):
        import mpmath

        with mpmath.workdps(args.dps):
            verdicts = run_all(ExtendedPrecisionOracle(model), mpmath.mpf(10) ** -(args.dps // 2))
    else:
        verdicts = run_all(oracle, config.tolerance)

    conclusive = {v.status for v in verdicts} & {OmniStatus.NECESSARY, OmniStatus.NOT_NECESSARY}
    if len(conclusive) > 1:
        raise InternalInconsistencyError(
            "methods disagree: " + ", ".join(f"{v.method}={v.status.value}" for v in verdicts)
        )
    if conclusive:
        overall = next(iter(conclusive)).value
    elif any(v.status is OmniStatus.AMBIGUOUS for v in verdicts):
        overall = OmniStatus.AMBIGUOUS.value
    else:
        overall = OmniStatus.UNKNOWN.value
    lines: list[str] = []
    for v in verdicts:
        lines.extend(_omnivocality_lines(v))
    if len(verdicts) > 1:
        lines.append(f"verdict: {overall} (methods agree)")
    payload = {
        "verdict": overall,
        "methods": [_omnivocality_payload(v) for v in verdicts],
    }
    return _emit(config, payload, lines)


def cmd_isentropy(args: argparse.Namespace) -> int:
    config = _config(args)
    model = _load_model(args.model, args.renormalize)
    oracle = _oracle(model)
    profile = isentropy_check(oracle, config.tolerance)
    blocks = [block_conditional_entropy(oracle, k) for k in range(1, oracle.m + 1)]
    monotone = violation = None
    if profile.status == "yes":
        monotone, violation = check_block_rate_monotone(oracle, config.tolerance)
    payload = {
        "isentropic": profile.status,
        "levels": [_jsonable(v) for v in profile.levels] if profile.levels else None,
        "spreads": [_jsonable(s) for s in profile.spreads],
        "block_conditional_entropies": [_jsonable(b) for b in blocks],
        "block_rate_monotone": monotone,
    }
    lines = [f"isentropic: {profile.status}"]
    if profile.levels:
        lines.append("levels: " + " ".join(_fmt(v) for v in profile.levels))
    if profile.worst is not None:
        lines.append(
            f"worst spread {_fmt(profile.worst.spread)} between "
            f"{subsets.format_subset(profile.worst.low_subset)} and "
            f"{subsets.format_subset(profile.worst.high_subset)}"
        )
    lines.append("block conditional entropies: " + " ".join(_fmt(b) for b in blocks))
    if monotone is not None:
        lines.append(f"normalized block rate non-decreasing: {'yes' if monotone else 'no'}")
        if violation is not None:
            lines.append(
                f"  violated at k={violation.k}: {_fmt(violation.rate_k)} > {_fmt(violation.rate_next)}"
            )
    return _emit(config, payload, lines)


def _hunt_worker(packed: tuple[int, tuple[int, ...], int, int, float]) -> dict[str, Any]:
    m, alphabet_sizes, seed, trial, tol = packed
    return hunt_record(m, alphabet_sizes, seed, trial, tol)


def _parse_alphabet(text: str, m: int) -> tuple[int, ...]:
    try:
        parts = [int(p) for p in text.split(",")]
    except ValueError:
        raise InputError(f"bad alphabet spec {text!r}") from None
    if len(parts) == 1:
        parts = parts * m
    if len(parts) != m or any(s < 2 for s in parts):
        raise InputError(f"alphabet spec {text!r} does not fit m={m} (sizes >= 2)")
    return tuple(parts)


def cmd_hunt(args: argparse.Namespace) -> int:
    config = _config(args)
    if args.m < 4:
        raise SizeLimitError("hunt targets m >= 4 (smaller m is decided exactly)")
    alphabet = _parse_alphabet(args.alphabet, args.m)
    jobs = [(args.m, alphabet, config.seed, trial, config.tolerance) for trial in range(config.trials)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(_hunt_worker, jobs, chunksize=8))
    else:
        records = [_hunt_worker(job) for job in jobs]
    counts: dict[str, int] = {}
    with open(args.out, "w") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
            counts[record["classification"]] = counts.get(record["classification"], 0) + 1
    payload = {
        "m": args.m,
        "trials": config.trials,
        "seed": config.seed,
        "alphabet_sizes": list(alphabet),
        "out": args.out,
        "counts": counts,
    }
    lines = [f"{k}: {v}" for k, v in sorted(counts.items())]
    lines.append(f"log written to {args.out}")
    return _emit(config, payload, lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skomni",
        description="Secret-key capacity and omnivocality analysis of "
        "multiterminal sources (joint pmfs or PIN multigraphs).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, model: bool = True) -> None:
        if model:
            p.add_argument("model", help="JSON file: joint pmf ('atoms') or PIN graph ('edges')")
            p.add_argument(
                "--renormalize",
                action="store_true",
                help="rescale atom probabilities to sum to 1 before validating",
            )
        p.add_argument("--json", action="store_true", help="emit a single JSON object")
        p.add_argument("--tol", type=float, default=1e-9, help="comparison tolerance band")

    p = sub.add_parser("capacity", help="secret-key capacity and minimizing partitions")
    common(p)
    p.set_defaults(func=cmd_capacity)

    p = sub.add_parser("singleton", help="is the all-singletons partition the surplus minimizer?")
    common(p)
    p.add_argument(
        "--method",
        choices=["isolating", "brute"],
        default="isolating",
        help="compare against isolating partitions only, or all partitions",
    )
    p.set_defaults(func=cmd_singleton)

    p = sub.add_parser("silent", help="capacity when only the given terminals speak")
    common(p)
    p.add_argument("--speakers", required=True, help="speaker subset, e.g. 1,2")
    p.set_defaults(func=cmd_silent)

    p = sub.add_parser("omnivocality", help="must all terminals speak to reach capacity?")
    common(p)
    p.add_argument(
        "--method",
        choices=["condition", "lp", "three", "all"],
        default="all",
        help="decision route (three = exact m=3 characterization)",
    )
    p.add_argument(
        "--dps",
        type=int,
        default=0,
        help="re-run tabular sources at this many decimal digits of precision",
    )
    p.set_defaults(func=cmd_omnivocality)

    p = sub.add_parser("isentropy", help="per-size entropy levels and block-rate monotonicity")
    common(p)
    p.set_defaults(func=cmd_isentropy)

    p = sub.add_parser("hunt", help="search random sources for conjecture counterexamples")
    common(p, model=False)
    p.add_argument("--m", type=int, required=True, help="number of terminals (>= 4)")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--alphabet", default="2", help="alphabet sizes, single int or m comma-separated")
    p.add_argument("--out", default="hunt.jsonl", help="JSONL log path")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_hunt)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidSubsetError, InvalidPartitionError, SizeLimitError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InternalInconsistencyError as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
