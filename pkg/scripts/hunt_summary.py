"""Summarize a counterexample-hunt log and rank the candidates.

Reads the JSONL file written by ``skomni hunt`` and prints the
classification counts, then the candidate records ordered by how close
their tightest leave-one-out gap sits to zero (the most marginal, and
therefore most suspect, candidates come first).  Candidates carry their
full source payload in the log, so ``--dump-worst`` can extract the
single most marginal one into a model file for re-runs at higher
precision, e.g. ``skomni omnivocality worst.json --dps 80``.

Usage: python scripts/hunt_summary.py hunt.jsonl [--top 10] [--dump-worst worst.json]
"""

import argparse
import json
from collections import Counter


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("log", help="JSONL file written by the hunt subcommand")
    parser.add_argument("--top", type=int, default=10, help="candidates to list")
    parser.add_argument("--dump-worst", metavar="PATH",
                        help="write the most marginal candidate's source here")
    args = parser.parse_args()

    with open(args.log) as fh:
        records = [json.loads(line) for line in fh if line.strip()]
    if not records:
        print("empty log")
        return 1

    counts = Counter(r["classification"] for r in records)
    for name, count in sorted(counts.items()):
        print(f"{name}: {count}")

    candidates = [r for r in records if r["classification"] == "CandidateCounterexample"]
    if not candidates:
        print("no candidates")
        return 0

    candidates.sort(key=lambda r: min(abs(g) for g in r["gaps"]))
    print(f"\n{'trial':>6} {'seed':>6}  {'digest':<16} {'min |gap|':>12} {'capacity':>10}")
    for r in candidates[: args.top]:
        min_gap = min(abs(g) for g in r["gaps"])
        print(f"{r['trial']:>6} {r['seed']:>6}  {r['atoms_digest']:<16} "
              f"{min_gap:>12.3e} {r['capacity']:>10.6f}")

    if args.dump_worst:
        with open(args.dump_worst, "w") as fh:
            json.dump(candidates[0]["source"], fh, indent=2)
        print(f"\nmost marginal candidate (trial {candidates[0]['trial']}) "
              f"written to {args.dump_worst}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
