"""Tabulate complete-graph PIN sources: capacity, minimizer, verdicts.

For K_m every pair of terminals shares an independent uniform bit, the
capacity works out to m/2 exactly, and the singleton partition is the
unique minimizer, so both decision routes must report Necessary.  The
table doubles as a quick smoke check that the exact arithmetic path
stays exact as m grows.

Usage: python scripts/complete_graph_table.py [--max-m 8] [--mult 1]
"""

import argparse
import time

from skomni.omnivocality import verdict_by_condition, verdict_by_lp
from skomni.partitions import format_partition
from skomni.pin import PinOracle, complete_graph, pin_capacity


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-m", type=int, default=8, help="largest clique size")
    parser.add_argument("--mult", type=int, default=1, help="edge multiplicity")
    args = parser.parse_args()

    print(f"{'m':>2}  {'capacity':>9}  {'argmin':<16} {'condition':<10} {'lp':<10} "
          f"{'partitions':>10}  {'seconds':>7}")
    for m in range(3, args.max_m + 1):
        graph = complete_graph(m, args.mult)
        start = time.monotonic()
        report = pin_capacity(graph)
        oracle = PinOracle(graph)
        condition = verdict_by_condition(oracle).status.value
        lp = verdict_by_lp(oracle).status.value
        elapsed = time.monotonic() - start
        argmin = " ".join(format_partition(p) for p in report.argmin)
        print(f"{m:>2}  {str(report.value):>9}  {argmin:<16} {condition:<10} {lp:<10} "
              f"{report.partitions_examined:>10}  {elapsed:>7.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
