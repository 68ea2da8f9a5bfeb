"""Measure scan throughput and project the cost of larger sizes.

Times full scans at small n, reports indices per second, and
extrapolates the wall time for each size up to --project.  Small
sizes understate throughput because fixed per-scan overhead
dominates, so projections use the largest measured size's rate and
still lean pessimistic.

    python3 scripts/scan_timing.py --sizes 5 6 7 --project 9
"""

import argparse
import sys
import time

from gramfloor.core import tri
from gramfloor.search import exhaustive_min


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[5, 6, 7])
    parser.add_argument("--project", type=int, default=9)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    rate = 0.0
    for n in sorted(args.sizes):
        start = time.perf_counter()
        report = exhaustive_min(n, workers=args.workers)
        elapsed = time.perf_counter() - start
        rate = report.total_scanned / elapsed
        print(
            f"n={n}  scanned={report.total_scanned}  {elapsed:8.2f}s"
            f"  {rate:12.0f} idx/s  c_n={report.c_n_estimate!r}"
        )
    # project from the largest measured size; its rate is the most honest
    base = max(args.sizes)
    for n in range(base + 1, args.project + 1):
        seconds = (1 << tri(n)) / rate
        print(f"n={n}  projected {seconds:10.0f}s  ({seconds / 3600:.2f}h)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
