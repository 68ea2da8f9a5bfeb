"""Resumable exhaustive verification at n = 8.

Scans all 2^28 patterns, checkpointing after every block so the run can
be killed and restarted at will.  Progress goes to stderr, the final
JSON report to stdout or --out.

    python3 scripts/longrun_n8.py --workers 8 --checkpoint n8.ckpt.json
"""

import argparse
import sys

from gramfloor.search import DEFAULT_BLOCK_SIZE, exhaustive_min


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=8, help="matrix size (default 8)")
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument("--block-size", type=int, default=DEFAULT_BLOCK_SIZE)
    parser.add_argument("--checkpoint", default=None, help="checkpoint file path")
    parser.add_argument("--out", default=None, help="write the report here")
    args = parser.parse_args(argv)

    def progress(done: int, total: int) -> None:
        print(f"blocks {done}/{total}", file=sys.stderr, flush=True)

    report = exhaustive_min(
        args.n,
        workers=args.workers,
        block_size=args.block_size,
        checkpoint_path=args.checkpoint,
        progress=progress,
    )
    text = report.to_json(indent=2)
    if args.out is None:
        print(text)
    else:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    print(
        f"n={report.n} c_n={report.c_n_estimate!r} holds={report.conjecture_holds} "
        f"unique={report.unique_argmin} elapsed={report.elapsed:.1f}s",
        file=sys.stderr,
    )
    return 0 if report.conjecture_holds and report.unique_argmin else 1


if __name__ == "__main__":
    sys.exit(main())
