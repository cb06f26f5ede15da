"""Exhaustive sweep over connected posets, writing a JSON report.

Example: python scripts/sweep.py --kind cross_validate --max-n 6 --jobs 4 --out report.json
"""

import argparse
import sys

from braidcone.enumeration import SweepConfig, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--kind", choices=("verify_conjecture", "cross_validate"), default="verify_conjecture")
    ap.add_argument("--max-n", type=int, default=6)
    ap.add_argument("--min-n", type=int, default=2)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--dedup", action="store_true")
    ap.add_argument("--out", help="report path (default: stdout)")
    args = ap.parse_args()
    report = run_sweep(args.kind, SweepConfig(args.max_n, args.jobs, args.dedup, args.min_n))
    text = report.to_json(timing=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for n, t in sorted(report.wall_time.items()):
        print(f"n={n}: {report.per_n[n].total} posets in {t:.1f}s", file=sys.stderr)
    return 0 if report.clean and not report.mismatches else 1


if __name__ == "__main__":
    sys.exit(main())
