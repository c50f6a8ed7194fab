"""Run the randomized self-test and print a one-line summary per suite.

    python3 scripts/run_selftest.py --seed 0 --cases 100
    python3 scripts/run_selftest.py --suites monomialize dilate --json out.json
"""

import argparse
import sys
import time

from relqs import serialize
from relqs.selftest import selftest, suite_names


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--cases", type=int, default=500)
    ap.add_argument("--suites", nargs="*", choices=suite_names())
    ap.add_argument("--json", help="also write the full report here")
    args = ap.parse_args()

    t0 = time.perf_counter()
    report = selftest(args.seed, args.cases, args.suites)
    for s in report["suites"]:
        status = "ok  " if s["passed"] else "FAIL"
        print(f"{status} {s['name']:<20} {s['cases']:>5} cases")
    print(f"{'passed' if report['passed'] else 'FAILED'} in {time.perf_counter() - t0:.1f}s (seed {args.seed})")
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(serialize.dumps(report) + "\n")
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
