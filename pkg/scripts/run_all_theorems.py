#!/usr/bin/env python3
"""Run every registered claim pipeline with its default instances and print
one verdict line per claim.  With --report-dir, also drop the full JSON
report of each run there (<claim>.json)."""

import argparse
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from qll.harness import list_theorems, verify  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--report-dir", default=None,
                        help="write per-claim JSON reports here")
    parser.add_argument("--only", nargs="*", default=None,
                        help="claim ids to run (default: all)")
    args = parser.parse_args()

    ids = args.only or sorted(list_theorems())
    worst = 0
    for tid in ids:
        report = verify(tid)
        checks = report.checks
        failed = [c.name for c in checks if not c.passed]
        line = (
            f"{tid:10} {report.verdict:22} "
            f"{len(checks) - len(failed)}/{len(checks)} checks "
            f"({report.elapsed_seconds:.2f}s)"
        )
        if failed:
            line += f"  failing: {', '.join(failed)}"
        print(line)
        if args.report_dir:
            out = pathlib.Path(args.report_dir)
            out.mkdir(parents=True, exist_ok=True)
            path = out / f"{tid.replace('.', '_')}.json"
            path.write_text(json.dumps(report.to_json(), indent=2) + "\n")
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    raise SystemExit(main())
