"""Scan the fourfold condition over a degree range and dump the reports.

For each degree, classifies every level-3 indecomposable as standard or
quasi-decomposable; a degree fails when an element is neither.

Example:
  python scripts/fourfold_scan.py --from 5 --to 100 --coprime-to 6 --out scan.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fermat_hodge import SearchBudget, check_condition, format_vector
from fermat_hodge.errors import BudgetExceededError
from math import gcd


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--from", dest="m_from", type=int, default=5)
    parser.add_argument("--to", dest="m_to", type=int, default=60)
    parser.add_argument("--coprime-to", type=int, default=6)
    parser.add_argument("--out", type=Path, default=Path("fourfold_scan.json"))
    parser.add_argument("--max-seconds", type=float, default=600.0)
    args = parser.parse_args()

    results = []
    for m in range(args.m_from, args.m_to + 1):
        if args.coprime_to and gcd(m, args.coprime_to) != 1:
            continue
        t0 = time.time()
        try:
            report = check_condition(
                m, n=4, exclude_standard=True,
                budget=SearchBudget(max_seconds=args.max_seconds),
            )
            results.append(
                {
                    "m": m,
                    "verdict": report.verdict,
                    "complete": report.complete,
                    "counts": report.counts,
                    "failures": [
                        format_vector(o.element)
                        for o in report.outcomes
                        if o.kind == "FAIL"
                    ],
                }
            )
            print(
                f"m={m} verdict={report.verdict} counts={report.counts} "
                f"({time.time() - t0:.1f}s)",
                file=sys.stderr,
            )
        except BudgetExceededError:
            results.append({"m": m, "verdict": None, "complete": False})
            print(f"m={m} budget exceeded", file=sys.stderr)
    args.out.write_text(json.dumps(results, indent=1) + "\n", encoding="utf-8")
    print(f"wrote {args.out}", file=sys.stderr)
    bad = [r["m"] for r in results if r["verdict"] is False]
    if bad:
        print(f"failures at {bad}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
