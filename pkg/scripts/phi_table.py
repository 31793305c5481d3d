"""Compute the maximum indecomposable level over a degree range.

Writes a CSV table and, optionally, scatter-plot data as JSON.  Degrees
whose computation exceeds the budget are reported with complete=false
and the largest level seen so far.

Example:
  python scripts/phi_table.py --from 2 --to 34 --out phi.csv --plot-data phi.json
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fermat_hodge import SearchBudget, hilbert_basis


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--from", dest="m_from", type=int, default=2)
    parser.add_argument("--to", dest="m_to", type=int, default=34)
    parser.add_argument("--out", type=Path, default=Path("phi_table.csv"))
    parser.add_argument("--plot-data", type=Path, default=None)
    parser.add_argument("--max-seconds", type=float, default=600.0)
    args = parser.parse_args()

    rows = []
    for m in range(args.m_from, args.m_to + 1):
        t0 = time.time()
        basis = hilbert_basis(m, budget=SearchBudget(max_seconds=args.max_seconds))
        rows.append((m, basis.max_element_level, basis.complete))
        print(
            f"m={m} phi={basis.max_element_level} complete={basis.complete} "
            f"({time.time() - t0:.1f}s, {len(basis.elements)} elements)",
            file=sys.stderr,
        )
    args.out.write_text(
        "m,phi,complete\n"
        + "".join(f"{m},{p},{str(c).lower()}\n" for m, p, c in rows),
        encoding="utf-8",
    )
    print(f"wrote {args.out}", file=sys.stderr)
    if args.plot_data is not None:
        coords = [[m, p] for m, p, c in rows if c]
        args.plot_data.write_text(
            json.dumps({"coordinates": coords}, indent=1) + "\n", encoding="utf-8"
        )
        print(f"wrote {args.plot_data}", file=sys.stderr)
    return 0 if all(c for _, _, c in rows) else 3


if __name__ == "__main__":
    raise SystemExit(main())
