"""Scan s over a range and write the separability table as CSV.

    python3 scripts/scan_separability.py --s-range 2..20 --out scan.csv --parallel 4
"""

from __future__ import annotations

import argparse
import sys
import time

from sepdef.pipeline import ScanOptions, parse_range, rows_to_csv, scan


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--s-range", default="2..20")
    ap.add_argument("--out", help="CSV path (stdout when omitted)")
    ap.add_argument("--parallel", type=int, default=1)
    ap.add_argument("--force-default-variant", action="store_true")
    args = ap.parse_args(argv)

    start = time.monotonic()
    rows = scan(parse_range(args.s_range), ScanOptions(force_default=args.force_default_variant), args.parallel)
    text = rows_to_csv(rows)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [r["s"] for r in rows if r["status"] != "ok"]
    print(f"{len(rows)} rows in {time.monotonic() - start:.1f}s, failing s: {failed or 'none'}", file=sys.stderr)
    return 0 if not failed else 2


if __name__ == "__main__":
    sys.exit(main())
