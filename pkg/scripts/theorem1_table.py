"""Regular polytope classification table with expected verdicts.

    python3 scripts/theorem1_table.py --n-max 8 --format markdown

Exits nonzero if a computed verdict disagrees with the expected one.
"""
from __future__ import annotations

import argparse
import sys
import time

from perfpoly.cli import run


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--format", default="markdown", choices=("markdown", "csv", "json"))
    args = ap.parse_args()
    t0 = time.perf_counter()
    code = run(["theorem1", "--n-max", str(args.n_max), "--format", args.format])
    print(f"# {time.perf_counter() - t0:.2f} s, exit {code}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
