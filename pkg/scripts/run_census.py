#!/usr/bin/env python3
"""Run the (n, s) parameter census and export the figure-style grid.

Each cell records the smoothable-vs-stratum gap; in-family cells
(2 <= s <= n-2) also get the tangent computation at the explicit nesting:
t^{=-1}, theta rank, and the trivial-negative-tangents verdict.

The JSONL store is resumable: re-running skips cells already present for the
same (field, seed).  The default range 4..8 finishes in seconds; --nmax 15
reproduces the full published grid and takes a few CPU-hours over F_32003.

    python scripts/run_census.py --store runs/census.jsonl --csv runs/census.csv
    NESTHILB_THREADS=4 python scripts/run_census.py --nmax 15 --store runs/full.jsonl
"""

import argparse
import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from nesthilb.linalg import DEFAULT_PRIME, FieldSpec
from nesthilb.strata import census, census_csv


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmin", type=int, default=4)
    ap.add_argument("--nmax", type=int, default=8)
    ap.add_argument("--field", default=f"prime:{DEFAULT_PRIME}")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--store", default="census.jsonl")
    ap.add_argument("--csv")
    args = ap.parse_args()

    fld = FieldSpec.parse(args.field)
    threads = max(1, int(os.environ.get("NESTHILB_THREADS", "1")))
    t0 = time.monotonic()
    new = 0
    for rec in census((args.nmin, args.nmax), fld=fld, seed=args.seed,
                      store_path=args.store, threads=threads):
        new += 1
        tag = f" t(-1)={rec.t_minus_one} tnt={rec.tnt}" if rec.tnt else ""
        err = f" ERROR {rec.error}" if rec.error else ""
        print(f"[{time.monotonic() - t0:8.1f}s] (n={rec.n:2d}, s={rec.s:2d}) "
              f"gap={rec.gap:4d}{tag}{err}", flush=True)
    print(f"{new} new records in {args.store}")
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(census_csv(args.store, fld.label, args.seed))
        print(f"grid written to {args.csv}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
