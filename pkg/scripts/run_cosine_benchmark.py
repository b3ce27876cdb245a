"""Residuals of the first-order prediction for V = cos x.

Writes a CSV of eigenvalue residuals and prints the scaled maxima over the
lower and upper halves of the index range, which is the quickest way to see
the remainder decay rate.

Usage: python scripts/run_cosine_benchmark.py [nmax] [out.csv]
"""

import json
import sys
from pathlib import Path

from oscspec.cli import parse_config, run_compute


def main():
    nmax = int(sys.argv[1]) if len(sys.argv) > 1 else 500
    out = Path(sys.argv[2]) if len(sys.argv) > 2 else Path("cosine_residuals.csv")
    config = parse_config(json.dumps({
        "alpha": 1.0,
        "terms": [[1.0, 0.0, 0.5, 0.0], [-1.0, 0.0, 0.5, 0.0]],
        "nmax": nmax,
        "tol": 1e-8,
    }))
    run_compute(config, out)

    rows = [ln.split(",") for ln in
            out.read_bytes().decode("utf-8").split("\r\n")[1:] if ln]
    mid = nmax // 2
    for lo, hi in ((nmax // 10, nmax), (mid, nmax)):
        scaled = [abs(float(r[6])) for r in rows
                  if r[6] and lo <= int(r[0]) <= hi]
        alt = [abs(float(r[7])) for r in rows
               if r[7] and lo <= int(r[0]) <= hi]
        print(f"n in [{lo}, {hi}]: max |r| sqrt(n)/ln n = {max(scaled):.4f}, "
              f"max |r| n^(3/4) = {max(alt):.4f}")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
