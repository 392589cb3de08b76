"""h-refinement study of the finite-difference spectrum for several a."""

import argparse

from semiconfined.model import OscillatorParams, energy
from semiconfined.oracle import default_grid, oracle_spectrum, refine
from semiconfined.report import write_csv


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=[1.0, 2.0, 4.0])
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--points", type=int, default=1000)
    ap.add_argument("--levels", type=int, default=4, help="number of h-halvings")
    args = ap.parse_args()
    rows = []
    for a in args.a:
        p = OscillatorParams(a=a)
        grid = default_grid(p, args.k, args.points)
        prev = None
        for _ in range(args.levels):
            errs = [e - energy(p, n) for n, e in enumerate(oracle_spectrum(p, args.k, grid))]
            for n, err in enumerate(errs):
                ratio = prev[n] / err if prev else float("nan")
                rows.append((a, grid.count, grid.h, n, err / energy(p, n), ratio))
            prev, grid = errs, refine(grid)
    print(write_csv(("a", "N_g", "h", "n", "rel_error", "ratio"), rows), end="")


if __name__ == "__main__":
    main()
