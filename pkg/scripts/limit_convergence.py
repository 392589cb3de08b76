"""Large-a convergence tables and the Laguerre-to-Hermite rate."""

import argparse

from semiconfined.limits import generator_limit, laguerre_hermite_limit, moments_limit, wavefunction_limit
from semiconfined.model import OscillatorParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, nargs="+", default=[2.0, 4.0, 8.0, 16.0, 32.0])
    ap.add_argument("--nmax", type=int, default=3)
    args = ap.parse_args()
    p = OscillatorParams()
    for n in range(args.nmax + 1):
        for label, t in ((f"wavefunction n={n}", wavefunction_limit(p, n, args.a)),
                         (f"moments n={n}", moments_limit(p, n, args.a))):
            print(f"# {label}  decreasing={t.strictly_decreasing()}")
            print(t.to_csv(), end="")
    t = generator_limit(p, args.a)
    print(f"# generators on psi_0  decreasing={t.strictly_decreasing()}")
    print(t.to_csv(), end="")
    print("# log-log slopes: " + ", ".join(f"{k}={t.loglog_slope(k):.3f}" for k in t.columns))
    alphas = (1e1, 1e2, 1e3, 1e4, 1e5, 1e6)
    print("# Laguerre->Hermite sup residual on |x|<=2 (slope ~ 1/2 in alpha)")
    print("n," + ",".join(f"{a:g}" for a in alphas) + ",slope")
    for n in range(7):
        t = laguerre_hermite_limit(n, alphas)
        col = t.columns[f"n={n}"]
        slope = t.loglog_slope(f"n={n}") if n else float("nan")
        print(f"{n}," + ",".join(f"{v:.4g}" for v in col) + f",{slope:.3f}")


if __name__ == "__main__":
    main()
