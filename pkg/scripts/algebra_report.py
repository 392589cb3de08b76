"""Run every algebraic verification suite over a set of alpha values."""

import argparse
import math

from semiconfined import algebra, moments
from semiconfined.model import ModelKind, OscillatorParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, nargs="+", default=[2.0, 8.0, 50.0])
    ap.add_argument("--N", type=int, default=25)
    args = ap.parse_args()
    failed = 0
    for alpha in args.alpha:
        p = OscillatorParams(a=math.sqrt(alpha / 2.0))
        print(f"## alpha = {alpha:g} (a = {p.a:.6g})")
        reports = [
            algebra.check_generator_matrices(p, 15),
            algebra.check_matrix_relations(p, 12),
            algebra.check_su11(p, args.N),
            algebra.check_casimir(p, 10),
            algebra.check_pdem_commutators(p),
            algebra.check_heisenberg_lie(p, ModelKind.SEMICONFINED),
        ]
        reports += [algebra.check_ladder(p, n) for n in range(9)]
        for r in reports:
            print(r.summary())
            failed += not r.passed
    r = moments.verify_identities()
    print(r.summary())
    failed += not r.passed
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
