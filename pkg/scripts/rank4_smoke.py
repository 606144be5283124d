"""Rank-4 pair classes at g = 2 with timings and the property checks that apply.

    python3 scripts/rank4_smoke.py --d 13 14 --cache /tmp/mp-cache.json
"""
import argparse
import time

from motivic_pairs import domain as dm
from motivic_pairs.checks import is_palindromic_nonnegative
from motivic_pairs.poly import poincare
from motivic_pairs.wallcross import ClassCache, WallCrossingEngine


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--g", type=int, default=2)
    parser.add_argument("--d", type=int, nargs="+", default=[13, 14])
    parser.add_argument("--cache", default=None)
    parser.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args()

    engine = WallCrossingEngine(args.g, ClassCache(args.cache), args.jobs)
    for d in args.d:
        p = engine.problem(4, d)
        start = time.perf_counter()
        chambers = engine.chambers(p)
        elapsed = time.perf_counter() - start
        dim = dm.moduli_dim(p)
        print(f"n=4 d={d}: {len(chambers)} chambers, dim {dim}, {elapsed:.2f}s")
        for k, c in enumerate(chambers):
            pairs = engine.pairs_class(4, d, chamber=k)
            ok_dim = c.poly.q_degree() == dim and c.poly.coeff(dim, dim) == 1
            ok_p = is_palindromic_nonnegative(poincare(c.poly))
            ok_cert = engine.check_certificate(c) and engine.check_certificate(pairs)
            print(f"  chamber {k}: euler={c.poly.euler()} dim_ok={ok_dim} poincare_ok={ok_p} "
                  f"cert_ok={ok_cert}")
            print(f"    P(pairs) = {poincare(pairs.poly)}")
    engine.cache.save()


if __name__ == "__main__":
    main()
