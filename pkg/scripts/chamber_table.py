"""Poincare polynomials of every chamber for a range of (n, d), as a markdown table."""
import argparse

from motivic_pairs import domain as dm
from motivic_pairs.poly import poincare
from motivic_pairs.wallcross import WallCrossingEngine


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--g", type=int, default=2)
    parser.add_argument("--ranks", type=int, nargs="+", default=[2, 3])
    parser.add_argument("--degrees", type=int, nargs=2, default=[4, 9], metavar=("LO", "HI"))
    parser.add_argument("--pairs", action="store_true", help="divide out the Jacobian factor")
    args = parser.parse_args()

    engine = WallCrossingEngine(args.g)
    print("| n | d | chamber | sigma range | Poincare coefficients |")
    print("|---|---|---|---|---|")
    for n in args.ranks:
        for d in range(args.degrees[0], args.degrees[1] + 1):
            p = engine.problem(n, d)
            lo, hi = dm.sigma_range(p)
            if n > 1 and not lo < hi:
                continue
            edges = [lo] + [w.sigma for w in dm.walls(p)] + [hi]
            for k in range(len(edges) - 1):
                c = engine.pairs_class(n, d, chamber=k) if args.pairs else engine.chamber(p, k)
                coeffs = " ".join(str(x) for x in poincare(c.poly))
                print(f"| {n} | {d} | {k} | ({edges[k]}, {edges[k + 1]}) | {coeffs} |")


if __name__ == "__main__":
    main()
