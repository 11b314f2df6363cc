"""Boundary entanglement after Bell measurements on every site, next to xi_c."""

import argparse
from math import log

from sunvbs.localizable import entanglement_length_report


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3])
    ap.add_argument("--max-N", type=int, default=4)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print("n,N,mode,outcomes,min_entropy,log_n,xi_c")
    for n in args.n:
        for r in entanglement_length_report(n, range(1, args.max_N + 1), args.samples, args.seed):
            print(f"{n},{r.N},{r.mode},{r.outcomes},{r.min_entropy:.15f},{log(n):.15f},{r.xi_c:.6f}")


if __name__ == "__main__":
    main()
