"""Write the spin-1 AKLT (n = 2) regression table used by the test suite.

Computed with mpmath at 50 digits from the AKLT block eigenvalues
(1 + 3 q) / 4 and (1 - q) / 4 with q = (-1/3)^L; deliberately independent
of the sunvbs package.

    python scripts/make_aklt_table.py [tests/data/aklt_n2.csv]
"""

import csv
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50


def row(L):
    q = mp.mpf(-1) ** L / mp.mpf(3) ** L
    lam = [(1 + 3 * q) / 4] + [(1 - q) / 4] * 3
    nz = [x for x in lam if x > 0]
    s_vn = -mp.fsum(x * mp.log(x) for x in nz)
    s2 = -mp.log(mp.fsum(x**2 for x in nz))
    s3 = -mp.log(mp.fsum(x**3 for x in nz)) / 2
    ge = mp.log(2) - mp.log(1 + mp.mpf(3) ** (-L)) if L % 2 == 0 else None
    fmt = lambda x: "" if x is None else mp.nstr(x, 25)
    return [L, fmt(lam[0]), fmt(lam[1]), fmt(s_vn), fmt(s2), fmt(s3), fmt(ge)]


def main(path):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["L", "lambda_singlet", "lambda_adjoint", "S_vn", "S_renyi_2", "S_renyi_3", "E"])
        for L in range(1, 21):
            w.writerow(row(L))
    print(f"wrote {path}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "tests/data/aklt_n2.csv")
