"""Closed-form vs optimized Lagrangian for the two-part irrational family.

    python3 scripts/irrational_table.py --k-max 10
"""
import argparse
import csv
import sys

from pattern_turan.families import verify_irrational_certificate
from pattern_turan.lagrangian import LagrangianConfig


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--k-min", type=int, default=3)
    ap.add_argument("--k-max", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    w = csv.writer(sys.stdout)
    w.writerow(["k", "ell", "root", "closed_form", "numeric", "abs_diff", "stationarity", "passed"])
    for k in range(args.k_min, args.k_max + 1):
        c = verify_irrational_certificate(k, cfg=LagrangianConfig(seed=args.seed))
        w.writerow([k, c.ell, f"{c.root:.12f}", f"{c.lambda_closed_form:.12f}", f"{c.lambda_numeric:.12f}",
                    f"{abs(c.lambda_closed_form - c.lambda_numeric):.2e}", f"{c.stationarity_residual:.2e}",
                    c.passed])


if __name__ == "__main__":
    main()
