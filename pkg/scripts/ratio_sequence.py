"""Print p_n / C(n, k) next to the optimized Lagrangian for a pattern file.

    python3 scripts/ratio_sequence.py PATTERN --n-max 40
"""
import argparse

from pattern_turan.constructions import ratio_sequence
from pattern_turan.io import read_pattern
from pattern_turan.lagrangian import maximize_lagrangian


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("pattern")
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args()

    p = read_pattern(args.pattern)
    lam = maximize_lagrangian(p).value
    print(f"# pattern {p}  Lagrangian ~ {lam:.10f}")
    print(f"{'n':>4} {'p_n':>10} {'ratio':>14} {'ratio - lam':>14}")
    for n, pn, q in ratio_sequence(p, args.n_max):
        print(f"{n:>4} {pn:>10} {float(q):>14.10f} {float(q) - lam:>14.3e}")


if __name__ == "__main__":
    main()
