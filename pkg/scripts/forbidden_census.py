"""Count the forbidden family (all and minimal members) and check ex(n, F_n) = p_n.

    python3 scripts/forbidden_census.py PATTERN --n-max 5
"""
import argparse
import time

from pattern_turan.constructions import max_pn
from pattern_turan.embeddings import ex_bruteforce, forbidden_family
from pattern_turan.io import read_pattern


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("pattern")
    ap.add_argument("--n-max", type=int, default=5)
    args = ap.parse_args()

    p = read_pattern(args.pattern)
    print(f"{'n':>3} {'|F_n|':>7} {'minimal':>8} {'ex':>5} {'p_n':>5} {'secs':>7}")
    for n in range(p.k, args.n_max + 1):
        t = time.perf_counter()
        fam = forbidden_family(p, n)
        core = forbidden_family(p, n, minimal=True)
        ex = ex_bruteforce(n, core, k=p.k).value
        print(f"{n:>3} {len(fam):>7} {len(core):>8} {ex:>5} {max_pn(p, n).value:>5} {time.perf_counter() - t:>7.2f}")


if __name__ == "__main__":
    main()
