"""Sweep problem sizes and print the per-step cost fit of both online solvers.

    python3 scripts/complexity_profile.py --sizes 16x16 32x64 64x32 --tau 0 100 1e9
"""
import argparse

from insitu import added_complexity, profile_col_solver, profile_row_solver
from insitu.instrument import TOTAL_BOUND_CONSTANT


def parse_size(text):
    m, _, n = text.lower().partition("x")
    return int(m), int(n)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", nargs="+", type=parse_size, default=[(16, 16), (32, 64), (64, 32), (96, 48)])
    ap.add_argument("--trials", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tau", nargs="*", type=float, default=[0.0, 1e9])
    args = ap.parse_args()

    header = f"{'mode':<4} {'m':>4} {'n':>4} {'slope/dim':>10} {'total':>10} {'bound':>10} {'last':>7} {'aux':>9} ok"
    print(header)
    for m, n in args.sizes:
        for mode, fn in (("row", profile_row_solver), ("col", profile_col_solver)):
            rep = fn(m, n, args.trials, seed=args.seed)
            bound = int(TOTAL_BOUND_CONSTANT * rep.model_upper)
            print(f"{mode:<4} {m:>4} {n:>4} {rep.slope_ratio:>10.3f} {rep.total_ops:>10} {bound:>10} "
                  f"{rep.lower_bound_ops:>7} {rep.aux_update_ops:>9} {rep.model_consistent}")
            for tau in args.tau:
                print(f"     added complexity at tau={tau:g}: {added_complexity(rep.per_step, tau):g}")


if __name__ == "__main__":
    main()
