"""Type B double cuts with T, with T^-1 and without any torus correction.

For each shape (a, b, c) count the trials in which the two gluing orders agree.
"""
import argparse

from braidvar.cuts import verify_type_b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-k", type=int, default=7)
    ap.add_argument("--trials", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'shape':>10} {'k':>2}  {'T':>5} {'T^-1':>5} {'none':>5}")
    for a in range(2, 7):
        for b in range(2, 7):
            for c in range(2, 7):
                k = a + b + c - 2
                if not 4 <= k <= args.max_k:
                    continue
                rep = verify_type_b(a, b, c, trials=args.trials, seed=args.seed)
                print(f"{(a, b, c)!s:>10} {k:>2}  {rep['corrected']['passed']:>5}"
                      f" {rep['inverse']['passed']:>5} {rep['uncorrected']['passed']:>5}")


if __name__ == "__main__":
    main()
