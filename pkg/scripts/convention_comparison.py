"""Compare the two rescaling rules for cuts along (1, j).

Both rules invert exactly.  Only the uniform one makes the Type A diagrams
commute and the pullback identities hold.
"""
import argparse

from braidvar.cuts import (CONVENTIONS, all_specs, pullback_point_check,
                           roundtrip_check, verify_type_a)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--trials", type=int, default=20)
    args = ap.parse_args()
    k, n = args.k, args.trials
    edge_specs = [s for s in all_specs(k) if s.i == 1]
    for conv in CONVENTIONS:
        rt = sum(roundtrip_check(s, n, 0, conv)["passed"] for s in edge_specs)
        ta = verify_type_a(2, 2, k - 2, trials=n, seed=0, convention=conv)["passed"]
        pb = sum(pullback_point_check(k, s, trials=n, seed=0, sign=-1 if (k - s.j) % 2 == 0 else 1,
                                      convention=conv)["passed"] for s in edge_specs)
        print(f"{conv:8} roundtrip {rt}/{n * len(edge_specs)}  type A (2,2,{k - 2}) {ta}/{n}"
              f"  pullback (-1)^(k-j+1) {pb}/{n * len(edge_specs)}")


if __name__ == "__main__":
    main()
