"""Run the full verify suite and write its JSON report.

    python3 scripts/run_verify.py --max-k 8 --trials 100 --seed 0 --out verify.json
"""
import argparse
import json
import sys
from pathlib import Path

from braidvar.cli import emit_json, run_verify_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-k", type=int, default=8)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()

    def progress(entry):
        print(f"{entry['status']:4}  {entry['name']}", file=sys.stderr, flush=True)

    rep = run_verify_all(args.max_k, args.trials, args.seed, progress=progress)
    text = emit_json(rep.to_json(timings=True))
    if args.out:
        args.out.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    summary = {c["name"]: rep.durations[c["name"]] for c in rep.checks}
    print(json.dumps(summary, indent=1), file=sys.stderr)
    return 0 if rep.passed else 1


if __name__ == "__main__":
    sys.exit(main())
