"""Command line interface: ``braidvar <command> ...``.

Exit codes: 0 success / all checks pass, 1 some check failed, 2 usage or
input error.  Every command prints text by default and JSON with ``--json``.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable

from . import cluster, continuant, cuts, forms, positroid
from .exact import ExactError, Polynomial, parse_rational, parse_rational_list

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ------------------------------------------------------------------ helpers

def parse_point(text: str) -> tuple:
    """'2,1,2' -> (2, 1, 2) as Fractions; decimals are rejected."""
    return tuple(parse_rational_list(text))


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if hasattr(o, "to_json"):
        return o.to_json()
    if isinstance(o, (set, frozenset, tuple)):
        return list(o)
    return str(o)


def emit_json(obj) -> str:
    return json.dumps(obj, indent=2, default=_default, ensure_ascii=False)


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise UsageError(f"{path}: invalid JSON at line {e.lineno} column {e.colno}") from None


def _read_matrix(path: str) -> positroid.PositroidMatrix:
    data = _read_json(path)
    if not isinstance(data, dict) or "cols" not in data:
        raise UsageError(f"{path}: expected an object with a 'cols' list")
    return positroid.PositroidMatrix.from_json(data)


def _parse_window(text: str) -> tuple:
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"window must look like i..j, got {text!r}") from None


def _parse_diagonals(text: str | None) -> list:
    if not text:
        return []
    return [cluster.parse_edge(t.strip()) for t in text.split(",") if t.strip()]


@dataclass
class Output:
    data: object
    text: str
    ok: bool = True


# ---------------------------------------------------------------- commands

def cmd_continuant(args) -> Output:
    if args.window:
        lo, hi = _parse_window(args.window)
        if hi < lo - 1 or lo < 1:
            raise UsageError(f"empty or invalid window {args.window}")
        p = continuant.continuant(range(lo, hi + 1))
        label = f"F({lo}..{hi})"
    else:
        if args.k is None or args.k < 0:
            raise UsageError("--k K (K >= 0) or --window i..j is required")
        p = continuant.F(args.k)
        label = f"F_{args.k}"
    return Output({"name": label, "polynomial": str(p), "terms": p.to_json()}, f"{label} = {p}")


def cmd_variety(args) -> Output:
    pts = parse_point(args.point)
    if args.k is not None and len(pts) == args.k - 1:
        vp = continuant.VarietyPoint(args.k, pts)
        full = vp.full
        data = {"k": args.k, "on_variety": continuant.on_variety(full), "z1": full[0], "point": list(full)}
        return Output(data, f"on (z1 = {full[0]}; point = {', '.join(map(str, full))})")
    if args.k is not None and len(pts) != args.k:
        raise UsageError(f"--k {args.k} needs {args.k - 1} or {args.k} coordinates, got {len(pts)}")
    on = continuant.on_variety(pts)
    return Output({"k": len(pts), "on_variety": on, "point": list(pts)}, "on" if on else "off")


def cmd_positroid(args) -> Output:
    if args.action == "from-z":
        full = parse_point(args.z)
        if not continuant.on_variety(full):
            raise UsageError("the point does not satisfy F_k = 0")
        m = positroid.z_to_matrix(full)
        return Output(m.to_json(), str(m))
    m = _read_matrix(args.file)
    if args.action == "to-z":
        z = positroid.matrix_to_z(m)
        return Output({"z": list(z)}, ", ".join(map(str, z)))
    if args.i is None or args.j is None:
        raise UsageError("plucker needs --i and --j")
    d = m.plucker(args.i, args.j)
    return Output({"i": args.i, "j": args.j, "value": d}, str(d))


def _triangulation_data(t: cluster.Triangulation) -> dict:
    q = cluster.quiver_from_triangulation(t)
    return {"n": t.n, "diagonals": [cluster.edge_label(d) for d in t.sorted_diagonals()],
            "quiver": q.to_json()}


def _quiver_text(t: cluster.Triangulation) -> str:
    q = cluster.quiver_from_triangulation(t)
    lines = ["diagonals: " + (", ".join(cluster.edge_label(d) for d in t.sorted_diagonals()) or "(none)")]
    lines += [f"  {cluster.edge_label(u)} -> {cluster.edge_label(v)}" + (f" x{m}" if m > 1 else "")
              for u, v, m in q.arrows()]
    lines.append("frozen: " + ", ".join(cluster.edge_label(v) for v in sorted(q.frozen)))
    return "\n".join(lines)


def cmd_cluster(args) -> Output:
    if args.k is None or args.k < 2:
        raise UsageError("--k K with K >= 2 is required")
    if args.action == "quasi-check":
        if args.i is None or args.j is None:
            raise UsageError("quasi-check needs --i and --j")
        cuts.CutSpec(args.k, args.i, args.j)
        rep = cluster.freezing_check(args.k, args.i, args.j)
        ids = cluster.freezing_ratio_identities(args.k, args.i, args.j)
        ok = rep.passed and all(r["ok"] for r in ids)
        data = {"k": args.k, "diagonal": [args.i, args.j], "passed": ok,
                "report": rep.to_json(), "displayed_identities": ids}
        text = [f"quasi-equivalence after freezing {args.i}-{args.j}: {'pass' if ok else 'FAIL'}"]
        text += [f"  {r['vertex']}: {r['y1']}" + ("" if r["ok"] else f" != {r['y2']}") for r in rep.ratios]
        return Output(data, "\n".join(text), ok)
    if args.action == "fan":
        t = cluster.fan_triangulation(args.k)
    else:
        diags = _parse_diagonals(args.diagonals)
        t = cluster.Triangulation(args.k + 1, frozenset(diags)) if diags else cluster.fan_triangulation(args.k)
        if args.action == "flip":
            if not args.d:
                raise UsageError("flip needs --d i-j")
            t = cluster.flip(t, cluster.parse_edge(args.d))
    return Output(_triangulation_data(t), _quiver_text(t))


def cmd_forms(args) -> Output:
    if args.k is None or args.k < 1:
        raise UsageError("--k K with K >= 1 is required")
    k = args.k
    if args.action == "alpha":
        f = forms.alpha_form(k)
        return Output(f.to_json(), f"alpha = {f}")
    if args.action == "omega":
        f = forms.omega_chart(k) if args.chart == "fan" else forms.omega_form(k)
        return Output(f.to_json(), f"omega = {f}")
    basis = forms.cohomology_basis(k)
    data = {"k": k, "betti": list(forms.betti(k)),
            "basis": [{"degree": c.degree, "label": c.label, "word": c.word.to_json()} for c in basis]}
    text = "\n".join(f"H^{c.degree}: {c.label} = {c.word}" for c in basis)
    return Output(data, text)


def _report_text(name: str, rep: dict) -> str:
    return f"{name}: {rep['passed']}/{rep['trials']} passed"


def _point_from_json(path: str, k: int) -> positroid.PositroidMatrix:
    data = _read_json(path)
    if isinstance(data, dict) and "cols" in data:
        return positroid.PositroidMatrix.from_json(data)
    if isinstance(data, dict) and "coords" in data:
        coords = [parse_rational(str(x)) for x in data["coords"]]
        return cuts.point_matrix(continuant.VarietyPoint(k, coords).coords)
    if isinstance(data, dict) and "z" in data:
        full = [parse_rational(str(x)) for x in data["z"]]
        if not continuant.on_variety(full):
            raise UsageError(f"{path}: point does not satisfy F_k = 0")
        return positroid.z_to_matrix(full)
    raise UsageError(f"{path}: expected 'cols' (matrix), 'coords' (z_2..z_k) or 'z' (z_1..z_k)")


def cmd_cut(args) -> Output:
    conv = args.convention
    if args.action in ("verify-type-a", "verify-type-b"):
        if None in (args.a, args.b, args.c):
            raise UsageError("--a, --b and --c are required")
        fn = cuts.verify_type_a if args.action == "verify-type-a" else cuts.verify_type_b
        rep = fn(args.a, args.b, args.c, trials=args.trials, seed=args.seed, convention=conv)
        ok = rep["passed"] == rep["trials"] and rep.get("ok", True)
        text = _report_text(args.action, rep)
        if "uncorrected" in rep:
            text += (f"\n  with T^-1: {rep['inverse']['passed']}/{rep['trials']}"
                     f"\n  without T: {rep['uncorrected']['passed']}/{rep['trials']}")
        return Output(rep, text, ok)
    if None in (args.k, args.i, args.j):
        raise UsageError("--k, --i and --j are required")
    spec = cuts.CutSpec(args.k, args.i, args.j)
    if args.action == "apply":
        if not args.point_file:
            raise UsageError("apply needs --point-file")
        pair = cuts.cut(_point_from_json(args.point_file, args.k), spec, conv)
        return Output({"left": pair.left.to_json(), "right": pair.right.to_json()},
                      f"left:  {pair.left}\nright: {pair.right}")
    if args.action == "glue":
        if not (args.left and args.right):
            raise UsageError("glue needs --left and --right")
        m = cuts.glue(cuts.CutPair(_read_matrix(args.left), _read_matrix(args.right)), spec, conv)
        return Output(m.to_json(), str(m))
    sign = {"nominal": None, "derived": -cuts.nominal_sign(spec), "+1": 1, "-1": -1}[args.sign]
    if args.mode == "cohomology":
        matrix, rank = cuts.pullback_cohomology_matrix(args.k, spec, sign)
        data = {"k": args.k, "spec": [spec.i, spec.j], "rank": rank, "injective": rank == args.k,
                "columns": cuts.tensor_basis_labels(spec),
                "rows": [[str(x) for x in row] for row in matrix]}
        return Output(data, f"rank {rank} of {args.k}", rank == args.k)
    rep = cuts.pullback_point_check(args.k, spec, trials=args.trials, seed=args.seed,
                                    sign=sign, convention=conv)
    text = (_report_text("pullback", rep) + f" (sign {rep['sign']:+d}; "
            f"signs satisfied by the data: {rep['signs_that_hold']})")
    return Output(rep, text, rep["passed"] == rep["trials"])


# ------------------------------------------------------------------ verify

@dataclass
class Check:
    name: str
    run: Callable[[int, int, int], dict]


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


def _chk_braid(max_k, trials, seed):
    ks = list(range(1, max_k + 1))
    bad = [k for k in ks if continuant.braid_matrix(k) != continuant.braid_product(k)]
    return {"ok": not bad, "checked": len(ks), "failures": bad}


def _chk_det(max_k, trials, seed):
    bad = [i for i in range(max_k + 1) if not continuant.det_identity(i)]
    return {"ok": not bad, "checked": max_k + 1, "failures": bad}


def _chk_plucker_rel(max_k, trials, seed):
    bad, n = [], 0
    for k in range(3, max_k + 1):
        for quad in combinations(range(1, k + 2), 4):
            n += 1
            if not positroid.plucker_relation_check(k, *quad):
                bad.append([k, *quad])
    return {"ok": not bad, "checked": n, "failures": bad[:10]}


def _symbolic_full(k):
    return [Polynomial.var(i) for i in range(1, k + 1)]


def _chk_delta_from_f(max_k, trials, seed):
    bad, n = [], 0
    for k in range(1, max_k + 1):
        m = positroid.z_to_matrix(_symbolic_full(k))
        for i, j in combinations(range(1, k + 2), 2):
            n += 1
            if m.plucker(i, j) != continuant.F(j - i - 1, i + 1):
                bad.append([k, i, j])
    return {"ok": not bad, "checked": n, "failures": bad[:10]}


def _chk_delta_derivative(max_k, trials, seed):
    ks = list(range(2, min(max_k, 7) + 1))
    bad = [k for k in ks if not forms.delta_derivative_check(k)]
    return {"ok": not bad, "checked": len(ks), "failures": bad}


def _chk_fractions(max_k, trials, seed):
    bad, n = [], 0
    for k in range(2, min(max_k, 7) + 1):
        for i in range(2, k + 1):
            n += 1
            if not forms.fractions_check(k, i):
                bad.append([k, i])
    return {"ok": not bad, "checked": n, "failures": bad}


def _chk_omega(max_k, trials, seed):
    ks = list(range(2, min(max_k, 6) + 1))
    bad = [k for k in ks if forms.omega_chart(k) != forms.omega_form(k)]
    return {"ok": not bad, "checked": len(ks), "failures": bad}


def _chk_closed(max_k, trials, seed):
    bad = []
    ks = list(range(2, min(max_k, 6) + 1))
    for k in ks:
        if forms.exterior_derivative(forms.alpha_form(k)):
            bad.append(["alpha", k])
        if forms.exterior_derivative(forms.omega_form(k)):
            bad.append(["omega", k])
    return {"ok": not bad, "checked": 2 * len(ks), "failures": bad}


def _chk_cohomology(max_k, trials, seed):
    bad = []
    ks = list(range(1, max(max_k, 2) + 3))
    for k in ks:
        if forms.betti(k) != (1,) * k:
            bad.append(["betti", k])
        if k % 2 == 1 and k >= 3 and not forms.top_class_check(k):
            bad.append(["top", k])
    return {"ok": not bad, "checked": len(ks), "failures": bad}


def _chk_flips(max_k, trials, seed):
    bad, n = [], 0
    for nv in range(4, min(max_k + 1, 8) + 1):
        for t in cluster.enumerate_triangulations(nv):
            q = cluster.quiver_from_triangulation(t)
            for d in t.sorted_diagonals():
                n += 1
                lhs = cluster.quiver_from_triangulation(cluster.flip(t, d))
                rhs = cluster.mutate_quiver(q, d, cluster.flipped_diagonal(t, d))
                if lhs.as_dict() != rhs.as_dict() or lhs.frozen != rhs.frozen:
                    bad.append([nv, sorted(t.diagonals), list(d)])
    return {"ok": not bad, "checked": n, "failures": bad[:10]}


def _chk_freezing(max_k, trials, seed):
    bad, n = [], 0
    for k in range(3, max_k + 1):
        for s in cuts.all_specs(k):
            n += 1
            rep = cluster.freezing_check(k, s.i, s.j)
            ids = cluster.freezing_ratio_identities(k, s.i, s.j)
            if not (rep.passed and all(r["ok"] for r in ids)):
                bad.append([k, s.i, s.j])
    return {"ok": not bad, "checked": n, "failures": bad}


def _chk_roundtrip(max_k, trials, seed):
    bad, n = [], 0
    for k in range(3, max_k + 1):
        for s in cuts.all_specs(k):
            n += 1
            rep = cuts.roundtrip_check(s, trials, seed)
            if rep["passed"] != trials:
                bad.append({"spec": [k, s.i, s.j], "passed": rep["passed"]})
    return {"ok": not bad, "checked": n, "trials_each": trials, "failures": bad}


def _shapes(max_k):
    return [(a, b, c) for a in range(2, 7) for b in range(2, 7) for c in range(2, 7)
            if 4 <= a + b + c - 2 <= min(max_k, 7)]


def _chk_type_a(max_k, trials, seed):
    bad = []
    shapes = _shapes(max_k)
    for sh in shapes:
        rep = cuts.verify_type_a(*sh, trials=trials, seed=seed)
        if rep["passed"] != trials:
            bad.append({"shape": list(sh), "passed": rep["passed"],
                        "counterexample": rep["counterexamples"][:1]})
    return {"ok": not bad, "checked": len(shapes), "trials_each": trials, "failures": bad}


def _chk_type_b(max_k, trials, seed):
    bad = []
    shapes = _shapes(max_k)
    witnesses = 0
    for sh in shapes:
        rep = cuts.verify_type_b(*sh, trials=trials, seed=seed)
        witnesses += rep["uncorrected_failures"] > 0
        if rep["passed"] != trials:
            bad.append({"shape": list(sh), "passed": rep["passed"],
                        "counterexample": rep["counterexamples"][:1]})
    ok = not bad and (witnesses > 0 or not shapes)
    return {"ok": ok, "checked": len(shapes), "trials_each": trials,
            "shapes_where_uncorrected_fails": witnesses, "failures": bad}


def _pullback(max_k, trials, seed, derived):
    bad, n = [], 0
    for k in range(3, min(max_k, 7) + 1):
        for s in cuts.all_specs(k):
            n += 1
            sign = -cuts.nominal_sign(s) if derived else None
            rep = cuts.pullback_point_check(k, s, trials=trials, seed=seed, sign=sign)
            if rep["passed"] != trials:
                bad.append({"spec": [k, s.i, s.j], "sign": rep["sign"], "passed": rep["passed"],
                            "signs_that_hold": rep["signs_that_hold"]})
    return {"ok": not bad, "checked": n, "trials_each": trials, "failures": bad}


def _chk_pullback_nominal(max_k, trials, seed):
    return _pullback(max_k, trials, seed, derived=False)


def _chk_pullback_derived(max_k, trials, seed):
    return _pullback(max_k, trials, seed, derived=True)


def _chk_pullback_cohomology(max_k, trials, seed):
    bad, n = [], 0
    for k in range(3, max_k + 1):
        for s in cuts.all_specs(k):
            n += 1
            _, rank = cuts.pullback_cohomology_matrix(k, s)
            if rank != k:
                bad.append({"spec": [k, s.i, s.j], "rank": rank})
    return {"ok": not bad, "checked": n, "failures": bad}


REGISTRY = (
    Check("braid_matrix_vs_product", _chk_braid),
    Check("det_identity", _chk_det),
    Check("plucker_relations", _chk_plucker_rel),
    Check("delta_from_continuant", _chk_delta_from_f),
    Check("delta_derivative", _chk_delta_derivative),
    Check("fractions", _chk_fractions),
    Check("omega_chart_vs_formula", _chk_omega),
    Check("closedness", _chk_closed),
    Check("cohomology_basis", _chk_cohomology),
    Check("flip_mutation", _chk_flips),
    Check("quasi_equivalence_freezing", _chk_freezing),
    Check("cut_glue_roundtrip", _chk_roundtrip),
    Check("type_a_diagrams", _chk_type_a),
    Check("type_b_diagrams", _chk_type_b),
    Check("pullback_point_nominal_sign", _chk_pullback_nominal),
    Check("pullback_point_derived_sign", _chk_pullback_derived),
    Check("pullback_cohomology_rank", _chk_pullback_cohomology),
)


@dataclass
class VerifyReport:
    max_k: int
    trials: int
    seed: int
    checks: list = field(default_factory=list)
    durations: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["status"] != "fail" for c in self.checks)

    def to_json(self, timings: bool = False) -> dict:
        out = {"suite": "verify", "parameters": {"max_k": self.max_k, "trials": self.trials, "seed": self.seed},
               "passed": self.passed, "checks": self.checks}
        if timings:
            out["durations_s"] = self.durations
        return out


def run_verify_all(max_k: int, trials: int, seed: int, only=None, progress=None) -> VerifyReport:
    if max_k < 2:
        raise ValueError(f"max_k must be >= 2, got {max_k}")
    if trials < 1:
        raise ValueError("trials must be positive")
    rep = VerifyReport(max_k, trials, seed)
    for chk in REGISTRY:
        if only and chk.name not in only:
            rep.checks.append({"name": chk.name, "status": "skip"})
            continue
        t0 = time.perf_counter()
        try:
            res = chk.run(max_k, trials, seed)
            ok = res.pop("ok")
            entry = {"name": chk.name, "status": _status(ok), **res}
        except Exception as e:  # recorded, never aborts the suite
            entry = {"name": chk.name, "status": "fail", "error": f"{type(e).__name__}: {e}"}
        rep.durations[chk.name] = round(time.perf_counter() - t0, 3)
        rep.checks.append(entry)
        if progress:
            progress(entry)
    return rep


def cmd_verify(args) -> Output:
    if args.max_k < 2:
        raise UsageError(f"--max-k must be >= 2, got {args.max_k}")
    only = set(args.only.split(",")) if args.only else None
    if only and not only <= {c.name for c in REGISTRY}:
        raise UsageError(f"unknown checks: {sorted(only - {c.name for c in REGISTRY})}")
    rep = run_verify_all(args.max_k, args.trials, args.seed, only)
    lines = []
    for c in rep.checks:
        extra = f" ({c['checked']} cases)" if "checked" in c else ""
        if "error" in c:
            extra += f" error: {c['error']}"
        lines.append(f"{c['status'].upper():4}  {c['name']}{extra}")
        if args.timings:
            lines[-1] += f"  [{rep.durations.get(c['name'], 0):.2f}s]"
    lines.append("ALL PASS" if rep.passed else "SOME CHECKS FAILED")
    return Output(rep.to_json(args.timings), "\n".join(lines), rep.passed)


# ------------------------------------------------------------------ parser

def _env_seed() -> int:
    raw = os.environ.get("BRAIDVAR_SEED")
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"BRAIDVAR_SEED must be an integer, got {raw!r}") from None


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="master seed (default $BRAIDVAR_SEED or 0)")
    p.add_argument("--trials", type=int, default=argparse.SUPPRESS, help="random trials (default 100)")
    p.add_argument("--max-k", type=int, default=argparse.SUPPRESS, help="largest k for verify (default 8)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="braidvar", parents=[common],
                                     description="Exact computations on two-strand braid varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("continuant", parents=[common], help="print F_k or a window continuant")
    p.add_argument("--k", type=int)
    p.add_argument("--window", help="i..j: continuant of z_i, ..., z_j")
    p.set_defaults(func=cmd_continuant)

    p = sub.add_parser("variety", parents=[common], help="test a point of X(sigma^k)")
    p.add_argument("action", choices=["check"])
    p.add_argument("--point", required=True, help="z_1..z_k, or z_2..z_k together with --k")
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_variety)

    p = sub.add_parser("positroid", parents=[common], help="matrix model")
    p.add_argument("action", choices=["from-z", "to-z", "plucker"])
    p.add_argument("--z")
    p.add_argument("--file")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_positroid)

    p = sub.add_parser("cluster", parents=[common], help="triangulations, quivers, freezing")
    p.add_argument("action", choices=["fan", "quiver", "flip", "quasi-check"])
    p.add_argument("--k", type=int)
    p.add_argument("--diagonals", help='e.g. "1-3,1-4" (default: fan)')
    p.add_argument("--d", help="diagonal to flip, e.g. 1-4")
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.set_defaults(func=cmd_cluster)

    p = sub.add_parser("forms", parents=[common], help="alpha, omega and the cohomology basis")
    p.add_argument("action", choices=["alpha", "omega", "basis"])
    p.add_argument("--k", type=int)
    p.add_argument("--chart", choices=["fan", "z"], default="z")
    p.set_defaults(func=cmd_forms)

    p = sub.add_parser("cut", parents=[common], help="diagonal cuts and glues")
    p.add_argument("action", choices=["apply", "glue", "verify-type-a", "verify-type-b", "pullback"])
    for name in ("k", "i", "j", "a", "b", "c"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--point-file")
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--mode", choices=["point", "cohomology"], default="point")
    p.add_argument("--sign", choices=["nominal", "derived", "+1", "-1"], default="nominal",
                   help="sign s in alpha2 + s alpha1 (nominal: (-1)^(k-j))")
    p.add_argument("--convention", choices=list(cuts.CONVENTIONS), default="uniform",
                   help="rescaling of the right factor when i = 1")
    p.set_defaults(func=cmd_cut)

    p = sub.add_parser("verify", parents=[common], help="run every check")
    p.add_argument("--only", help="comma separated check names")
    p.add_argument("--timings", action="store_true", help="include wall-clock durations")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        args.json = getattr(args, "json", False)
        args.seed = getattr(args, "seed", None)
        if args.seed is None:
            args.seed = _env_seed()
        args.trials = getattr(args, "trials", 100)
        args.max_k = getattr(args, "max_k", 8)
        if args.trials < 1:
            raise UsageError("--trials must be positive")
        out = args.func(args)
    except (UsageError, ExactError, ValueError, IndexError, ZeroDivisionError) as e:
        print(f"braidvar: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    print(emit_json(out.data) if args.json else out.text)
    return EXIT_OK if out.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
