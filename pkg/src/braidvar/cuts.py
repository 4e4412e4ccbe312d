"""Diagonal cuts and glues between unit positroid matrices.

Points of X(sigma^k) are represented by their standard unit matrices
z_to_matrix(z), which have the shape (1 * ... 0; 0 1 ... *).  For a diagonal
(i, j) the cut splits such a matrix into

* left:  columns v_i..v_j, brought to standard form by an SL2 change of basis;
* right: columns v_1..v_i, v_j..v_{k+1}, with v_m (m >= j) rescaled by
  Delta_ij^{(-1)^{m-j+1}}.

The same rescaling rule is used for i = 1 ("uniform").  The alternative rule
for i = 1, a row scaling by 1/Delta_1j followed by alternating column factors,
is available as ``convention="row"`` for comparison; it does not make the
double-cut diagrams commute.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .continuant import continuant_values, full_point
from .exact import Jet, fast_rational, matrix_rank, solve_linear
from .forms import (alpha_form, cohomology_basis, omega_form,
                    torus_alpha, torus_omega)
from .positroid import (PositroidMatrix, mat_inv2, mat_mul2, normalize_gl2,
                        z_to_matrix)

CONVENTIONS = ("uniform", "row")


class CutError(ValueError):
    pass


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class CutSpec:
    k: int
    i: int
    j: int

    def __post_init__(self):
        k, i, j = self.k, self.i, self.j
        if not (1 <= i < j <= k + 1):
            raise CutError(f"need 1 <= i < j <= k+1, got ({i}, {j}) for k={k}")
        if j < i + 2:
            raise CutError(f"({i}, {j}) is an edge, not a diagonal")
        if (i, j) == (1, k + 1):
            raise CutError(f"(1, {k + 1}) is the frozen edge, not a diagonal")

    @property
    def a(self) -> int:
        return self.j - self.i

    @property
    def b(self) -> int:
        return self.k - self.j + self.i + 1

    def right_positions(self) -> list:
        """Big-polygon index of each right column."""
        return list(range(1, self.i + 1)) + list(range(self.j, self.k + 2))

    def left_positions(self) -> list:
        return list(range(self.i, self.j + 1))


def all_specs(k: int) -> list:
    return [CutSpec(k, i, j) for i in range(1, k + 1) for j in range(i + 2, k + 2)
            if (i, j) != (1, k + 1)]


@dataclass(frozen=True)
class CutPair:
    left: PositroidMatrix
    right: PositroidMatrix


def right_exponents(spec: CutSpec) -> list:
    """Power of Delta_ij multiplying each right column (uniform rule)."""
    return [0 if m <= spec.i else (1 if (m - spec.j + 1) % 2 == 0 else -1)
            for m in spec.right_positions()]


def _power(x, e: int):
    if e == 0:
        return Fraction(1)
    return x if e == 1 else 1 / x


def _right_transform(spec: CutSpec, delta, convention: str):
    """(row matrix or None, column factors) taking raw right columns to the factor."""
    if convention not in CONVENTIONS:
        raise CutError(f"unknown convention {convention!r}")
    if convention == "row" and spec.i == 1:
        zero = delta - delta
        row = ((zero + 1, zero), (zero, 1 / delta))
        factors = [Fraction(1)] + [delta if r % 2 == 1 and r >= 3 else Fraction(1)
                                   for r in range(2, spec.b + 2)]
        return row, factors
    return None, [_power(delta, e) for e in right_exponents(spec)]


def _standard(m: PositroidMatrix) -> PositroidMatrix:
    return normalize_gl2(m)[1]


def _check_unit(m: PositroidMatrix, what: str) -> None:
    for r, d in enumerate(m.consecutive_minors(), start=1):
        if d != 1:
            raise CutError(f"{what} is not unit: Delta_{{{r},{r + 1}}} = {d}")
    if not m.plucker(1, m.n):
        raise CutError(f"{what} has Delta_1n = 0")


def cut(m: PositroidMatrix, spec: CutSpec, convention: str = "uniform") -> CutPair:
    if m.n != spec.k + 1:
        raise CutError(f"matrix has {m.n} columns, spec needs {spec.k + 1}")
    _check_unit(m, "input")
    m = _standard(m)
    delta = m.plucker(spec.i, spec.j)
    if not delta:
        raise CutError(f"Delta_{{{spec.i},{spec.j}}} = 0: point outside the open set")
    left = _standard(PositroidMatrix(tuple(m.col(p) for p in spec.left_positions())))
    raw = PositroidMatrix(tuple(m.col(p) for p in spec.right_positions()))
    row, factors = _right_transform(spec, delta, convention)
    if row is not None:
        raw = raw.apply(row)
    right = _standard(raw.scale_columns(factors))
    return CutPair(left, right)


def alignment_matrix(left_first, left_last, right_i, right_next):
    """The 2x2 map sending left_first -> right_i and left_last -> right_next."""
    src = ((left_first[0], left_last[0]), (left_first[1], left_last[1]))
    dst = ((right_i[0], right_next[0]), (right_i[1], right_next[1]))
    return mat_mul2(dst, mat_inv2(src))


def glue(pair: CutPair, spec: CutSpec, convention: str = "uniform") -> PositroidMatrix:
    left, right = pair.left, pair.right
    if left.n != spec.a + 1 or right.n != spec.b + 1:
        raise CutError(f"pair shapes {left.n}, {right.n} do not match a+1={spec.a + 1}, b+1={spec.b + 1}")
    delta = left.plucker(1, left.n)
    if not delta:
        raise CutError("Delta_1,a+1 of the left factor vanishes")
    row, factors = _right_transform(spec, delta, convention)
    raw = right.scale_columns([1 / f for f in factors])
    if row is not None:
        raw = raw.apply(mat_inv2(row))
    i = spec.i
    a = alignment_matrix(left.col(1), left.col(left.n), raw.col(i), raw.col(i + 1))
    moved = left.apply(a)
    cols = raw.cols[:i] + moved.cols[1:-1] + raw.cols[i:]
    return _standard(PositroidMatrix(cols))


def torus_action(m: PositroidMatrix, lam, j: int) -> PositroidMatrix:
    """Scale column r by lam^{(-1)^{r-j}}."""
    if not lam:
        raise CutError("torus parameter must be nonzero")
    if isinstance(lam, int):
        lam = Fraction(lam)
    inv = 1 / lam
    return m.scale_columns([lam if (r - j) % 2 == 0 else inv for r in range(1, m.n + 1)])


# ------------------------------------------------------------------ sampling

def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-9, 9), rng.randint(1, 9))


def sample_coords(k: int, rng: random.Random, frozen=None, retries: int = 1000) -> tuple:
    """Chart coordinates (z_2..z_k) of a point with Delta_{1,k+1} != 0.

    With ``frozen`` given, z_k is solved so that Delta_{1,k+1} equals it.
    """
    for _ in range(retries):
        coords = [random_rational(rng) for _ in range(k - 1)]
        if frozen is not None and k >= 2:
            head = coords[:-1]
            p, q = continuant_values(head), continuant_values(head[:-1]) if head else 0
            if not p:
                continue
            coords[-1] = (Fraction(frozen) + q) / p
        if continuant_values(coords):
            return tuple(coords)
    raise SamplingExhausted(f"no admissible point for k={k} after {retries} tries")


def point_matrix(coords: Sequence) -> PositroidMatrix:
    return z_to_matrix(full_point(coords))


def _fast_point(coords: Sequence) -> PositroidMatrix:
    # same point, entries in the fast rational type; used by the sampling checks
    return point_matrix([fast_rational(x) for x in coords])


def sample_unit(k: int, rng: random.Random, nonzero: Sequence = (), retries: int = 1000) -> PositroidMatrix:
    for _ in range(retries):
        m = _fast_point(sample_coords(k, rng))
        if all(m.plucker(p, q) for p, q in nonzero):
            return m
    raise SamplingExhausted(f"no point with nonzero {list(nonzero)} for k={k}")


def trial_rng(seed: int, label: str, trial: int) -> random.Random:
    return random.Random(f"{seed}/{label}/{trial}")


def _mat_json(m: PositroidMatrix) -> list:
    return [[str(x), str(y)] for x, y in m.cols]


# ---------------------------------------------------------------- roundtrips

def roundtrip_check(spec: CutSpec, trials: int, seed: int, convention: str = "uniform") -> dict:
    passed = 0
    bad = []
    for t in range(trials):
        rng = trial_rng(seed, f"roundtrip/{spec.k}/{spec.i}/{spec.j}", t)
        m = sample_unit(spec.k, rng, [(spec.i, spec.j)])
        pair = cut(m, spec, convention)
        ok = pair.left.is_unit() and pair.right.is_unit() and glue(pair, spec, convention) == m
        xa = _fast_point(sample_coords(spec.a, rng))
        xb = _fast_point(sample_coords(spec.b, rng))
        glued = glue(CutPair(xa, xb), spec, convention)
        back = cut(glued, spec, convention)
        ok = ok and back == CutPair(xa, xb) and bool(glued.plucker(spec.i, spec.j))
        if ok:
            passed += 1
        elif len(bad) < 5:
            bad.append({"trial": t, "matrix": _mat_json(m)})
    return {"trials": trials, "passed": passed, "counterexamples": bad}


# ------------------------------------------------------------ double cuts

def type_a_configs(a: int, b: int, c: int) -> list:
    """Nested pairs ((i,j), (i',j')) with i' <= i < j <= j' and factor sizes a, b, c."""
    if min(a, b, c) < 2:
        raise CutError("factor sizes must be >= 2")
    k = a + b + c - 2
    out = []
    for ip in range(1, k + 2):
        jp = ip + a + b - 1
        if jp > k + 1:
            break
        for i in range(ip, jp - a + 1):
            out.append((CutSpec(k, i, i + a), CutSpec(k, ip, jp)))
    return out


def type_b_configs(a: int, b: int, c: int) -> list:
    """Disjoint pairs ((i,j), (i',j')) with j <= i' and factor sizes a, b, c."""
    if min(a, b, c) < 2:
        raise CutError("factor sizes must be >= 2")
    k = a + b + c - 2
    out = []
    for i in range(1, k + 2):
        j = i + a
        for ip in range(j, k + 2):
            jp = ip + c
            if jp > k + 1:
                break
            out.append((CutSpec(k, i, j), CutSpec(k, ip, jp)))
    return out


def _validate_type_a(s: CutSpec, sp: CutSpec) -> None:
    if not (sp.i <= s.i < s.j <= sp.j) or (s.i, s.j) == (sp.i, sp.j) or s.k != sp.k:
        raise CutError(f"({s.i},{s.j}) and ({sp.i},{sp.j}) are not nested diagonals")


def _validate_type_b(s: CutSpec, sp: CutSpec) -> None:
    if not (s.j <= sp.i) or s.k != sp.k:
        raise CutError(f"({s.i},{s.j}) and ({sp.i},{sp.j}) are not disjoint in order")


def type_a_paths(s: CutSpec, sp: CutSpec, xa, xb, xc, convention: str = "uniform") -> tuple:
    """Both composites X(a) x X(b) x X(c) -> X(k) for nested diagonals."""
    _validate_type_a(s, sp)
    k = s.k
    # top: Phi_ij o (Id x Phi_{i'j'}) with (i',j') re-indexed in the outer piece of (i,j)
    inner_outer = CutSpec(k - s.a + 1, sp.i, sp.j - s.j + s.i + 1)
    top = glue(CutPair(xa, glue(CutPair(xb, xc), inner_outer, convention)), s, convention)
    # bottom: Phi_{i'j'} o (Phi_ij x Id) with (i,j) re-indexed in the inner piece of (i',j')
    inner_inner = CutSpec(sp.a, s.i - sp.i + 1, s.j - sp.i + 1)
    bottom = glue(CutPair(glue(CutPair(xa, xb), inner_inner, convention), xc), sp, convention)
    return top, bottom


def type_b_paths(s: CutSpec, sp: CutSpec, xa, xb, xc, correction: int = 1,
                 convention: str = "uniform") -> tuple:
    """Both composites for disjoint diagonals; correction = +1 applies T, -1 applies
    its inverse, 0 applies nothing to the third factor."""
    _validate_type_b(s, sp)
    k = s.k
    shifted = CutSpec(k - s.a + 1, sp.i - s.j + s.i + 1, sp.j - s.j + s.i + 1)
    top = glue(CutPair(xa, glue(CutPair(xc, xb), shifted, convention)), s, convention)
    lam = xa.plucker(1, xa.n)
    xc2 = xc
    if correction:
        xc2 = _standard(torus_action(xc, lam if correction > 0 else 1 / lam, s.j - sp.i + 1))
    outer = CutSpec(k - sp.a + 1, s.i, s.j)
    bottom = glue(CutPair(xc2, glue(CutPair(xa, xb), outer, convention)), sp, convention)
    return top, bottom


def _sizes_report(kind: str, a, b, c, configs, trials, seed, fn) -> dict:
    passed = 0
    bad = []
    for t in range(trials):
        s, sp = configs[t % len(configs)]
        rng = trial_rng(seed, f"{kind}/{a}/{b}/{c}", t)
        xa, xb, xc = (_fast_point(sample_coords(n, rng)) for n in (a, b, c))
        top, bottom = fn(s, sp, xa, xb, xc)
        if top == bottom:
            passed += 1
        elif len(bad) < 5:
            bad.append({"trial": t, "specs": [[s.i, s.j], [sp.i, sp.j]],
                        "factors": [_mat_json(x) for x in (xa, xb, xc)]})
    return {"trials": trials, "passed": passed, "counterexamples": bad}


def verify_type_a(a: int, b: int, c: int, specs=None, trials: int = 100, seed: int = 0,
                  convention: str = "uniform") -> dict:
    configs = list(specs) if specs else type_a_configs(a, b, c)
    for s, sp in configs:
        _validate_type_a(s, sp)
    rep = _sizes_report("A", a, b, c, configs, trials, seed,
                        lambda s, sp, x, y, z: type_a_paths(s, sp, x, y, z, convention))
    rep["configurations"] = len(configs)
    return rep


def verify_type_b(a: int, b: int, c: int, specs=None, trials: int = 100, seed: int = 0,
                  convention: str = "uniform") -> dict:
    configs = list(specs) if specs else type_b_configs(a, b, c)
    for s, sp in configs:
        _validate_type_b(s, sp)
    out = {"configurations": len(configs)}
    for name, corr in (("corrected", 1), ("inverse", -1), ("uncorrected", 0)):
        out[name] = _sizes_report("B", a, b, c, configs, trials, seed,
                                  lambda s, sp, x, y, z, corr=corr:
                                  type_b_paths(s, sp, x, y, z, corr, convention))
    corrected = out["corrected"]
    out["trials"] = corrected["trials"]
    out["passed"] = corrected["passed"]
    out["counterexamples"] = corrected["counterexamples"]
    out["uncorrected_failures"] = trials - out["uncorrected"]["passed"]
    out["ok"] = corrected["passed"] == trials and out["uncorrected_failures"] > 0
    return out


# ------------------------------------------------------------------ pullbacks

def nominal_sign(spec: CutSpec) -> int:
    """The sign (-1)^{k-j} of the cross terms in the pullback formulas."""
    return 1 if (spec.k - spec.j) % 2 == 0 else -1


@dataclass
class _FormCache:
    alpha: dict = field(default_factory=dict)
    omega: dict = field(default_factory=dict)

    def get(self, k: int):
        if k not in self.alpha:
            self.alpha[k] = alpha_form(k)
            self.omega[k] = omega_form(k)
        return self.alpha[k], self.omega[k]


_FORMS = _FormCache()


def _form_values(k: int, coords: Sequence) -> tuple:
    """alpha and omega coefficients of X(k) at chart coordinates (z_2..z_k)."""
    al, om = _FORMS.get(k)
    point = {r + 2: c for r, c in enumerate(coords)}
    return al.evaluate(point), om.evaluate(point)


def glue_jacobian(spec: CutSpec, xa_coords: Sequence, xb_coords: Sequence, convention: str = "uniform") -> tuple:
    """Big chart coordinates of the glued point and their derivatives in the
    factor coordinates (xa_coords + xb_coords)."""
    size = len(xa_coords) + len(xb_coords)
    jets = [Jet.variable(c, r, size) for r, c in enumerate(list(xa_coords) + list(xb_coords))]
    ja, jb = jets[:len(xa_coords)], jets[len(xa_coords):]
    left = z_to_matrix(full_point(ja))
    right = z_to_matrix(full_point(jb))
    v = glue(CutPair(left, right), spec, convention)
    zs = [v.plucker(m - 1, m + 1) for m in range(2, spec.k + 1)]
    return [zz.value for zz in zs], [zz.grad for zz in zs]


def _pair1(coef: dict, vec: Sequence, base: int) -> Fraction:
    return sum((c * vec[i - base] for (i,), c in coef.items()), Fraction(0))


def _pair2(coef: dict, u: Sequence, w: Sequence, base: int) -> Fraction:
    total = Fraction(0)
    for (i, j), c in coef.items():
        total += c * (u[i - base] * w[j - base] - u[j - base] * w[i - base])
    return total


def pullback_values(spec: CutSpec, xa: Sequence, xb: Sequence, convention: str = "uniform") -> dict:
    """Exact pairings of pullbacks and factor forms on coordinate tangent vectors."""
    a, b = spec.a, spec.b
    n = (a - 1) + (b - 1)
    zs, grads = glue_jacobian(spec, xa, xb, convention)
    big_al, big_om = _form_values(spec.k, zs)
    a1, w1 = _form_values(a, xa)
    a2, w2 = _form_values(b, xb)
    # tangent vector e_p pushed forward: dz_m = grads[m-2][p]
    push = [[grads[m][p] for m in range(len(zs))] for p in range(n)]
    e = [[Fraction(int(p == q)) for q in range(n)] for p in range(n)]
    f1 = [e[p][:a - 1] for p in range(n)]
    f2 = [e[p][a - 1:] for p in range(n)]
    out = {"alpha": [], "alpha1": [], "alpha2": [], "omega": [], "omega1": [], "omega2": []}
    for p in range(n):
        out["alpha"].append(_pair1(big_al, push[p], 2))
        out["alpha1"].append(_pair1(a1, f1[p], 2))
        out["alpha2"].append(_pair1(a2, f2[p], 2))
    for p in range(n):
        for q in range(p + 1, n):
            out["omega"].append(_pair2(big_om, push[p], push[q], 2))
            out["omega1"].append(_pair2(w1, f1[p], f1[q], 2))
            out["omega2"].append(_pair2(w2, f2[p], f2[q], 2))
    pairs = [(p, q) for p in range(n) for q in range(p + 1, n)]
    out["cross"] = [out["alpha1"][p] * out["alpha2"][q] - out["alpha1"][q] * out["alpha2"][p]
                    for p, q in pairs]
    return out


def pullback_identities_hold(vals: dict, sign: int) -> tuple:
    ok_alpha = all(x == y + sign * w for x, y, w in zip(vals["alpha"], vals["alpha2"], vals["alpha1"]))
    ok_omega = all(x == o1 + o2 + sign * c for x, o1, o2, c in
                   zip(vals["omega"], vals["omega1"], vals["omega2"], vals["cross"]))
    return ok_alpha, ok_omega


def pullback_point_check(k: int, spec: CutSpec | tuple, trials: int = 100, seed: int = 0,
                         sign: int | None = None, convention: str = "uniform") -> dict:
    """Compare pullbacks of alpha and omega with alpha2 + s alpha1 and
    omega1 + omega2 + s alpha1 ^ alpha2 at random points.

    ``sign`` defaults to the nominal (-1)^{k-j}.  The report also records, for
    every trial, which of s = +1 / -1 satisfy both identities.
    """
    if not isinstance(spec, CutSpec):
        spec = CutSpec(k, *spec)
    if spec.k != k:
        raise CutError("spec is for a different k")
    s = nominal_sign(spec) if sign is None else sign
    passed = 0
    poles = 0
    bad = []
    observed = set()
    for t in range(trials):
        rng = trial_rng(seed, f"pullback/{k}/{spec.i}/{spec.j}", t)
        for _ in range(1000):
            xa = sample_coords(spec.a, rng)
            xb = sample_coords(spec.b, rng)
            try:
                vals = pullback_values(spec, [fast_rational(x) for x in xa],
                                       [fast_rational(x) for x in xb], convention)
                break
            except ZeroDivisionError:
                poles += 1
        else:
            raise SamplingExhausted(f"every sampled point hit a pole for spec ({spec.i}, {spec.j})")
        for cand in (1, -1):
            if all(pullback_identities_hold(vals, cand)):
                observed.add(cand)
        ok_a, ok_w = pullback_identities_hold(vals, s)
        if ok_a and ok_w:
            passed += 1
        elif len(bad) < 3:
            bad.append({"trial": t, "left": [str(x) for x in xa], "right": [str(x) for x in xb],
                        "alpha_ok": ok_a, "omega_ok": ok_w})
    return {"k": k, "spec": [spec.i, spec.j], "sign": s, "trials": trials, "passed": passed,
            "poles_resampled": poles, "counterexamples": bad, "signs_that_hold": sorted(observed)}


def _tensor_basis(spec: CutSpec) -> tuple:
    b1 = cohomology_basis(spec.a, 0)
    b2 = cohomology_basis(spec.b, spec.a - 1)
    words = [(c1, c2, c1.word * c2.word) for c1 in b1 for c2 in b2]
    return words


def pullback_images(spec: CutSpec, sign: int | None = None) -> list:
    """Images of the basis classes of X(k) under the substitution
    alpha -> alpha2 + s alpha1, omega -> omega1 + omega2 + s alpha1 alpha2."""
    s = nominal_sign(spec) if sign is None else sign
    a, b = spec.a, spec.b
    al1, om1 = torus_alpha(a, 0), torus_omega(a, 0)
    al2, om2 = torus_alpha(b, a - 1), torus_omega(b, a - 1)
    pa = al2 + al1 * s
    pw = om1 + om2 + (al1 * al2) * s
    return [(pa ** e) * (pw ** f) for e, f in
            ((c.alpha, c.omega) for c in cohomology_basis(spec.k))]


def pullback_cohomology_matrix(k: int, spec: CutSpec | tuple, sign: int | None = None) -> tuple:
    """Coefficients of the pulled-back basis in the tensor basis, and the rank."""
    if not isinstance(spec, CutSpec):
        spec = CutSpec(k, *spec)
    basis = _tensor_basis(spec)
    monos = sorted({m for _, _, w in basis for m in w.terms})
    cols = [[w.terms.get(m, Fraction(0)) for m in monos] for _, _, w in basis]
    rows = []
    for img in pullback_images(spec, sign):
        extra = set(img.terms) - set(monos)
        if extra:
            raise CutError("pullback image leaves the span of the tensor basis")
        x = solve_linear(cols, [img.terms.get(m, Fraction(0)) for m in monos])
        if x is None:
            raise CutError("pullback image is not in the span of the tensor basis")
        rows.append(x)
    return rows, matrix_rank(rows)


def tensor_basis_labels(spec: CutSpec) -> list:
    return [f"{c1.label}|{c2.label}" for c1, c2, _ in _tensor_basis(spec)]
