import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from braidvar.continuant import full_point
from braidvar.cuts import (CutError, CutPair, CutSpec, SamplingExhausted, all_specs,
                           alignment_matrix, cut, glue, glue_jacobian, point_matrix,
                           nominal_sign, pullback_cohomology_matrix, pullback_point_check,
                           pullback_values, roundtrip_check, sample_coords, sample_unit,
                           torus_action, type_a_configs,
                           type_b_configs, type_b_paths, verify_type_a, verify_type_b)
from braidvar.exact import Polynomial, RationalFunction
from braidvar.forms import basis_exponents
from braidvar.positroid import PositroidMatrix, normalize_gl2, z_to_matrix
from conftest import nonzero_rationals, to_sympy


# ------------------------------------------------------------------ specs

def test_spec_fields_and_errors():
    s = CutSpec(6, 2, 5)
    assert (s.a, s.b) == (3, 4) and s.a + s.b == s.k + 1
    assert s.right_positions() == [1, 2, 5, 6, 7]
    with pytest.raises(CutError, match="edge"):
        CutSpec(5, 2, 3)
    with pytest.raises(CutError, match="frozen"):
        CutSpec(5, 1, 6)
    with pytest.raises(CutError):
        CutSpec(5, 0, 3)
    # (k+1)-gon has (k+1)(k-2)/2 diagonals, minus the frozen edge which is not one
    for k in range(3, 9):
        assert len(all_specs(k)) == (k + 1) * (k - 2) // 2


def test_cut_example_k3():
    m = z_to_matrix([2, 1, 2])
    assert m.cols == ((1, 0), (2, 1), (1, 1), (0, 1))
    pair = cut(m, CutSpec(3, 1, 3))
    # the published left factor is columns 1..3 before standardizing the last column to (0,1)
    raw_left = PositroidMatrix(((1, 0), (2, 1), (1, 1)))
    assert pair.left == normalize_gl2(raw_left)[1]
    assert pair.left.cols == ((1, 0), (1, 1), (0, 1))
    assert pair.right.cols == ((1, 0), (1, 1), (0, 1))
    assert glue(pair, CutSpec(3, 1, 3)) == m


def test_cut_rejects_vanishing_minor():
    # Delta_13 = z2 = 0 on this point
    m = z_to_matrix(full_point([Fraction(0), Fraction(3)]))
    with pytest.raises(CutError, match="outside the open set"):
        cut(m, CutSpec(3, 1, 3))


def test_cut_rejects_non_unit():
    m = PositroidMatrix(((1, 0), (1, 2), (1, 3), (0, 1)))
    with pytest.raises(CutError, match="not unit"):
        cut(m, CutSpec(3, 1, 3))


def test_glue_rejects_wrong_shapes():
    a = point_matrix([Fraction(2)])
    with pytest.raises(CutError):
        glue(CutPair(a, a), CutSpec(4, 1, 3))


def test_triangle_piece():
    # a = 2: the left piece is X(sigma^2) = {z != 0}
    rng = random.Random(1)
    m = sample_unit(5, rng, [(2, 4)])
    pair = cut(m, CutSpec(5, 2, 4))
    assert pair.left.n == 3 and pair.left.is_unit()


@pytest.mark.parametrize("k", range(3, 7))
def test_roundtrips(k):
    for s in all_specs(k):
        rep = roundtrip_check(s, 10, 7)
        assert rep["passed"] == rep["trials"], (s, rep)


@settings(max_examples=40)
@given(st.integers(3, 8), st.data())
def test_roundtrip_property(k, data):
    s = data.draw(st.sampled_from(all_specs(k)))
    seed = data.draw(st.integers(0, 10 ** 6))
    rng = random.Random(seed)
    m = sample_unit(k, rng, [(s.i, s.j)])
    pair = cut(m, s)
    assert pair.left.is_unit() and pair.right.is_unit()
    assert pair.left.plucker(1, s.a + 1) == m.plucker(s.i, s.j)
    assert glue(pair, s) == m
    other = CutPair(point_matrix(sample_coords(s.a, rng)), point_matrix(sample_coords(s.b, rng)))
    glued = glue(other, s)
    assert glued.is_unit() and glued.plucker(s.i, s.j) != 0
    assert cut(glued, s) == other


@settings(max_examples=40)
@given(st.integers(3, 8), st.data())
def test_alignment_has_determinant_one(k, data):
    s = data.draw(st.sampled_from(all_specs(k)))
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    m = sample_unit(k, rng, [(s.i, s.j)])
    pair = cut(m, s)
    a = alignment_matrix(pair.left.col(1), pair.left.col(s.a + 1), m.col(s.i), m.col(s.j))
    assert a[0][0] * a[1][1] - a[0][1] * a[1][0] == 1


def test_sampling_with_frozen_value():
    rng = random.Random(3)
    coords = sample_coords(4, rng, frozen=Fraction(5, 2))
    assert point_matrix(coords).plucker(1, 5) == Fraction(5, 2)


def test_sampling_exhaustion():
    with pytest.raises(SamplingExhausted):
        sample_unit(4, random.Random(0), [(1, 2), (2, 3)], retries=0)


# ------------------------------------------------------------- torus action

@given(nonzero_rationals, nonzero_rationals, st.integers(1, 6), st.integers(0, 10 ** 6))
def test_torus_action_laws(lam, mu, anchor, seed):
    m = point_matrix(sample_coords(5, random.Random(seed)))
    t = torus_action(m, lam, anchor)
    assert t.consecutive_minors() == m.consecutive_minors()
    for p, q in combinations(range(1, 7), 2):
        e = (-1) ** ((p - anchor) % 2) + (-1) ** ((q - anchor) % 2)
        assert t.plucker(p, q) == m.plucker(p, q) * lam ** e
    assert torus_action(torus_action(m, lam, anchor), mu, anchor) == torus_action(m, lam * mu, anchor)
    assert torus_action(t, 1 / lam, anchor) == m
    assert torus_action(m, 1, anchor) == m


def test_torus_action_zero():
    with pytest.raises(CutError):
        torus_action(point_matrix([Fraction(2)]), 0, 1)


# ---------------------------------------------------------------- double cuts

def test_config_enumeration():
    a = type_a_configs(2, 2, 2)
    assert all(sp.i <= s.i < s.j <= sp.j for s, sp in a)
    assert len(a) == 2 * 2  # positions of (i',j') times positions of (i,j) inside
    b = type_b_configs(2, 3, 2)
    assert ((1, 3), (3, 5)) in [((s.i, s.j), (sp.i, sp.j)) for s, sp in b]
    assert all(s.j <= sp.i for s, sp in b)


@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (3, 3, 2), (2, 2, 4)])
def test_type_a_commutes(shape):
    rep = verify_type_a(*shape, trials=30, seed=5)
    assert rep["passed"] == 30, rep["counterexamples"][:1]


def test_type_a_precondition():
    with pytest.raises(CutError):
        verify_type_a(2, 2, 2, specs=[(CutSpec(4, 1, 3), CutSpec(4, 3, 5))], trials=1)
    with pytest.raises(CutError):
        type_a_configs(1, 2, 2)


def test_type_b_example_k5():
    s, sp = CutSpec(5, 1, 3), CutSpec(5, 3, 5)
    rep = verify_type_b(2, 3, 2, specs=[(s, sp)], trials=30, seed=11)
    assert rep["corrected"]["passed"] == 30
    assert rep["uncorrected"]["passed"] < 30
    assert rep["ok"]


@pytest.mark.parametrize("shape", [(2, 2, 2), (3, 2, 2), (2, 2, 3), (3, 3, 3)])
def test_type_b_needs_the_correction(shape):
    rep = verify_type_b(*shape, trials=30, seed=2)
    assert rep["corrected"]["passed"] == 30
    assert rep["uncorrected_failures"] > 0
    assert rep["inverse"]["passed"] < 30


def test_type_b_trivial_lambda_commutes_without_correction():
    rng = random.Random(4)
    s, sp = CutSpec(5, 1, 3), CutSpec(5, 3, 5)
    for _ in range(5):
        xa = point_matrix(sample_coords(2, rng, frozen=1))
        xb, xc = point_matrix(sample_coords(3, rng)), point_matrix(sample_coords(2, rng))
        assert xa.plucker(1, 3) == 1
        top, bottom = type_b_paths(s, sp, xa, xb, xc, correction=0)
        assert top == bottom


def test_type_b_precondition():
    with pytest.raises(CutError):
        type_b_paths(CutSpec(5, 1, 4), CutSpec(5, 3, 5), None, None, None)


def test_row_convention_breaks_commutation():
    # the alternative rule for i = 1 roundtrips but is not compatible with Type A
    assert all(roundtrip_check(s, 5, 0, "row")["passed"] == 5 for s in all_specs(5))
    assert verify_type_a(2, 2, 2, trials=20, seed=0, convention="row")["passed"] < 20


# ----------------------------------------------------------------- pullbacks

def symbolic_glue(spec):
    x = lambda i: RationalFunction.from_poly(Polynomial.var(i))  # noqa: E731
    left = z_to_matrix(full_point([x(100 + r) for r in range(spec.a - 1)]))
    right = z_to_matrix(full_point([x(200 + r) for r in range(spec.b - 1)]))
    v = glue(CutPair(left, right), spec)
    return [v.plucker(m - 1, m + 1) for m in range(2, spec.k + 1)]


def sym(f):
    return to_sympy(f.num) / to_sympy(f.den)


def sympy_dlog_frozen(k, zs):
    # Delta_{1,k+1} = F_{k-1}(z_2..z_k) as a sympy expression in the given values
    prev, cur = 0, 1
    for v in zs:
        prev, cur = cur, v * cur - prev
    return cur


@pytest.mark.parametrize("k", [3, 4, 5])
def test_alpha_pullback_symbolically(k):
    """Independent route: symbolic glue, then sympy differentiation."""
    for s in all_specs(k):
        big = [sym(f) for f in symbolic_glue(s)]
        u = [sympy.Symbol(f"z{100 + r}") for r in range(s.a - 1)]
        v = [sympy.Symbol(f"z{200 + r}") for r in range(s.b - 1)]
        w = sympy_dlog_frozen(k, big)
        w1 = sympy_dlog_frozen(s.a, u)
        w2 = sympy_dlog_frozen(s.b, v)
        derived = -nominal_sign(s)
        for x in u + v:
            lhs = sympy.diff(w, x) / w
            rhs = sympy.diff(w2, x) / w2 + derived * sympy.diff(w1, x) / w1
            assert sympy.simplify(lhs - rhs) == 0, (s, x)


@pytest.mark.parametrize("k", [4, 5])
def test_jet_jacobian_matches_symbolic(k):
    rng = random.Random(k)
    for s in all_specs(k):
        xa, xb = sample_coords(s.a, rng), sample_coords(s.b, rng)
        zs, grads = glue_jacobian(s, xa, xb)
        point = {100 + r: c for r, c in enumerate(xa)}
        point.update({200 + r: c for r, c in enumerate(xb)})
        order = sorted(point)
        for m, f in enumerate(symbolic_glue(s)):
            assert f.evaluate(point) == zs[m]
            assert [f.partial(v).evaluate(point) for v in order] == list(grads[m])


def test_pullback_pairings_are_antisymmetric():
    s = CutSpec(5, 2, 4)
    rng = random.Random(0)
    vals = pullback_values(s, sample_coords(2, rng), sample_coords(4, rng))
    n = 4
    assert len(vals["omega"]) == n * (n - 1) // 2
    assert len(vals["alpha"]) == n


def test_pullback_k3_example():
    # both factors are X(sigma^2), where omega vanishes
    s = CutSpec(3, 1, 3)
    rep = pullback_point_check(3, s, trials=20, seed=1, sign=-1)
    assert rep["passed"] == 20
    rng = random.Random(2)
    vals = pullback_values(s, sample_coords(2, rng), sample_coords(2, rng))
    assert vals["omega1"] == vals["omega2"] == [0]
    assert vals["omega"] == [-c for c in vals["cross"]]


@pytest.mark.parametrize("k", range(3, 7))
def test_pullback_sign_survey(k):
    """Which sign in alpha2 + s alpha1 the data satisfy, per diagonal.

    Records the observed sign as (-1)^(k-j+1), the negative of the nominal one.
    """
    for s in all_specs(k):
        rep = pullback_point_check(k, s, trials=10, seed=3)
        assert rep["signs_that_hold"] == [-nominal_sign(s)], (k, s.i, s.j)


def test_pullback_sign_k4_24():
    rep = pullback_point_check(4, CutSpec(4, 2, 4), trials=10, seed=0)
    assert rep["sign"] == 1
    assert rep["signs_that_hold"] == [-1]


# ------------------------------------------------------------- cohomology

class TruncatedRing:
    """Q[alpha, omega]/(alpha^2, degree >= n) with alpha odd, as dicts (e, f) -> coeff."""

    def __init__(self, n, tag):
        self.n, self.tag = n, tag

    def ok(self, e, f):
        return e <= 1 and e + 2 * f <= self.n - 1


def tensor_mul(x, y, r1, r2):
    # keys (e1, f1, e2, f2); Koszul sign from moving alpha_2 of x past alpha_1 of y
    out = {}
    for (a1, b1, a2, b2), c in x.items():
        for (c1, d1, c2, d2), e in y.items():
            if not (r1.ok(a1 + c1, b1 + d1) and r2.ok(a2 + c2, b2 + d2)):
                continue
            sign = -1 if (a2 and c1) else 1
            key = (a1 + c1, b1 + d1, a2 + c2, b2 + d2)
            out[key] = out.get(key, 0) + sign * c * e
    return {k: v for k, v in out.items() if v}


def abstract_rank(s, sign):
    r1, r2 = TruncatedRing(s.a, 1), TruncatedRing(s.b, 2)
    one = {(0, 0, 0, 0): 1}
    alpha = {(0, 0, 1, 0): 1, (1, 0, 0, 0): sign}
    omega = {(0, 1, 0, 0): 1, (0, 0, 0, 1): 1, (1, 0, 1, 0): sign}
    rows = []
    for e, f in basis_exponents(s.k):
        x = one
        for _ in range(e):
            x = tensor_mul(x, alpha, r1, r2)
        for _ in range(f):
            x = tensor_mul(x, omega, r1, r2)
        rows.append(x)
    keys = sorted({k for r in rows for k in r})
    return sympy.Matrix([[r.get(k, 0) for k in keys] for r in rows]).rank()


def test_cohomology_k3_example():
    m, rank = pullback_cohomology_matrix(3, CutSpec(3, 1, 3))
    assert rank == 3
    assert len(m) == 3 and len(m[0]) == 4  # tensor basis {1, a1} x {1, a2}


@pytest.mark.parametrize("k", range(3, 8))
def test_cohomology_rank_two_routes(k):
    for s in all_specs(k):
        for sign in (1, -1):
            _, rank = pullback_cohomology_matrix(k, s, sign)
            assert rank == k == abstract_rank(s, sign), (k, s.i, s.j, sign)
