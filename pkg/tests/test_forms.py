from math import factorial

import pytest
import sympy
from hypothesis import given, strategies as st

from braidvar.cluster import enumerate_triangulations, seed_from_triangulation
from braidvar.exact import RationalFunction, parse_polynomial
from braidvar.forms import (DifferentialForm, TorusWord, alpha_form, betti, cohomology_basis,
                            delta_derivative_check, dlog, exterior_derivative, fractions_check,
                            omega_chart, omega_form, omega_from_seed, top_class_check,
                            torus_omega, wedge)
from braidvar.positroid import plucker_poly
from conftest import to_sympy

dz = DifferentialForm.dz


def rf(num, den="1"):
    return RationalFunction(parse_polynomial(num), parse_polynomial(den))


# ------------------------------------------------------- published examples

def test_sigma3_forms():
    den = "z2*z3 - 1"
    assert alpha_form(3) == dz(3).scale(rf("z2", den)) + dz(2).scale(rf("z3", den))
    assert omega_form(3) == wedge(dz(3), dz(2)).scale(rf("1", den))


def test_sigma4_forms():
    den = "z2*z3*z4 - z4 - z2"
    alpha = (dz(2).scale(rf("z3*z4 - 1", den)) + dz(3).scale(rf("z2*z4", den))
             + dz(4).scale(rf("z2*z3 - 1", den)))
    assert alpha_form(4) == alpha
    omega = (wedge(dz(3), dz(2)).scale(rf("z4", den)) + wedge(dz(4), dz(2)).scale(rf("z3", den))
             + wedge(dz(4), dz(3)).scale(rf("z2", den)))
    assert omega_form(4) == omega
    top = wedge(wedge(dz(4), dz(3)), dz(2)).scale(rf("1", den))
    assert wedge(alpha_form(4), omega_form(4)) == top


# ---------------------------------------------------------- sympy oracle

def sympy_fan_omega(k):
    zs = {i: sympy.Symbol(f"z{i}") for i in range(2, k + 1)}
    ws = [to_sympy(plucker_poly(k, 1, i + 2)) for i in range(1, k)]
    coef = {}
    for i in range(len(ws) - 1):
        hi, lo = ws[i + 1], ws[i]
        for a in range(2, k + 1):
            for b in range(a + 1, k + 1):
                c = (sympy.diff(hi, zs[a]) * sympy.diff(lo, zs[b])
                     - sympy.diff(hi, zs[b]) * sympy.diff(lo, zs[a])) / (hi * lo)
                coef[(a, b)] = coef.get((a, b), 0) + c
    return coef


@pytest.mark.parametrize("k", range(3, 6))
def test_omega_against_sympy_fan_chart(k):
    ref = sympy_fan_omega(k)
    ours = omega_form(k)
    for (a, b), c in ref.items():
        mine = ours.coefficient(a, b)
        assert sympy.simplify(to_sympy(mine.num) / to_sympy(mine.den) - c) == 0


@pytest.mark.parametrize("k", range(2, 7))
def test_alpha_against_sympy_dlog(k):
    w = to_sympy(plucker_poly(k, 1, k + 1))
    ours = alpha_form(k)
    for i in range(2, k + 1):
        mine = ours.coefficient(i)
        ref = sympy.diff(w, sympy.Symbol(f"z{i}")) / w
        assert sympy.simplify(to_sympy(mine.num) / to_sympy(mine.den) - ref) == 0


# --------------------------------------------------------- identities

@pytest.mark.parametrize("k", range(2, 7))
def test_omega_formula_equals_fan_chart(k):
    assert omega_chart(k) == omega_form(k)


@pytest.mark.parametrize("n", range(4, 7))
def test_omega_is_chart_independent(n):
    # each triangulation's quiver gives the same 2-form
    for t in enumerate_triangulations(n):
        assert omega_from_seed(seed_from_triangulation(t)) == omega_form(n - 1)


@pytest.mark.parametrize("k", range(2, 7))
def test_closed(k):
    assert exterior_derivative(alpha_form(k)).is_zero()
    assert exterior_derivative(omega_form(k)).is_zero()


def test_d_squared_and_nonclosed_control():
    f = rf("z2*z3^2 + z4", "z2 - z3")
    assert exterior_derivative(exterior_derivative(DifferentialForm.function(f))).is_zero()
    assert not exterior_derivative(dz(2).scale(rf("z3"))).is_zero()
    assert dlog(parse_polynomial("z2*z3")) == dz(2).scale(rf("1", "z2")) + dz(3).scale(rf("1", "z3"))


@pytest.mark.parametrize("k", range(2, 8))
def test_delta_derivative(k):
    assert delta_derivative_check(k)


@pytest.mark.parametrize("k", range(2, 8))
def test_fractions(k):
    assert all(fractions_check(k, i) for i in range(2, k + 1))


def test_wedge_antisymmetry():
    a, b = dz(2).scale(rf("z3")), dz(3).scale(rf("z2"))
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


def test_pairing_with_equal_vectors_vanishes():
    w = omega_form(4)
    v = {2: 1, 3: 2, 4: -1}
    assert w.pair({2: 1, 3: 2, 4: 5}, [v, v]) == 0


# ------------------------------------------------------------ cohomology

@pytest.mark.parametrize("k", range(1, 11))
def test_betti(k):
    assert betti(k) == (1,) * k
    degs = [c.degree for c in cohomology_basis(k)]
    assert degs == list(range(k))


@pytest.mark.parametrize("k", [3, 5, 7, 9])
def test_top_class_odd(k):
    assert top_class_check(k)
    h = (k - 1) // 2
    word = torus_omega(k) ** h
    assert abs(word.terms[tuple(range(1, k))]) == factorial(h)


def test_sigma5_omega_squared():
    w = torus_omega(5) ** 2
    assert w.terms == {(1, 2, 3, 4): 2}


@pytest.mark.parametrize("k", [2, 4, 6, 8])
def test_even_top_vanishes(k):
    assert (torus_omega(k) ** (k // 2)).is_zero()


def test_sigma3_basis_labels():
    assert [c.label for c in cohomology_basis(3)] == ["1", "alpha", "omega"]


idx = st.integers(1, 5)


@st.composite
def words(draw):
    out = TorusWord()
    for _ in range(draw(st.integers(0, 3))):
        w = TorusWord.one()
        for i in draw(st.lists(idx, max_size=3)):
            w = w * TorusWord.eta(i)
        out = out + w * draw(st.integers(-3, 3))
    return out


@given(idx, idx)
def test_eta_anticommute(i, j):
    a, b = TorusWord.eta(i), TorusWord.eta(j)
    assert a * b == -(b * a)


@given(words(), words(), words())
def test_exterior_algebra_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
