import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from braidvar.continuant import (NotOnChartError, VarietyPoint, F, braid_matrix, braid_product,
                                 continuant, continuant_values, det_identity, full_point,
                                 on_variety, solve_z1)
from braidvar.exact import parse_polynomial, poly_eval
from conftest import small_rationals, to_sympy


def sympy_braid(k):
    zs = sympy.symbols(f"z1:{k + 1}")
    m = sympy.eye(2)
    for zi in zs:
        m = m * sympy.Matrix([[zi, -1], [1, 0]])
    return m.applyfunc(sympy.expand)


@pytest.mark.parametrize("k", range(1, 9))
def test_braid_matrix_against_sympy_product(k):
    ours = braid_matrix(k)
    ref = sympy_braid(k)
    for r in range(2):
        for c in range(2):
            assert sympy.expand(to_sympy(ours[r][c]) - ref[r, c]) == 0
    assert ours == braid_product(k)


def test_published_examples():
    # published: the defining equations of X(sigma^3) and X(sigma^4)
    assert F(3) == parse_polynomial("z1*z2*z3-z3-z1")
    assert F(4) == parse_polynomial("z1*z2*z3*z4-z1*z2-z1*z4-z3*z4+1")
    assert F(2) == parse_polynomial("z1*z2 - 1")
    assert F(0) == 1 and F(-1) == 0


def test_windows_and_sentinel():
    assert continuant([2, 3]) == parse_polynomial("z2*z3 - 1")
    assert continuant(None) == 0
    assert F(3, 2) == parse_polynomial("z2*z3*z4 - z4 - z2")


@pytest.mark.parametrize("i", range(0, 9))
def test_det_identity(i):
    assert det_identity(i)


def test_det_identity_hand_cases():
    # i = 1: z1 z2 - (z1 z2 - 1) * 1 = 1
    assert F(1, 1) * F(1, 2) - F(2, 1) * F(0, 2) == 1


@pytest.mark.parametrize("m,start", [(3, 2), (4, 3), (5, 4)])
def test_shift_equivariance(m, start):
    assert F(m, start) == F(m, 1).shift(start - 1)


def test_solve_z1_examples():
    assert solve_z1([2]) == Fraction(1, 2)
    assert solve_z1([1, 2]) == 2
    with pytest.raises(NotOnChartError):
        solve_z1([1, 1])
    assert solve_z1([]) == 0


def test_on_variety_examples():
    assert on_variety([0])
    assert on_variety([1, 1]) and not on_variety([1, 2])
    assert on_variety([2, 1, 2])


@pytest.mark.parametrize("k", range(2, 9))
def test_solve_then_on_variety(k):
    rng = random.Random(f"variety/{k}")
    done = 0
    while done < 200:
        coords = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(k - 1)]
        if continuant_values(coords) == 0:
            continue
        assert on_variety(full_point(coords))
        done += 1


@given(st.lists(small_rationals, min_size=1, max_size=7))
def test_numeric_continuant_matches_polynomial(vals):
    k = len(vals)
    assert continuant_values(vals) == poly_eval(F(k), vals)


def test_variety_point():
    p = VarietyPoint.parse(3, "1,2")
    assert p.full == (2, 1, 2)
    with pytest.raises(ValueError):
        VarietyPoint(3, (1,))
