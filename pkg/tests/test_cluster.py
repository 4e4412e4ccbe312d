import random
from math import comb

import pytest
from hypothesis import given, strategies as st

from braidvar.cluster import (ClusterError, Quiver, Seed, Triangulation, big_cut_seed,
                              crosses, cut_triangulation, enumerate_triangulations,
                              exchange_ratio, fan_triangulation, flip, flipped_diagonal,
                              freezing_check, freezing_ratio_identities, mutate_quiver,
                              mutate_seed, parse_edge, product_cut_seed,
                              quasi_equivalence_check, quiver_from_triangulation,
                              seed_from_triangulation)
from braidvar.exact import Polynomial, RationalFunction, parse_polynomial
from braidvar.positroid import plucker_poly


def catalan(m):
    return comb(2 * m, m) // (m + 1)


@pytest.mark.parametrize("n", range(3, 9))
def test_triangulation_count_is_catalan(n):
    ts = enumerate_triangulations(n)
    assert len(ts) == catalan(n - 2)
    assert len({t.diagonals for t in ts}) == len(ts)
    for t in ts:
        assert len(t.diagonals) == n - 3
        assert not any(crosses(a, b) for a in t.diagonals for b in t.diagonals)


def test_fan_examples():
    assert fan_triangulation(3).diagonals == {(1, 3)}
    assert fan_triangulation(4).diagonals == {(1, 3), (1, 4)}
    assert fan_triangulation(2).diagonals == frozenset()


def test_triangulation_validation():
    with pytest.raises(ClusterError):
        Triangulation(5, frozenset({(1, 3), (2, 4)}))
    with pytest.raises(ClusterError):
        Triangulation(5, frozenset({(1, 3)}))
    assert parse_edge("4-1") == (1, 4)


def opposite_diagonal(t, d):
    # oracle: the two vertices adjacent to both ends of d across t's edges
    edges = t.edges()
    a, b = d
    common = [c for c in range(1, t.n + 1)
              if c not in d and tuple(sorted((a, c))) in edges and tuple(sorted((b, c))) in edges]
    # exactly two of them bound triangles containing d
    assert len(common) == 2, common
    return tuple(sorted(common))


@pytest.mark.parametrize("n", range(4, 8))
def test_flip_matches_quadrilateral_oracle(n):
    for t in enumerate_triangulations(n):
        for d in t.diagonals:
            assert flipped_diagonal(t, d) == opposite_diagonal(t, d)
            assert flip(flip(t, d), flipped_diagonal(t, d)) == t


def test_flip_examples():
    assert flip(fan_triangulation(3), (1, 3)).diagonals == {(2, 4)}
    assert flip(fan_triangulation(4), (1, 4)).diagonals == {(1, 3), (3, 5)}
    with pytest.raises(ClusterError):
        flip(fan_triangulation(4), (2, 4))


def test_quiver_examples():
    q3 = quiver_from_triangulation(fan_triangulation(3))
    assert q3.arrows() == [((1, 4), (1, 3), 1)]
    assert q3.frozen == {(1, 4)}
    q4 = quiver_from_triangulation(fan_triangulation(4))
    assert sorted(q4.arrows()) == [((1, 4), (1, 3), 1), ((1, 5), (1, 4), 1)]


@pytest.mark.parametrize("n", range(4, 8))
def test_flip_mutation_compatibility(n):
    for t in enumerate_triangulations(n):
        for specialize in (True, False):
            q = quiver_from_triangulation(t, specialize)
            for d in t.diagonals:
                lhs = quiver_from_triangulation(flip(t, d), specialize)
                rhs = mutate_quiver(q, d, flipped_diagonal(t, d))
                assert lhs.as_dict() == rhs.as_dict() and lhs.frozen == rhs.frozen


@st.composite
def quivers(draw):
    n = draw(st.integers(2, 6))
    eps = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            x = draw(st.integers(-2, 2))
            eps[a][b], eps[b][a] = x, -x
    nf = draw(st.integers(0, n - 1))
    return Quiver(tuple(range(n)), eps, frozenset(range(n - nf, n)))


@given(quivers(), st.data())
def test_mutation_is_involution(q, data):
    v = data.draw(st.sampled_from(q.mutable))
    assert mutate_quiver(mutate_quiver(q, v), v) == q
    with pytest.raises(ClusterError):
        if q.frozen:
            mutate_quiver(q, next(iter(q.frozen)))
        else:
            raise ClusterError("no frozen vertex")


def test_seed_mutation_examples():
    # unspecialized square: the Plucker relation
    s = seed_from_triangulation(fan_triangulation(3), specialize=False)
    s2 = mutate_seed(s, (1, 3), (2, 4))
    assert s2.variables[(2, 4)] == RationalFunction.from_poly(plucker_poly(3, 2, 4))
    # specialized: (1 + Delta_14) / Delta_13 = z3
    s = seed_from_triangulation(fan_triangulation(3))
    s2 = mutate_seed(s, (1, 3), (2, 4))
    assert s2.variables[(2, 4)] == RationalFunction.from_poly(Polynomial.var(3))
    assert mutate_seed(s2, (2, 4), (1, 3)).variables == s.variables


def test_exchange_ratio_examples():
    s = seed_from_triangulation(fan_triangulation(3))
    assert exchange_ratio(s, (1, 3)) == RationalFunction.from_poly(parse_polynomial("z2*z3 - 1"))
    s = seed_from_triangulation(fan_triangulation(4))
    mid = exchange_ratio(s, (1, 4))
    assert mid == RationalFunction(plucker_poly(4, 1, 5), plucker_poly(4, 1, 3))
    lone = Seed(Quiver(("a", "b"), [[0, 0], [0, 0]], frozenset({"b"})),
                {"a": RationalFunction.from_poly(Polynomial.var(1)),
                 "b": RationalFunction.from_poly(Polynomial.var(2))})
    assert exchange_ratio(lone, "a") == RationalFunction.from_poly(Polynomial.const(1))


@pytest.mark.parametrize("k", range(3, 7))
def test_flip_paths_reproduce_plucker_variables(k):
    rng = random.Random(f"flips/{k}")
    t = fan_triangulation(k)
    s = seed_from_triangulation(t)
    for _ in range(12):
        d = rng.choice(sorted(t.diagonals))
        new = flipped_diagonal(t, d)
        s, t = mutate_seed(s, d, new), flip(t, d)
        assert s.variables[new] == RationalFunction.from_poly(plucker_poly(k, *new))
        assert s.quiver.as_dict() == quiver_from_triangulation(t).as_dict()


@pytest.mark.parametrize("k", range(3, 7))
def test_laurent_phenomenon_on_formal_variables(k):
    # initial fan variables are independent symbols x_1..x_{k-1}
    t = fan_triangulation(k)
    q = quiver_from_triangulation(t)
    names = {v: r + 1 for r, v in enumerate(q.labels)}
    s = Seed(q, {v: RationalFunction.from_poly(Polynomial.var(names[v])) for v in q.labels})
    rng = random.Random(f"laurent/{k}")
    for _ in range(10):
        d = rng.choice(sorted(t.diagonals))
        new = flipped_diagonal(t, d)
        s, t = mutate_seed(s, d, new), flip(t, d)
        den = s.variables[new].den
        assert len(den.terms) == 1  # a monomial


def test_quasi_check_trivial_and_negative():
    s = seed_from_triangulation(fan_triangulation(5))
    assert quasi_equivalence_check(s, s).passed
    bad_vars = dict(s.variables)
    v = s.mutable[0]
    bad_vars[v] = bad_vars[v] * RationalFunction.from_poly(Polynomial.var(3))
    rep = quasi_equivalence_check(s, Seed(s.quiver, bad_vars))
    assert not rep.passed
    assert not next(r for r in rep.mutable if r["vertex"] == f"{v[0]}-{v[1]}")["ok"]


def test_rank_mismatch_is_an_error():
    with pytest.raises(ClusterError):
        quasi_equivalence_check(seed_from_triangulation(fan_triangulation(4)),
                                seed_from_triangulation(fan_triangulation(5)))


def test_cut_triangulation_shape():
    t = cut_triangulation(6, 3, 6)
    assert t.diagonals == {(3, 5), (3, 6), (1, 3), (1, 6)}
    assert big_cut_seed(6, 3, 6).frozen == {(1, 7), (3, 6)}
    assert product_cut_seed(6, 3, 6).frozen == {(1, 7), (3, 6)}


@pytest.mark.parametrize("k", range(3, 9))
def test_freezing_quasi_equivalence(k):
    for i in range(1, k + 1):
        for j in range(i + 2, k + 2):
            if (i, j) == (1, k + 1):
                continue
            assert freezing_check(k, i, j).passed, (i, j)
            assert all(r["ok"] for r in freezing_ratio_identities(k, i, j)), (i, j)


def test_displayed_m_equals_i_ratio():
    # published m = i case: Delta_1j Delta_ij^-1 / (1 * Delta_1,i-1), here with the
    # column convention and i - 1 in the last index
    rows = freezing_ratio_identities(6, 3, 6)
    row = next(r for r in rows if r["case"] == "m=i")
    d = lambda p, q: RationalFunction.from_poly(plucker_poly(6, p, q))  # noqa: E731
    assert row["big"] == str(d(1, 6) / (d(3, 6) * d(1, 2)))
    assert {r["case"] for r in rows} == {"m=i", "m=j"}


def test_unscaled_product_seed_fails():
    # negative control: without the Delta_ij rescaling the ratios disagree
    s = product_cut_seed(5, 2, 4)
    plain = Seed(s.quiver, {v: RationalFunction.from_poly(plucker_poly(5, *v)) for v in s.quiver.labels})
    assert not quasi_equivalence_check(big_cut_seed(5, 2, 4), plain).passed
