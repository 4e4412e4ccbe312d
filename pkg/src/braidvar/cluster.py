"""Triangulations of the (k+1)-gon, quivers, seeds and mutation.

A vertex of a quiver is labelled by the edge (i, j) of the polygon it sits on.
Arrows follow one cyclic orientation per triangle: for a triangle a < b < c the
arrows are (a,c) -> (a,b) -> (b,c) -> (a,c).  On the fan this gives the path
w -> w_{k-2} -> ... -> w_1, which is the orientation of the fan formula for
omega.  Exchange ratios use the column convention y_v = prod_u A_u^{eps(u,v)}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Mapping, Sequence

from .exact import (ONE, Polynomial, RationalFunction, divexact, poly_gcd,
                    solve_linear)
from .positroid import plucker_poly

Edge = tuple


class ClusterError(ValueError):
    pass


def _edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


def edge_label(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def parse_edge(text: str) -> Edge:
    try:
        a, b = (int(t) for t in text.strip().split("-"))
    except ValueError:
        raise ClusterError(f"bad diagonal {text!r}, expected like 1-3") from None
    return _edge(a, b)


def crosses(d1: Edge, d2: Edge) -> bool:
    (a, b), (c, d) = d1, d2
    return a < c < b < d or c < a < d < b


# ------------------------------------------------------------ triangulations

@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: frozenset

    def __post_init__(self):
        diags = frozenset(_edge(*d) for d in self.diagonals)
        object.__setattr__(self, "diagonals", diags)
        n = self.n
        if n < 3:
            raise ClusterError("a polygon needs at least 3 vertices")
        for i, j in diags:
            if not (1 <= i and j <= n and j >= i + 2) or (i, j) == (1, n):
                raise ClusterError(f"({i},{j}) is not a diagonal of the {n}-gon")
        if len(diags) != n - 3:
            raise ClusterError(f"a triangulation of the {n}-gon has {n - 3} diagonals, got {len(diags)}")
        for d1, d2 in combinations(sorted(diags), 2):
            if crosses(d1, d2):
                raise ClusterError(f"diagonals {d1} and {d2} cross")

    @property
    def k(self) -> int:
        return self.n - 1

    def edges(self) -> frozenset:
        boundary = {(i, i + 1) for i in range(1, self.n)} | {(1, self.n)}
        return frozenset(boundary) | self.diagonals

    def triangles(self) -> list:
        es = self.edges()
        adj: dict = {}
        for a, b in es:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        out = []
        for a, b in sorted(es):
            for c in adj[b]:
                if c > b and c in adj[a]:
                    out.append((a, b, c))
        return out

    def sorted_diagonals(self) -> list:
        return sorted(self.diagonals)


def fan_triangulation(k: int) -> Triangulation:
    if k < 2:
        raise ClusterError("fan triangulation needs k >= 2")
    return Triangulation(k + 1, frozenset((1, i) for i in range(3, k + 1)))


@lru_cache(maxsize=None)
def _triangulate(vertices: tuple) -> tuple:
    if len(vertices) < 3:
        return (frozenset(),)
    first, last = vertices[0], vertices[-1]
    out = []
    for idx in range(1, len(vertices) - 1):
        apex = vertices[idx]
        extra = set()
        if idx > 1:
            extra.add(_edge(first, apex))
        if idx < len(vertices) - 2:
            extra.add(_edge(apex, last))
        for left in _triangulate(vertices[: idx + 1]):
            for right in _triangulate(vertices[idx:]):
                out.append(frozenset(extra) | left | right)
    return tuple(out)


def enumerate_triangulations(n: int) -> list:
    return [Triangulation(n, d) for d in _triangulate(tuple(range(1, n + 1)))]


def flip(t: Triangulation, d: Edge) -> Triangulation:
    d = _edge(*d)
    if d not in t.diagonals:
        raise ClusterError(f"{d} is not a diagonal of the triangulation")
    apexes = [c for tri in t.triangles() if d[0] in tri and d[1] in tri
              for c in tri if c not in d]
    if len(apexes) != 2:
        raise ClusterError(f"diagonal {d} does not border two triangles")
    new = _edge(*apexes)
    return Triangulation(t.n, (t.diagonals - {d}) | {new})


def flipped_diagonal(t: Triangulation, d: Edge) -> Edge:
    (new,) = flip(t, d).diagonals - t.diagonals
    return new


# -------------------------------------------------------------------- quivers

@dataclass(frozen=True)
class Quiver:
    labels: tuple
    eps: tuple
    frozen: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        labels = tuple(self.labels)
        eps = tuple(tuple(int(x) for x in row) for row in self.eps)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "eps", eps)
        object.__setattr__(self, "frozen", frozenset(self.frozen))
        n = len(labels)
        if len(set(labels)) != n:
            raise ClusterError("duplicate quiver labels")
        if len(eps) != n or any(len(r) != n for r in eps):
            raise ClusterError("exchange matrix has the wrong shape")
        for a in range(n):
            for b in range(n):
                if eps[a][b] != -eps[b][a]:
                    raise ClusterError("exchange matrix is not skew-symmetric")
        if not self.frozen <= set(labels):
            raise ClusterError("frozen vertices must be labels")

    def index(self, v) -> int:
        try:
            return self.labels.index(v)
        except ValueError:
            raise ClusterError(f"unknown vertex {v}") from None

    def entry(self, u, v) -> int:
        return self.eps[self.index(u)][self.index(v)]

    @property
    def mutable(self) -> tuple:
        return tuple(v for v in self.labels if v not in self.frozen)

    def arrows(self) -> list:
        """(source, target, multiplicity) for every eps(u,v) > 0."""
        out = []
        for a, u in enumerate(self.labels):
            for b, v in enumerate(self.labels):
                if self.eps[a][b] > 0:
                    out.append((u, v, self.eps[a][b]))
        return out

    def as_dict(self) -> dict:
        return {(u, v): self.eps[a][b] for a, u in enumerate(self.labels)
                for b, v in enumerate(self.labels) if self.eps[a][b]}

    def relabel(self, mapping: Mapping) -> "Quiver":
        return Quiver(tuple(mapping.get(v, v) for v in self.labels), self.eps,
                      frozenset(mapping.get(v, v) for v in self.frozen))

    def to_json(self) -> dict:
        lab = lambda v: edge_label(v) if isinstance(v, tuple) else str(v)  # noqa: E731
        return {"vertices": [{"label": lab(v), "frozen": v in self.frozen} for v in self.labels],
                "arrows": [{"from": lab(u), "to": lab(v), "mult": m} for u, v, m in self.arrows()]}


def quiver_from_triangulation(t: Triangulation, specialize: bool = True) -> Quiver:
    """Quiver of a triangulation.

    With ``specialize`` the boundary edges other than (1,n) are dropped (their
    Plucker coordinates equal 1 on the unit slice); otherwise all boundary edges
    are kept as frozen vertices.
    """
    frozen_edges = [(1, t.n)] if specialize else sorted(t.edges() - t.diagonals)
    labels = tuple(t.sorted_diagonals()) + tuple(frozen_edges)
    pos = {v: r for r, v in enumerate(labels)}
    eps = [[0] * len(labels) for _ in labels]
    for a, b, c in t.triangles():
        for src, dst in (((a, c), (a, b)), ((a, b), (b, c)), ((b, c), (a, c))):
            if src in pos and dst in pos:
                eps[pos[src]][pos[dst]] += 1
                eps[pos[dst]][pos[src]] -= 1
    return Quiver(labels, eps, frozenset(frozen_edges))


def mutate_quiver(q: Quiver, v, new_label=None) -> Quiver:
    if v in q.frozen:
        raise ClusterError(f"cannot mutate at frozen vertex {v}")
    kk = q.index(v)
    e = q.eps
    n = len(q.labels)
    out = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            if a == kk or b == kk:
                out[a][b] = -e[a][b]
            else:
                out[a][b] = e[a][b] + (abs(e[a][kk]) * e[kk][b] + e[a][kk] * abs(e[kk][b])) // 2
    labels = list(q.labels)
    if new_label is not None:
        labels[kk] = new_label
    return Quiver(tuple(labels), out, q.frozen)


# ---------------------------------------------------------------------- seeds

@dataclass(frozen=True)
class Seed:
    quiver: Quiver
    variables: Mapping

    def __post_init__(self):
        object.__setattr__(self, "variables", dict(self.variables))
        if set(self.variables) != set(self.quiver.labels):
            raise ClusterError("seed variables must be given for every vertex")

    def var(self, v) -> RationalFunction:
        return self.variables[v]

    @property
    def frozen(self) -> frozenset:
        return self.quiver.frozen

    @property
    def mutable(self) -> tuple:
        return self.quiver.mutable


def _rf(x) -> RationalFunction:
    return x if isinstance(x, RationalFunction) else RationalFunction.from_poly(x)


def seed_from_triangulation(t: Triangulation, specialize: bool = True,
                            variable: Callable[[int, int], object] | None = None) -> Seed:
    q = quiver_from_triangulation(t, specialize)
    if variable is None:
        variable = lambda i, j: plucker_poly(t.k, i, j)  # noqa: E731
    return Seed(q, {v: _rf(variable(*v)) for v in q.labels})


def _monomial_product(seed: Seed, v, sign: int) -> RationalFunction:
    q = seed.quiver
    kk = q.index(v)
    out = RationalFunction.from_poly(ONE)
    for b, u in enumerate(q.labels):
        e = q.eps[kk][b] * sign
        if e > 0:
            out = out * seed.variables[u] ** e
    return out


def mutate_seed(seed: Seed, v, new_label=None) -> Seed:
    q = seed.quiver
    if v in q.frozen:
        raise ClusterError(f"cannot mutate at frozen vertex {v}")
    binomial = _monomial_product(seed, v, 1) + _monomial_product(seed, v, -1)
    if binomial.is_zero():
        raise ClusterError("exchange binomial vanishes")
    new_var = binomial / seed.variables[v]
    newq = mutate_quiver(q, v, new_label)
    variables = dict(seed.variables)
    del variables[v]
    variables[new_label if new_label is not None else v] = new_var
    return Seed(newq, variables)


def exchange_ratio(seed: Seed, v) -> RationalFunction:
    """y_v = prod_u A_u^{eps(u,v)}."""
    q = seed.quiver
    if v in q.frozen:
        raise ClusterError(f"{v} is frozen")
    kk = q.index(v)
    out = RationalFunction.from_poly(ONE)
    for a, u in enumerate(q.labels):
        e = q.eps[a][kk]
        if e:
            out = out * seed.variables[u] ** e
    return out


# -------------------------------------------------------- quasi-equivalence

def _insert_atom(atoms: list, q: Polynomial) -> None:
    if q.is_constant():
        return
    q = q * (1 / q.leading_coefficient())
    for idx, a in enumerate(atoms):
        g = poly_gcd(a, q)
        if g.is_constant():
            continue
        if g == a and g == q:
            return
        atoms.pop(idx)
        for piece in (divexact(a, g), g, divexact(q, g)):
            _insert_atom(atoms, piece)
        return
    atoms.append(q)


def _exponents(p: Polynomial, atoms: Sequence[Polynomial]) -> tuple:
    vec = []
    for a in atoms:
        e = 0
        while True:
            try:
                nxt = divexact(p, a)
            except ValueError:
                break
            p, e = nxt, e + 1
        vec.append(e)
    if not p.is_constant():
        raise ClusterError("polynomial not covered by the coprime base")
    return tuple(vec), p.constant_term()


class MultiplicativeBase:
    """Coprime factor base for a family of rational functions."""

    def __init__(self, functions: Iterable[RationalFunction]):
        self.atoms: list = []
        for f in functions:
            _insert_atom(self.atoms, f.num)
            _insert_atom(self.atoms, f.den)

    def decompose(self, f: RationalFunction) -> tuple:
        if f.is_zero():
            raise ClusterError("zero has no multiplicative decomposition")
        en, cn = _exponents(f.num, self.atoms)
        ed, cd = _exponents(f.den, self.atoms)
        return tuple(a - b for a, b in zip(en, ed)), cn / cd


def laurent_exponents(target: RationalFunction, basis: Sequence[RationalFunction]) -> list | None:
    """Integer e with target = prod basis_i^{e_i} exactly, or None."""
    mb = MultiplicativeBase(list(basis) + [target])
    vecs, consts = zip(*(mb.decompose(b) for b in basis)) if basis else ((), ())
    tv, tc = mb.decompose(target)
    if not basis:
        return [] if (not any(tv) and tc == 1) else None
    x = solve_linear([list(v) for v in vecs], list(tv))
    if x is None or any(xi.denominator != 1 for xi in x):
        return None
    c = Fraction(1)
    for ci, xi in zip(consts, x):
        c *= ci ** int(xi)
    if c != tc:
        return None
    return [int(xi) for xi in x]


@dataclass
class QuasiReport:
    passed: bool
    frozen: list
    mutable: list
    ratios: list

    def to_json(self) -> dict:
        return {"passed": self.passed, "frozen": self.frozen,
                "mutable": self.mutable, "exchange_ratios": self.ratios}


def quasi_equivalence_check(s1: Seed, s2: Seed, correspondence: Mapping | None = None) -> QuasiReport:
    """Check the three quasi-equivalence conditions in a single chart.

    ``correspondence`` maps mutable vertices of s1 to those of s2 (default:
    identical labels).
    """
    m1, m2 = s1.mutable, s2.mutable
    if len(m1) != len(m2):
        raise ClusterError(f"mutable ranks differ: {len(m1)} vs {len(m2)}")
    corr = dict(correspondence) if correspondence is not None else {v: v for v in m1}
    if set(corr) != set(m1) or set(corr.values()) != set(m2):
        raise ClusterError("correspondence must be a bijection of mutable vertices")
    f1 = [s1.variables[v] for v in sorted(s1.frozen)]
    f2 = [s2.variables[v] for v in sorted(s2.frozen)]
    frozen_rows = []
    for name, src, dst in (("s2 in s1", s2, f1), ("s1 in s2", s1, f2)):
        for v in sorted(src.frozen):
            e = laurent_exponents(src.variables[v], dst)
            frozen_rows.append({"vertex": edge_label(v), "direction": name,
                                "exponents": e, "ok": e is not None})
    mutable_rows = []
    ratio_rows = []
    for v in m1:
        w = corr[v]
        e = laurent_exponents(s1.variables[v] / s2.variables[w], f1)
        mutable_rows.append({"vertex": edge_label(v), "exponents": e, "ok": e is not None})
        y1, y2 = exchange_ratio(s1, v), exchange_ratio(s2, w)
        ratio_rows.append({"vertex": edge_label(v), "y1": str(y1), "y2": str(y2), "ok": y1 == y2})
    passed = all(r["ok"] for r in frozen_rows + mutable_rows + ratio_rows)
    return QuasiReport(passed, frozen_rows, mutable_rows, ratio_rows)


# ------------------------------------------------- freezing along a diagonal
#
# Big chart on the (k+1)-gon: fan from i inside the piece i..j, the diagonal
# (i, j) itself, and the fan from 1 in the piece 1..i, j..k+1.  Freezing (i, j)
# there should give a seed quasi-equivalent to the product of the two factor
# fans, whose variables are the Plucker coordinates rescaled by the cut.

def _cut_spec(k: int, i: int, j: int):
    from .cuts import CutSpec
    return CutSpec(k, i, j)


def cut_triangulation(k: int, i: int, j: int) -> Triangulation:
    spec = _cut_spec(k, i, j)
    diags = {(i, r) for r in range(i + 2, j)} | {(i, j)}
    right = spec.right_positions()
    diags |= {(1, right[r - 1]) for r in range(3, spec.b + 1)}
    return Triangulation(k + 1, frozenset(diags))


def big_cut_seed(k: int, i: int, j: int) -> Seed:
    s = seed_from_triangulation(cut_triangulation(k, i, j))
    q = s.quiver
    return Seed(Quiver(q.labels, q.eps, q.frozen | {(i, j)}), s.variables)


def _disjoint_union(q1: Quiver, q2: Quiver) -> Quiver:
    n1, n2 = len(q1.labels), len(q2.labels)
    eps = [list(r) + [0] * n2 for r in q1.eps] + [[0] * n1 + list(r) for r in q2.eps]
    return Quiver(q1.labels + q2.labels, eps, q1.frozen | q2.frozen)


def cut_exponent_map(k: int, i: int, j: int) -> dict:
    """Big vertex m -> power of Delta_ij on the right column at m."""
    from .cuts import right_exponents
    spec = _cut_spec(k, i, j)
    return dict(zip(spec.right_positions(), right_exponents(spec)))


def product_cut_seed(k: int, i: int, j: int) -> Seed:
    spec = _cut_spec(k, i, j)
    left_pos = spec.left_positions()
    right_pos = spec.right_positions()
    ql = quiver_from_triangulation(fan_triangulation(spec.a))
    qr = quiver_from_triangulation(fan_triangulation(spec.b))
    ql = ql.relabel({v: (left_pos[v[0] - 1], left_pos[v[1] - 1]) for v in ql.labels})
    qr = qr.relabel({v: (right_pos[v[0] - 1], right_pos[v[1] - 1]) for v in qr.labels})
    delta = _rf(plucker_poly(k, i, j))
    e = cut_exponent_map(k, i, j)
    variables = {v: _rf(plucker_poly(k, *v)) for v in ql.labels}
    for v in qr.labels:
        variables[v] = _rf(plucker_poly(k, *v)) * delta ** (e[v[0]] + e[v[1]])
    return Seed(_disjoint_union(ql, qr), variables)


def freezing_check(k: int, i: int, j: int) -> QuasiReport:
    return quasi_equivalence_check(big_cut_seed(k, i, j), product_cut_seed(k, i, j))


def freezing_ratio_identities(k: int, i: int, j: int) -> list:
    """The three displayed exchange-ratio identities along the fan from 1.

    For each mutable (1, m) with m = i, m = j or m > j, the closed forms in the
    big chart and in the product chart are built directly from Plucker
    polynomials and compared with the computed exchange ratios of both seeds.
    """
    big, prod = big_cut_seed(k, i, j), product_cut_seed(k, i, j)
    P = lambda p, q: _rf(plucker_poly(k, p, q))  # noqa: E731
    D = P(i, j)
    e = cut_exponent_map(k, i, j)
    rows = []
    if i >= 3:
        lhs = P(1, j) / (D * P(1, i - 1))
        rhs = (P(1, j) * D ** -1) / (_rf(ONE) * P(1, i - 1))
        rows.append(("m=i", i, lhs, rhs))
    if i >= 2 and j <= k:
        lhs = D * P(1, j + 1) / P(1, i)
        rhs = _rf(ONE) * (P(1, j + 1) * D) / P(1, i)
        rows.append(("m=j", j, lhs, rhs))
    for m in range(j + 1, k + 1):
        lhs = P(1, m + 1) / P(1, m - 1)
        rhs = (P(1, m + 1) * D ** e[m + 1]) / (P(1, m - 1) * D ** e.get(m - 1, 0))
        rows.append(("m>j", m, lhs, rhs))
    out = []
    for case, m, lhs, rhs in rows:
        yb, yp = exchange_ratio(big, (1, m)), exchange_ratio(prod, (1, m))
        out.append({"case": case, "vertex": edge_label((1, m)), "big": str(yb), "product": str(yp),
                    "ok": yb == lhs and yp == rhs and lhs == rhs})
    return out
