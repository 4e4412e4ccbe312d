"""The 2 x n matrix model of the open positroid cell and its unit slice.

Matrices are stored as tuples of column pairs.  Entries may be any exact
field-like scalars: Fractions for points, Jets for tangent computations,
Polynomials or RationalFunctions for symbolic work.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .continuant import F
from .exact import Polynomial, parse_rational


class PositroidError(ValueError):
    pass


class NotNormalizedError(PositroidError):
    pass


class SingularError(PositroidError):
    pass


def _det(u, v):
    return u[0] * v[1] - u[1] * v[0]


@dataclass(frozen=True)
class PositroidMatrix:
    cols: tuple

    def __post_init__(self):
        cols = tuple(tuple(c) for c in self.cols)
        if len(cols) < 2:
            raise PositroidError("need at least two columns")
        if any(len(c) != 2 for c in cols):
            raise PositroidError("every column must have two entries")
        object.__setattr__(self, "cols", cols)
        if not self._has_nonzero_minor():
            raise SingularError("matrix does not have full rank")

    def _has_nonzero_minor(self) -> bool:
        cols = self.cols
        for i in range(len(cols)):
            for j in range(i + 1, len(cols)):
                if _det(cols[i], cols[j]):
                    return True
        return False

    @property
    def n(self) -> int:
        return len(self.cols)

    @property
    def k(self) -> int:
        return len(self.cols) - 1

    def col(self, i: int):
        """1-based column access."""
        if not 1 <= i <= self.n:
            raise IndexError(f"column {i} out of range 1..{self.n}")
        return self.cols[i - 1]

    def plucker(self, i: int, j: int):
        if not (1 <= i < j <= self.n):
            raise IndexError(f"need 1 <= i < j <= {self.n}, got ({i}, {j})")
        return _det(self.cols[i - 1], self.cols[j - 1])

    def consecutive_minors(self) -> list:
        return [self.plucker(i, i + 1) for i in range(1, self.n)]

    def is_open(self) -> bool:
        return all(bool(m) for m in self.consecutive_minors()) and bool(self.plucker(1, self.n))

    def is_unit(self) -> bool:
        return all(m == 1 for m in self.consecutive_minors()) and bool(self.plucker(1, self.n))

    def is_standard(self) -> bool:
        """Shape (1 * ... 0; 0 1 ... *): v_1 = (1,0), v_2 = (*,1), v_n = (0,*)."""
        c = self.cols
        return c[0][0] == 1 and c[0][1] == 0 and c[1][1] == 1 and c[-1][0] == 0

    def apply(self, a: Sequence[Sequence]) -> "PositroidMatrix":
        """Left multiplication by a 2x2 matrix."""
        return PositroidMatrix(tuple((a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y)
                                     for x, y in self.cols))

    def scale_columns(self, factors: Sequence) -> "PositroidMatrix":
        return PositroidMatrix(tuple((x * f, y * f) for (x, y), f in zip(self.cols, factors)))

    def map_entries(self, fn) -> "PositroidMatrix":
        return PositroidMatrix(tuple((fn(x), fn(y)) for x, y in self.cols))

    def to_json(self) -> dict:
        return {"n": self.n, "cols": [[str(x), str(y)] for x, y in self.cols]}

    @classmethod
    def from_json(cls, data) -> "PositroidMatrix":
        if isinstance(data, str):
            data = json.loads(data)
        cols = tuple((parse_rational(str(x)), parse_rational(str(y))) for x, y in data["cols"])
        if "n" in data and int(data["n"]) != len(cols):
            raise PositroidError(f"n = {data['n']} but {len(cols)} columns given")
        return cls(cols)

    def __str__(self) -> str:
        return " ".join(f"({x}, {y})" for x, y in self.cols)


@dataclass(frozen=True)
class TorusFactor:
    """Column scalings: column m+1 is multiplied by lambdas[m-1], column 1 is fixed."""

    lambdas: tuple

    def __post_init__(self):
        object.__setattr__(self, "lambdas", tuple(self.lambdas))
        if any(not lam for lam in self.lambdas):
            raise PositroidError("torus factors must be nonzero")


# ------------------------------------------------------------------ z <-> v

def z_to_matrix(full: Sequence) -> PositroidMatrix:
    """Columns v_1 = (1,0), v_2 = (z_1,1), v_{i+1} = -v_{i-1} + z_i v_i."""
    full = list(full)
    one, zero = Fraction(1), Fraction(0)
    prev = (zero, -one)  # v_0, so that v_2 = -v_0 + z_1 v_1
    cur = (one, zero)
    cols = [cur]
    for zi in full:
        nxt = (zi * cur[0] - prev[0], zi * cur[1] - prev[1])
        prev, cur = cur, nxt
        cols.append(cur)
    return PositroidMatrix(tuple(cols))


def matrix_to_z(m: PositroidMatrix) -> tuple:
    """Inverse of z_to_matrix on matrices with v_1 = (1,0) and unit consecutive minors."""
    v1 = m.col(1)
    if not (v1[0] == 1 and v1[1] == 0):
        raise NotNormalizedError(f"v_1 must be (1, 0), got ({v1[0]}, {v1[1]})")
    for i in range(1, m.n):
        d = m.plucker(i, i + 1)
        if d != 1:
            raise NotNormalizedError(f"minor Delta_{{{i},{i + 1}}} = {d}, expected 1")
    prev = (Fraction(0), Fraction(-1))
    out = []
    for i in range(1, m.n):
        cur, nxt = m.col(i), m.col(i + 1)
        zi = _det(prev, nxt)  # det(v_{i-1}, v_{i+1}) = z_i det(v_{i-1}, v_i) = z_i
        if (nxt[0] != zi * cur[0] - prev[0]) or (nxt[1] != zi * cur[1] - prev[1]):
            raise NotNormalizedError(f"column {i + 1} violates the three-term recursion")
        out.append(zi)
        prev = cur
    return tuple(out)


def plucker(m: PositroidMatrix, i: int, j: int):
    return m.plucker(i, j)


def plucker_poly(k: int, i: int, j: int) -> Polynomial:
    """Delta_{ij} = F_{j-i-1}(z_{i+1}, ..., z_{j-1}) on the unit slice."""
    if not (1 <= i < j <= k + 1):
        raise IndexError(f"need 1 <= i < j <= {k + 1}, got ({i}, {j})")
    return F(j - i - 1, i + 1)


def plucker_relation_check(k: int, a: int, b: int, c: int, d: int) -> bool:
    if not (1 <= a < b < c < d <= k + 1):
        raise ValueError(f"need 1 <= a < b < c < d <= {k + 1}")
    P = lambda p, q: plucker_poly(k, p, q)  # noqa: E731
    return (P(a, c) * P(b, d) - P(a, b) * P(c, d) - P(a, d) * P(b, c)).is_zero()


# ------------------------------------------------------------ normalization

def mat_inv2(a):
    d = a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if not d:
        raise SingularError("singular 2x2 matrix")
    return ((a[1][1] / d, -a[0][1] / d), (-a[1][0] / d, a[0][0] / d))


def mat_mul2(a, b):
    return tuple(tuple(a[r][0] * b[0][c] + a[r][1] * b[1][c] for c in range(2)) for r in range(2))


def normalize_gl2(m: PositroidMatrix) -> tuple:
    """The unique A with A.M in standard form; det A = 1/Delta_12."""
    d12 = m.plucker(1, 2)
    d1n = m.plucker(1, m.n)
    if not d12:
        raise SingularError("Delta_12 vanishes")
    if not d1n:
        raise SingularError(f"Delta_1{m.n} vanishes")
    v1, vn = m.col(1), m.col(m.n)
    s = mat_inv2(((v1[0], vn[0]), (v1[1], vn[1])))
    zero = d12 - d12
    t = ((zero + 1, zero), (zero, d1n / d12))
    a = mat_mul2(t, s)
    return a, m.apply(a)


def rescale_unit(v: PositroidMatrix) -> tuple:
    """Rescale columns 3..n of a standard-form matrix to make all consecutive minors 1.

    Returns (unit matrix, TorusFactor t) with merge_torus(unit, t) == v.
    """
    minors = v.consecutive_minors()  # minors[l-1] = Delta_{l,l+1}
    for l, d in enumerate(minors, start=1):
        if not d:
            raise SingularError(f"Delta_{{{l},{l + 1}}} vanishes")
    if minors[0] != 1:
        raise NotNormalizedError("Delta_12 must be 1 in standard form")
    scales = []
    for mcol in range(1, v.n + 1):
        s = Fraction(1)
        for l in range(2, mcol):
            e = 1 if (mcol - l) % 2 == 0 else -1
            s = s * minors[l - 1] if e == 1 else s / minors[l - 1]
        scales.append(s)
    unit = v.scale_columns(scales)
    return unit, TorusFactor(tuple(1 / s for s in scales[1:]))


def split_torus(m: PositroidMatrix) -> tuple:
    """Factor an open matrix as (unit matrix, torus factor), column 1 unscaled."""
    if not m.is_open():
        raise PositroidError("matrix is not in the open cell")
    lambdas = []
    prev = Fraction(1)
    for i in range(1, m.n):
        lam = m.plucker(i, i + 1) / prev
        lambdas.append(lam)
        prev = lam
    scales = [Fraction(1)] + [1 / lam for lam in lambdas]
    return m.scale_columns(scales), TorusFactor(tuple(lambdas))


def merge_torus(unit: PositroidMatrix, t: TorusFactor) -> PositroidMatrix:
    if len(t.lambdas) != unit.n - 1:
        raise PositroidError("torus factor length must be n - 1")
    return unit.scale_columns((Fraction(1),) + t.lambdas)


def standard_unit_form(m: PositroidMatrix) -> PositroidMatrix:
    """Representative of a unit matrix in standard form (SL2 normalization)."""
    return normalize_gl2(m)[1]
