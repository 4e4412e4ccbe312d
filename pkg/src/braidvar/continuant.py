"""Continuants, two-strand braid matrices and the hypersurface F_k = 0."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .exact import ONE, ZERO, Polynomial, parse_rational

# stands for the empty window one step before F_0, i.e. F_{-1} = 0
MINUS_ONE = None


class NotOnChartError(ValueError):
    pass


class ConsistencyError(AssertionError):
    pass


@lru_cache(maxsize=None)
def _continuant(window: tuple) -> Polynomial:
    prev, cur = ZERO, ONE
    for v in window:
        prev, cur = cur, Polynomial.var(v) * cur - prev
    return cur


def continuant(variables: Sequence[int] | None) -> Polynomial:
    """F_m on the listed variable indices; ``None`` is the F_{-1} = 0 sentinel."""
    if variables is None:
        return ZERO
    return _continuant(tuple(variables))


def F(m: int, start: int = 1) -> Polynomial:
    """F_m(z_start, ..., z_{start+m-1}); m = -1 gives 0."""
    if m < -1:
        raise ValueError(f"continuant length must be >= -1, got {m}")
    if m == -1:
        return ZERO
    return _continuant(tuple(range(start, start + m)))


def continuant_values(values: Sequence) -> object:
    """Numeric continuant of a sequence of ring elements."""
    prev, cur = 0, 1
    for x in values:
        prev, cur = cur, x * cur - prev
    return cur


def braid_generator(i: int) -> list:
    """B(z_i) = [[z_i, -1], [1, 0]]."""
    return [[Polynomial.var(i), -ONE], [ONE, ZERO]]


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    return [[a[r][0] * b[0][c] + a[r][1] * b[1][c] for c in range(2)] for r in range(2)]


def braid_product(k: int) -> list:
    """The literal product B(z_1)...B(z_k)."""
    m = [[ONE, ZERO], [ZERO, ONE]]
    for i in range(1, k + 1):
        m = mat_mul(m, braid_generator(i))
    return m


def braid_matrix(k: int) -> list:
    """Closed form of B(z_1)...B(z_k) in terms of continuants."""
    if k < 1:
        raise ValueError("braid word needs k >= 1")
    return [[F(k, 1), -F(k - 1, 1)],
            [F(k - 1, 2), -F(k - 2, 2)]]


def det2(m: Sequence[Sequence]):
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def det_identity(i: int) -> bool:
    """F_i(z1..zi) F_i(z2..z_{i+1}) - F_{i+1}(z1..z_{i+1}) F_{i-1}(z2..zi) == 1."""
    if i < 0:
        raise ValueError("i must be >= 0")
    lhs = F(i, 1) * F(i, 2) - F(i + 1, 1) * F(i - 1, 2)
    return lhs == ONE


def solve_z1(coords: Sequence) -> Fraction:
    """Recover z_1 from chart coordinates (z_2, ..., z_k).

    Works over any field-like scalars (Fractions, Jets, RationalFunctions).
    """
    coords = list(coords)
    if not coords:
        return Fraction(0)  # k = 1: z_1 = F_{-1}/F_0 = 0
    den = continuant_values(coords)
    if not den:
        raise NotOnChartError("chart condition F_{k-1}(z_2..z_k) != 0 fails")
    num = continuant_values(coords[1:])
    return num / den


def full_point(coords: Sequence) -> list:
    return [solve_z1(coords)] + list(coords)


def on_variety(full: Sequence) -> bool:
    full = [Fraction(x) for x in full]
    if continuant_values(full) != 0:
        return False
    if continuant_values(full[:-1]) == 0:
        raise ConsistencyError("F_k = 0 but F_{k-1}(z_1..z_{k-1}) = 0")
    return True


@dataclass(frozen=True)
class VarietyPoint:
    """A point of X(sigma^k) in the chart coordinates (z_2, ..., z_k)."""

    k: int
    coords: tuple

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.coords) != self.k - 1:
            raise ValueError(f"expected {self.k - 1} coordinates, got {len(self.coords)}")
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if continuant_values(self.coords) == 0:
            raise NotOnChartError("chart condition F_{k-1}(z_2..z_k) != 0 fails")

    @property
    def full(self) -> tuple:
        return tuple(full_point(self.coords))

    @classmethod
    def parse(cls, k: int, text: str) -> "VarietyPoint":
        return cls(k, tuple(parse_rational(t) for t in text.split(",")))
