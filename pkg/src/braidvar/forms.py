"""Differential forms in dz_2..dz_k, the forms alpha and omega, and the
exterior algebra model of the cohomology ring on the fan torus chart."""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Mapping, NamedTuple, Sequence

from .exact import ONE, Polynomial, RationalFunction
from .positroid import plucker_poly


def _sort_sign(idx: Sequence) -> tuple:
    """Sort an index tuple, returning (sorted tuple, sign) or (None, 0) on repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return None, 0
    sign = 1
    for a in range(len(idx)):
        for b in range(len(idx) - 1 - a):
            if idx[b] > idx[b + 1]:
                idx[b], idx[b + 1] = idx[b + 1], idx[b]
                sign = -sign
    return tuple(idx), sign


def _rf(x) -> RationalFunction:
    if isinstance(x, RationalFunction):
        return x
    return RationalFunction.from_poly(x)


class DifferentialForm:
    """sum_I c_I dz_I with strictly increasing index tuples I."""

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping | None = None):
        self.degree = degree
        clean: dict = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != degree:
                raise ValueError(f"index {idx} does not match degree {degree}")
            key, sign = _sort_sign(idx)
            if key is None:
                continue
            c = _rf(c)
            cur = clean.get(key)
            val = c if sign > 0 else -c
            clean[key] = val if cur is None else cur + val
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}

    @classmethod
    def zero(cls, degree: int) -> "DifferentialForm":
        return cls(degree)

    @classmethod
    def function(cls, f) -> "DifferentialForm":
        return cls(0, {(): _rf(f)})

    @classmethod
    def dz(cls, i: int) -> "DifferentialForm":
        return cls(1, {(i,): ONE})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DifferentialForm):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return self.degree == other.degree and self.terms == other.terms

    def coefficient(self, *idx) -> RationalFunction:
        key, sign = _sort_sign(idx)
        if key is None:
            return _rf(0)
        c = self.terms.get(key, _rf(0))
        return c if sign > 0 else -c

    def __add__(self, other: "DifferentialForm") -> "DifferentialForm":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms[k] + v if k in terms else v
        return DifferentialForm(self.degree, terms)

    def __neg__(self) -> "DifferentialForm":
        return DifferentialForm(self.degree, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "DifferentialForm") -> "DifferentialForm":
        return self + (-other)

    def scale(self, f) -> "DifferentialForm":
        f = _rf(f)
        return DifferentialForm(self.degree, {k: v * f for k, v in self.terms.items()})

    def __mul__(self, f):
        if isinstance(f, DifferentialForm):
            return wedge(self, f)
        return self.scale(f)

    __rmul__ = scale

    def evaluate(self, point) -> dict:
        """Coefficients at a point (mapping var -> value or sequence z_1, z_2, ...)."""
        return {k: v.evaluate(point) for k, v in self.terms.items()}

    def pair(self, point, vectors: Sequence[Mapping[int, object]]) -> object:
        """Value on tangent vectors given as {var: component} mappings."""
        if len(vectors) != self.degree:
            raise ValueError("need one vector per degree")
        total = Fraction(0)
        for idx, c in self.terms.items():
            val = c.evaluate(point)
            total = total + val * _det([[vec.get(i, 0) for i in idx] for vec in vectors])
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items()):
            basis = "^".join(f"dz{i}" for i in idx) or "1"
            parts.append(f"({c})*{basis}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DifferentialForm({self.degree}, {str(self)!r})"

    def to_json(self) -> dict:
        return {"degree": self.degree,
                "terms": [{"dz": list(idx), "coef": c.to_json()} for idx, c in sorted(self.terms.items())]}


def _det(m: list):
    n = len(m)
    if n == 0:
        return 1
    if n == 1:
        return m[0][0]
    if n == 2:
        return m[0][0] * m[1][1] - m[0][1] * m[1][0]
    total = 0
    for c in range(n):
        if m[0][c]:
            minor = [row[:c] + row[c + 1:] for row in m[1:]]
            term = m[0][c] * _det(minor)
            total = total + term if c % 2 == 0 else total - term
    return total


def wedge(a: DifferentialForm, b: DifferentialForm) -> DifferentialForm:
    terms: dict = {}
    for i1, c1 in a.terms.items():
        for i2, c2 in b.terms.items():
            key, sign = _sort_sign(i1 + i2)
            if key is None:
                continue
            val = c1 * c2
            if sign < 0:
                val = -val
            terms[key] = terms[key] + val if key in terms else val
    return DifferentialForm(a.degree + b.degree, terms)


def differential(f, variables: Sequence[int] | None = None) -> DifferentialForm:
    f = _rf(f)
    vs = sorted(f.variables()) if variables is None else variables
    return DifferentialForm(1, {(i,): f.partial(i) for i in vs})


def exterior_derivative(a: DifferentialForm) -> DifferentialForm:
    terms: dict = {}
    for idx, c in a.terms.items():
        for i in sorted(c.variables()):
            key, sign = _sort_sign((i,) + idx)
            if key is None:
                continue
            val = c.partial(i)
            if sign < 0:
                val = -val
            terms[key] = terms[key] + val if key in terms else val
    return DifferentialForm(a.degree + 1, terms)


def dlog(f) -> DifferentialForm:
    f = _rf(f)
    inv = f.inverse()
    return DifferentialForm(1, {(i,): f.partial(i) * inv for i in sorted(f.variables())})


# ------------------------------------------------------- alpha and omega

def _delta(k: int, i: int, j: int) -> Polynomial:
    return plucker_poly(k, i, j)


def alpha_form(k: int) -> DifferentialForm:
    """(1/Delta_{1,k+1}) sum_i Delta_{1i} Delta_{i,k+1} dz_i."""
    if k < 2:
        raise ValueError("alpha needs k >= 2")
    w = _delta(k, 1, k + 1)
    return DifferentialForm(1, {(i,): RationalFunction(_delta(k, 1, i) * _delta(k, i, k + 1), w)
                                for i in range(2, k + 1)})


def omega_form(k: int) -> DifferentialForm:
    """(1/Delta_{1,k+1}) sum_{i<j} Delta_{1i} Delta_{ij} Delta_{j,k+1} dz_j ^ dz_i.

    The orientation dz_j ^ dz_i (j > i) is the one that agrees with the fan
    chart expression and the worked examples.
    """
    if k < 2:
        raise ValueError("omega needs k >= 2")
    w = _delta(k, 1, k + 1)
    terms = {}
    for i in range(2, k + 1):
        for j in range(i + 1, k + 1):
            num = _delta(k, 1, i) * _delta(k, i, j) * _delta(k, j, k + 1)
            terms[(j, i)] = RationalFunction(num, w)
    return DifferentialForm(2, terms)


def fan_variables(k: int) -> list:
    """[w_1, ..., w_{k-2}, w] with w_i = Delta_{1,i+2} and w = Delta_{1,k+1}."""
    return [_delta(k, 1, i + 2) for i in range(1, k)]


def omega_chart(k: int) -> DifferentialForm:
    """dlog w ^ dlog w_{k-2} + sum_{i=1}^{k-3} dlog w_{i+1} ^ dlog w_i."""
    if k < 2:
        raise ValueError("omega needs k >= 2")
    if k == 2:
        return DifferentialForm.zero(2)
    ws = fan_variables(k)
    logs = [dlog(w) for w in ws]
    total = DifferentialForm.zero(2)
    for i in range(len(ws) - 1):
        total = total + wedge(logs[i + 1], logs[i])
    return total


def omega_from_seed(seed) -> DifferentialForm:
    """sum over arrows u -> v of dlog A_u ^ dlog A_v."""
    total = DifferentialForm.zero(2)
    logs = {v: dlog(seed.variables[v]) for v in seed.quiver.labels}
    for u, v, m in seed.quiver.arrows():
        total = total + wedge(logs[u], logs[v]).scale(m)
    return total


def delta_derivative_check(k: int) -> bool:
    """d Delta_{1n} / dz_i = Delta_{1i} Delta_{in} for 2 <= i <= k, 2 <= n <= k+1.

    When i >= n the window of Delta_{1n} misses z_i and both sides are 0
    (Delta_{in} is taken to be 0 for i >= n).
    """
    for n in range(2, k + 2):
        d1n = _delta(k, 1, n)
        for i in range(2, k + 1):
            lhs = d1n.partial(i)
            rhs = _delta(k, 1, i) * _delta(k, i, n) if i < n else Polynomial.const(0)
            if lhs != rhs:
                return False
    return True


def fractions_check(k: int, i: int) -> bool:
    """sum_{m=i}^{k} 1/(Delta_{1m} Delta_{1,m+1}) = Delta_{i,k+1} / (Delta_{1i} Delta_{1,k+1})."""
    if not 2 <= i <= k:
        raise ValueError("need 2 <= i <= k")
    lhs = RationalFunction(Polynomial.const(0))
    for m in range(i, k + 1):
        lhs = lhs + RationalFunction(ONE, _delta(k, 1, m) * _delta(k, 1, m + 1))
    rhs = RationalFunction(_delta(k, i, k + 1), _delta(k, 1, i) * _delta(k, 1, k + 1))
    return lhs == rhs


# ------------------------------------------------------- torus exterior algebra

class TorusWord:
    """Element of the exterior algebra over Q on symbols eta_1, eta_2, ..."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean: dict = {}
        for idx, c in (terms or {}).items():
            key, sign = _sort_sign(idx)
            if key is None:
                continue
            clean[key] = clean.get(key, Fraction(0)) + sign * Fraction(c)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def one(cls) -> "TorusWord":
        return cls({(): 1})

    @classmethod
    def eta(cls, i: int) -> "TorusWord":
        return cls({(i,): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set:
        return {len(k) for k in self.terms}

    @property
    def degree(self) -> int:
        ds = self.degrees()
        if len(ds) != 1:
            raise ValueError(f"word is not homogeneous: degrees {sorted(ds)}")
        return ds.pop()

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusWord):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "TorusWord") -> "TorusWord":
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return TorusWord(terms)

    def __neg__(self) -> "TorusWord":
        return TorusWord({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "TorusWord") -> "TorusWord":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TorusWord):
            terms: dict = {}
            for i1, c1 in self.terms.items():
                for i2, c2 in other.terms.items():
                    key, sign = _sort_sign(i1 + i2)
                    if key is None:
                        continue
                    terms[key] = terms.get(key, 0) + sign * c1 * c2
            return TorusWord(terms)
        return TorusWord({k: v * Fraction(other) for k, v in self.terms.items()})

    def __rmul__(self, c):
        return TorusWord({k: v * Fraction(c) for k, v in self.terms.items()})

    def __pow__(self, n: int) -> "TorusWord":
        out = TorusWord.one()
        for _ in range(n):
            out = out * self
        return out

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in sorted(self.terms.items()):
            w = "".join(f"e{i}" for i in idx) or "1"
            parts.append(f"{c}*{w}" if c != 1 else w)
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"TorusWord({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"eta": list(k), "coef": str(v)} for k, v in sorted(self.terms.items())]}


def torus_alpha(k: int, offset: int = 0) -> TorusWord:
    """alpha = eta_{k-1} (symbols shifted by offset)."""
    return TorusWord.eta(offset + k - 1)


def torus_omega(k: int, offset: int = 0) -> TorusWord:
    """omega = eta_{k-1} eta_{k-2} + sum_{i=1}^{k-3} eta_{i+1} eta_i."""
    if k <= 2:
        return TorusWord()
    out = TorusWord()
    for i in range(1, k - 1):
        out = out + TorusWord({(offset + i + 1, offset + i): 1})
    return out


class CohomologyClass(NamedTuple):
    degree: int
    word: TorusWord
    alpha: int
    omega: int

    @property
    def label(self) -> str:
        parts = []
        if self.alpha:
            parts.append("alpha")
        if self.omega == 1:
            parts.append("omega")
        elif self.omega > 1:
            parts.append(f"omega^{self.omega}")
        return "*".join(parts) or "1"


def basis_exponents(k: int) -> list:
    """(alpha power, omega power) of the basis classes, ordered by degree."""
    out = []
    for d in range(k):
        out.append((d % 2, d // 2))
    return out


def cohomology_basis(k: int, offset: int = 0) -> list:
    """Classes 1, alpha, omega, alpha omega, ... with one class per degree 0..k-1."""
    if k < 1:
        raise ValueError("k must be >= 1")
    a, w = torus_alpha(k, offset) if k >= 2 else TorusWord(), torus_omega(k, offset)
    out = []
    for e, f in basis_exponents(k):
        word = (a ** e) * (w ** f)
        cls = CohomologyClass(e + 2 * f, word, e, f)
        if word.is_zero():
            raise AssertionError(f"basis class {cls.label} vanishes for k={k}")
        if word.degree != cls.degree:
            raise AssertionError(f"class {cls.label} has degree {word.degree}")
        out.append(cls)
    degs = [c.degree for c in out]
    if degs != list(range(k)):
        raise AssertionError(f"degrees {degs} are not 0..{k - 1}")
    return out


def betti(k: int) -> tuple:
    counts = [0] * k
    for c in cohomology_basis(k):
        counts[c.degree] += 1
    return tuple(counts)


def top_class_check(k: int) -> bool:
    """For odd k: omega^{(k-1)/2} = +-((k-1)/2)! eta_1...eta_{k-1}."""
    if k % 2 == 0 or k < 3:
        raise ValueError("top class check is for odd k >= 3")
    h = (k - 1) // 2
    word = torus_omega(k) ** h
    full = tuple(range(1, k))
    return set(word.terms) == {full} and abs(word.terms[full]) == factorial(h)
