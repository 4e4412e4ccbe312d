"""Exact scalars, sparse multivariate polynomials, rational functions and jets.

Variables are 1-based indices: index ``i`` stands for ``z_i``.  A monomial is a
tuple of ``(var, exp)`` pairs sorted by variable with positive exponents, so
``z1^2*z3`` is ``((1, 2), (3, 1))`` and the constant monomial is ``()``.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Sequence, Union

Monomial = tuple
Scalar = Union[int, Fraction]

ONE_MONO: Monomial = ()


class ExactError(ValueError):
    """Base class for errors raised by the exact layer."""


class ParseError(ExactError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos
        self.text = text


class PoleError(ZeroDivisionError):
    pass


class NotExactDivision(ExactError):
    pass


# ---------------------------------------------------------------- monomials

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = dict(a)
    for v, e in b:
        out[v] = out.get(v, 0) + e
    return tuple(sorted(out.items()))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b if b divides a, else None."""
    if not b:
        return a
    da = dict(a)
    for v, e in b:
        r = da.get(v, 0) - e
        if r < 0:
            return None
        if r:
            da[v] = r
        else:
            del da[v]
    return tuple(sorted(da.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Graded-lex key; among equal degree, the larger variable index dominates."""
    return (mono_degree(m), tuple(reversed(m)))


def mono_str(m: Monomial) -> str:
    return "*".join(f"z{v}" if e == 1 else f"z{v}^{e}" for v, e in m)


try:
    from gmpy2 import mpq as _mpq
except ImportError:  # pragma: no cover
    _mpq = None

# scalar types a Jet may carry; mpq is only a faster drop-in for Fraction
JET_SCALARS = (int, Fraction) if _mpq is None else (int, Fraction, type(_mpq()))


def fast_rational(x):
    """x as the fastest available exact rational (gmpy2.mpq if installed)."""
    return _as_fraction(x) if _mpq is None else _mpq(x)


def to_fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(int(x.numerator), int(x.denominator))


def _jet_scalar(c):
    if isinstance(c, bool) or not isinstance(c, JET_SCALARS):
        raise TypeError(f"exact scalar expected, got {type(c).__name__}")
    return Fraction(c) if isinstance(c, int) else c


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"exact scalar expected, got {type(c).__name__}")


# -------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable sparse polynomial over Q."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Scalar] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[tuple(m)] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Polynomial":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def const(cls, c: Scalar) -> "Polynomial":
        c = _as_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def var(cls, i: int) -> "Polynomial":
        if i < 1:
            raise ExactError(f"variable index must be >= 1, got {i}")
        return cls._raw({((i, 1),): Fraction(1)})

    @classmethod
    def monomial(cls, m: Mapping[int, int] | Monomial, c: Scalar = 1) -> "Polynomial":
        items = m.items() if isinstance(m, Mapping) else m
        mono = tuple(sorted((int(v), int(e)) for v, e in items if e))
        return cls({mono: c})

    # inspection
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or (len(self._terms) == 1 and () in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    def degree(self, var: int | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(mono_degree(m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def leading(self) -> tuple:
        """(monomial, coefficient) of the graded-lex leading term."""
        if not self._terms:
            raise ExactError("zero polynomial has no leading term")
        m = max(self._terms, key=mono_key)
        return m, self._terms[m]

    def leading_coefficient(self) -> Fraction:
        return self.leading()[1]

    # equality / hashing
    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._terms == Polynomial.const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # arithmetic
    @staticmethod
    def _coerce(x) -> "Polynomial | None":
        if isinstance(x, Polynomial):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Polynomial.const(x)
        return None

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({m: -c for m, c in self._terms.items()})

    def __pos__(self) -> "Polynomial":
        return self

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if len(o._terms) > len(self._terms):
            big, small = dict(o._terms), self._terms
        else:
            big, small = dict(self._terms), o._terms
        for m, c in small.items():
            s = big.get(m, 0) + c
            if s:
                big[m] = s
            else:
                big.pop(m, None)
        return Polynomial._raw(big)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Polynomial._raw({})
            return Polynomial._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, 0) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise ExactError("polynomial powers need a nonnegative integer exponent")
        result = Polynomial.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                raise ZeroDivisionError("polynomial divided by zero")
            return self * (1 / Fraction(other))
        if isinstance(other, Polynomial):
            return RationalFunction(self, other)
        return NotImplemented

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(o, self)

    # calculus and evaluation
    def partial(self, i: int) -> "Polynomial":
        out: dict = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(i, 0)
            if not e:
                continue
            if e == 1:
                del d[i]
            else:
                d[i] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return Polynomial({m: c for m, c in out.items() if c})

    def evaluate(self, point: Mapping[int, Any] | Sequence, zero=None):
        """Substitute values for the variables.

        ``point`` is either a mapping var -> value or a sequence whose entry
        ``r`` is the value of ``z_{r+1}``.  Values may be any ring elements
        supporting ``+`` and ``*`` with Fractions (Fractions, Jets, Polynomials).
        """
        get = _point_getter(point)
        total = Fraction(0) if zero is None else zero
        cache: dict = {}
        for m, c in self._terms.items():
            term = c
            for v, e in m:
                key = (v, e)
                if key not in cache:
                    cache[key] = _power(get(v), e)
                term = cache[key] * term
            total = total + term
        return total

    def substitute(self, mapping: Mapping[int, "Polynomial"]) -> "Polynomial":
        """Substitute Polynomials for some variables; others are kept."""
        def get(v):
            return mapping[v] if v in mapping else Polynomial.var(v)
        total = Polynomial._raw({})
        for m, c in self._terms.items():
            term = Polynomial.const(c)
            for v, e in m:
                term = term * (get(v) ** e)
            total = total + term
        return total

    def shift(self, offset: int) -> "Polynomial":
        return Polynomial._raw({tuple((v + offset, e) for v, e in m): c
                                for m, c in self._terms.items()})

    # printing / serialization
    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for idx, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if not m:
                body = str(a)
            elif a == 1:
                body = mono_str(m)
            else:
                body = f"{a}*{mono_str(m)}"
            if idx == 0:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"

    def to_json(self) -> dict:
        return {"terms": [{"coef": str(c), "exps": {str(v): e for v, e in m}}
                          for m, c in self.sorted_terms()]}

    @classmethod
    def from_json(cls, data: Mapping | str) -> "Polynomial":
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict = {}
        for t in data["terms"]:
            coef = parse_rational(str(t["coef"]))
            mono = tuple(sorted((int(v), int(e)) for v, e in t.get("exps", {}).items() if int(e)))
            if any(e < 0 for _, e in mono) or any(v < 1 for v, _ in mono):
                raise ExactError(f"bad monomial {t.get('exps')}")
            terms[mono] = terms.get(mono, 0) + coef
        return cls(terms)

    @classmethod
    def parse(cls, text: str) -> "Polynomial":
        return parse_polynomial(text)


def _power(x, e: int):
    if e == 1:
        return x
    if isinstance(x, Fraction):
        return x ** e
    r = x
    for _ in range(e - 1):
        r = r * x
    return r


def _point_getter(point) -> Callable[[int], Any]:
    if isinstance(point, Mapping):
        def get(v):
            try:
                return point[v]
            except KeyError:
                raise ExactError(f"no value supplied for variable z{v}") from None
    else:
        seq = list(point)

        def get(v):
            if not 1 <= v <= len(seq):
                raise ExactError(f"no value supplied for variable z{v}")
            return seq[v - 1]
    return get


def poly_eval(p: Polynomial, point) -> Fraction:
    return p.evaluate(point)


def poly_partial(p: Polynomial, i: int) -> Polynomial:
    return p.partial(i)


ZERO = Polynomial.const(0)
ONE = Polynomial.const(1)


def z(i: int) -> Polynomial:
    return Polynomial.var(i)


# ------------------------------------------------------------------ division

def divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact quotient a / b; raises NotExactDivision if b does not divide a."""
    if b.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if b.is_constant():
        return a * (1 / b.constant_term())
    lm_b, lc_b = b.leading()
    bt = b._terms
    rem = dict(a._terms)
    quot: dict = {}
    while rem:
        lm_r = max(rem, key=mono_key)
        q_m = mono_div(lm_r, lm_b)
        if q_m is None:
            raise NotExactDivision("divisor does not divide dividend")
        q_c = rem[lm_r] / lc_b
        quot[q_m] = quot.get(q_m, 0) + q_c
        for m, c in bt.items():
            mm = mono_mul(q_m, m)
            s = rem.get(mm, 0) - q_c * c
            if s:
                rem[mm] = s
            else:
                rem.pop(mm, None)
    return Polynomial._raw({m: c for m, c in quot.items() if c})


def try_divexact(a: Polynomial, b: Polynomial) -> Polynomial | None:
    if b.is_zero():
        return None
    # cheap degree screens before attempting the division
    for v in b.variables():
        if b.degree(v) > a.degree(v):
            return None
    try:
        return divexact(a, b)
    except NotExactDivision:
        return None


# --------------------------------------------------------------------- gcd

def _monic(p: Polynomial) -> Polynomial:
    if p.is_zero():
        return p
    lc = p.leading_coefficient()
    return p if lc == 1 else p * (1 / lc)


def _coeffs_in(p: Polynomial, x: int) -> dict:
    """Coefficients of p as a polynomial in z_x: {degree: Polynomial}."""
    out: dict = {}
    for m, c in p._terms.items():
        d = 0
        rest = []
        for v, e in m:
            if v == x:
                d = e
            else:
                rest.append((v, e))
        out.setdefault(d, {})[tuple(rest)] = c
    return {d: Polynomial._raw(t) for d, t in out.items()}


def _from_coeffs(coeffs: Mapping[int, Polynomial], x: int) -> Polynomial:
    out: dict = {}
    for d, cp in coeffs.items():
        for m, c in cp._terms.items():
            mm = mono_mul(m, ((x, d),)) if d else m
            out[mm] = c
    return Polynomial._raw(out)


def _content_in(p: Polynomial, x: int) -> Polynomial:
    g = ZERO
    for cp in sorted(_coeffs_in(p, x).values(), key=len):
        g = poly_gcd(g, cp)
        if g.is_constant():
            return ONE
    return g


def _prem(a: dict, b: dict) -> dict:
    """Pseudo-remainder of univariate dicts (degree -> Polynomial coefficient)."""
    db = max(b)
    lc = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lead = r[dr]
        shift = dr - db
        new: dict = {}
        for d, c in r.items():
            new[d] = c * lc
        for d, c in b.items():
            nd = d + shift
            new[nd] = new.get(nd, ZERO) - lead * c
        r = {d: c for d, c in new.items() if not c.is_zero()}
    return r


def _primitive_dict(r: dict) -> dict:
    g = ZERO
    for c in sorted(r.values(), key=len):
        g = poly_gcd(g, c)
        if g.is_constant():
            break
    if not g.is_constant():
        r = {d: divexact(c, g) for d, c in r.items()}
    # scale to keep rational coefficients small
    lead = r[max(r)].leading_coefficient()
    if lead != 1:
        inv = 1 / lead
        r = {d: c * inv for d, c in r.items()}
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic (graded-lex leading coefficient 1) gcd over Q."""
    if a.is_zero():
        return _monic(b)
    if b.is_zero():
        return _monic(a)
    if a.is_constant() or b.is_constant():
        return ONE
    if a == b:
        return _monic(a)
    va, vb = a.variables(), b.variables()
    if not (va & vb):
        return ONE
    x = max(va | vb)
    if x not in va:
        return poly_gcd(a, _content_in(b, x))
    if x not in vb:
        return poly_gcd(_content_in(a, x), b)
    if len(b) < len(a):
        q = try_divexact(a, b)
        if q is not None:
            return _monic(b)
    else:
        q = try_divexact(b, a)
        if q is not None:
            return _monic(a)
    ca, cb = _content_in(a, x), _content_in(b, x)
    pa = divexact(a, ca) if not ca.is_constant() else a
    pb = divexact(b, cb) if not cb.is_constant() else b
    c = poly_gcd(ca, cb)
    da, db = _coeffs_in(pa, x), _coeffs_in(pb, x)
    if max(da) < max(db):
        da, db = db, da
    while True:
        r = _prem(da, db)
        if not r:
            g = _from_coeffs(_primitive_dict(db), x)
            break
        if max(r) == 0:
            g = ONE
            break
        da, db = db, _primitive_dict(r)
    return _monic(c * g)


# --------------------------------------------------------- rational functions

class RationalFunction:
    """Reduced quotient num/den with monic denominator (graded-lex)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, *, _reduced: bool = False):
        num = _to_poly(num)
        den = ONE if den is None else _to_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not _reduced:
            if num.is_zero():
                den = ONE
            elif den.is_constant():
                num = num * (1 / den.constant_term())
                den = ONE
            else:
                g = poly_gcd(num, den)
                if not g.is_constant():
                    num, den = divexact(num, g), divexact(den, g)
                lc = den.leading_coefficient()
                if lc != 1:
                    num, den = num * (1 / lc), den * (1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def from_poly(cls, p) -> "RationalFunction":
        return cls(_to_poly(p), ONE, _reduced=True)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den == ONE

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (Polynomial, int, Fraction)) and not isinstance(other, bool):
            return self.den == ONE and self.num == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    @staticmethod
    def _coerce(x) -> "RationalFunction | None":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Polynomial) or (isinstance(x, (int, Fraction)) and not isinstance(x, bool)):
            return RationalFunction.from_poly(x)
        return None

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            return self
        if self.is_zero():
            return o
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        g = poly_gcd(self.den, o.den)
        if g.is_constant():
            num = self.num * o.den + o.num * self.den
            return RationalFunction(num, self.den * o.den)
        d1, d2 = divexact(self.den, g), divexact(o.den, g)
        num = self.num * d2 + o.num * d1
        return RationalFunction(num, d1 * o.den)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return RationalFunction(ZERO)
            return RationalFunction(self.num * other, self.den, _reduced=True)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero() or o.is_zero():
            return RationalFunction(ZERO)
        g1 = poly_gcd(self.num, o.den)
        g2 = poly_gcd(o.num, self.den)
        n1 = divexact(self.num, g1) if not g1.is_constant() else self.num
        d2 = divexact(o.den, g1) if not g1.is_constant() else o.den
        n2 = divexact(o.num, g2) if not g2.is_constant() else o.num
        d1 = divexact(self.den, g2) if not g2.is_constant() else self.den
        num, den = n1 * n2, d1 * d2
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RationalFunction(num, den, _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        num, den = self.den, self.num
        lc = den.leading_coefficient()
        if lc != 1:
            num, den = num * (1 / lc), den * (1 / lc)
        return RationalFunction(num, den, _reduced=True)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        return RationalFunction(self.num ** n, self.den ** n, _reduced=True)

    def partial(self, i: int) -> "RationalFunction":
        dn, dd = self.num.partial(i), self.den.partial(i)
        if dd.is_zero():
            return RationalFunction(dn, self.den)
        return RationalFunction(dn * self.den - self.num * dd, self.den * self.den)

    def variables(self) -> frozenset:
        return self.num.variables() | self.den.variables()

    def evaluate(self, point):
        d = self.den.evaluate(point)
        if not d:
            raise PoleError("denominator vanishes at the evaluation point")
        return self.num.evaluate(point) / d

    def __str__(self) -> str:
        if self.den == ONE:
            return str(self.num)
        n = str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = str(self.den)
        if len(self.den) > 1 or self.den.degree() > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self) -> str:
        return f"RationalFunction({str(self)!r})"

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}


def _to_poly(x) -> Polynomial:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Polynomial.const(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as a polynomial")


def rf_normalize(num: Polynomial, den: Polynomial) -> RationalFunction:
    return RationalFunction(num, den)


# ---------------------------------------------------------------------- jets

class Jet:
    """First-order jet: a value together with its exact gradient."""

    __slots__ = ("value", "grad")

    def __init__(self, value, grad: Iterable = ()):
        self.value = _jet_scalar(value)
        self.grad = tuple(_jet_scalar(g) for g in grad)

    @classmethod
    def _raw(cls, value: Fraction, grad: tuple) -> "Jet":
        j = object.__new__(cls)
        j.value = value
        j.grad = grad
        return j

    @classmethod
    def variable(cls, value, index: int, size: int) -> "Jet":
        zero = _jet_scalar(value) * 0
        g = [zero] * size
        g[index] = zero + 1
        return cls(value, g)

    @classmethod
    def constant(cls, value, size: int) -> "Jet":
        return cls(value, [0] * size)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Jet):
            return self.value == other.value and self.grad == other.grad
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            return self.value == other and not any(self.grad)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.grad))

    def __repr__(self) -> str:
        return f"Jet({self.value}, {tuple(str(g) for g in self.grad)})"

    def _grads(self, other: "Jet") -> tuple:
        if len(self.grad) != len(other.grad):
            if not self.grad:
                return (Fraction(0),) * len(other.grad), other.grad
            if not other.grad:
                return self.grad, (Fraction(0),) * len(self.grad)
            raise ExactError("jets with different gradient sizes")
        return self.grad, other.grad

    def __neg__(self) -> "Jet":
        return Jet._raw(-self.value, tuple(-g for g in self.grad))

    def __add__(self, other):
        if isinstance(other, Jet):
            a, b = self._grads(other)
            return Jet._raw(self.value + other.value, tuple(x + y for x, y in zip(a, b)))
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            return Jet._raw(self.value + other, self.grad)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            a, b = self._grads(other)
            return Jet._raw(self.value - other.value, tuple(x - y for x, y in zip(a, b)))
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            return Jet._raw(self.value - other, self.grad)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            a, b = self._grads(other)
            u, v = self.value, other.value
            return Jet._raw(u * v, tuple(u * y + v * x for x, y in zip(a, b)))
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            return Jet._raw(self.value * other, tuple(g * other for g in self.grad))
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "Jet":
        if not self.value:
            raise PoleError("division by a jet with zero value")
        inv = 1 / self.value
        s = -inv * inv
        return Jet._raw(inv, tuple(g * s for g in self.grad))

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.inverse()
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            if not other:
                raise PoleError("division of a jet by zero")
            return self * (1 / _jet_scalar(other))
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, JET_SCALARS) and not isinstance(other, bool):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int) -> "Jet":
        if n < 0:
            return self.inverse() ** (-n)
        r = Jet._raw(Fraction(1), (Fraction(0),) * len(self.grad))
        for _ in range(n):
            r = r * self
        return r


def jet_eval(f, point: Mapping[int, Scalar] | Sequence, directions: Sequence[int]) -> Jet:
    """Value and gradient of f at point along the coordinate directions given.

    ``directions`` lists the variable indices forming the gradient, in order.
    """
    get = _point_getter(point)
    size = len(directions)
    dirs = {v: r for r, v in enumerate(directions)}
    variables = f.variables() if isinstance(f, (Polynomial, RationalFunction)) else frozenset()
    values = {}
    for v in variables | set(directions):
        val = _as_fraction(get(v))
        values[v] = Jet.variable(val, dirs[v], size) if v in dirs else Jet.constant(val, size)
    zero = Jet.constant(0, size)
    if isinstance(f, RationalFunction):
        den = f.den.evaluate(values, zero)
        if not den.value:
            raise PoleError("denominator vanishes at the evaluation point")
        return f.num.evaluate(values, zero) / den
    if isinstance(f, Polynomial):
        return f.evaluate(values, zero)
    return Jet.constant(_as_fraction(f), size)


# ------------------------------------------------------------------- parsing

_RAT_RE = re.compile(r"\s*([+-]?)\s*(\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse "3/2", "-7", " 4 ".  Decimals and exponents are rejected."""
    if not isinstance(text, str):
        raise ParseError("expected a string", str(text), 0)
    for pos, ch in enumerate(text):
        if ch in ".eE":
            raise ParseError("decimal notation is not accepted, use p/q", text, pos)
        if not (ch.isdigit() or ch in "+-/ \t"):
            raise ParseError(f"unexpected character {ch!r}", text, pos)
    m = _RAT_RE.match(text)
    if not m:
        raise ParseError("malformed rational", text, 0)
    sign, p, q = m.groups()
    if q is not None and int(q) == 0:
        raise ParseError("zero denominator", text, text.index("/"))
    val = Fraction(int(p), int(q) if q else 1)
    return -val if sign == "-" else val


def parse_rational_list(text: str) -> list:
    """Parse a comma separated list of rationals, reporting the absolute position of errors."""
    out = []
    start = 0
    for piece in text.split(","):
        try:
            out.append(parse_rational(piece))
        except ParseError as err:
            raise ParseError(str(err).split(" at position")[0], text, start + err.pos) from None
        start += len(piece) + 1
    return out


class _PolyParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        n = len(text)
        while pos < n:
            if text[pos].isspace():
                pos += 1
                continue
            ch = text[pos]
            if ch.isdigit():
                end = pos
                while end < n and text[end].isdigit():
                    end += 1
                if end < n and text[end] == ".":
                    raise ParseError("decimal notation is not accepted, use p/q", text, end)
                self.tokens.append(("num", int(text[pos:end]), pos))
                pos = end
            elif ch == "z":
                end = pos + 1
                while end < n and text[end].isdigit():
                    end += 1
                if end == pos + 1:
                    raise ParseError("variable needs an index", text, pos)
                idx = int(text[pos + 1:end])
                if idx < 1:
                    raise ParseError("variable index must be >= 1", text, pos)
                self.tokens.append(("var", idx, pos))
                pos = end
            elif ch in "+-*/^()":
                self.tokens.append((ch, ch, pos))
                pos += 1
            elif ch == ".":
                raise ParseError("decimal notation is not accepted, use p/q", text, pos)
            else:
                raise ParseError(f"unexpected character {ch!r}", text, pos)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, kind=None):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.text, len(self.text))
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if not self.tokens:
            raise ParseError("empty polynomial", self.text, 0)
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return p

    def expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok is not None and tok[0] in "+-":
            self.take()
            sign = -1 if tok[0] == "-" else 1
        total = self.term() * sign
        while (tok := self.peek()) is not None and tok[0] in "+-":
            self.take()
            t = self.term()
            total = total + t if tok[0] == "+" else total - t
        return total

    def term(self) -> Polynomial:
        p = self.factor()
        while (tok := self.peek()) is not None and tok[0] in "*/":
            self.take()
            if tok[0] == "*":
                p = p * self.factor()
            else:
                d = self.take("num")
                if d[1] == 0:
                    raise ParseError("division by zero", self.text, d[2])
                p = p * Fraction(1, d[1])
        return p

    def factor(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "^":
            self.take()
            e = self.take("num")
            base = base ** e[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        if tok[0] == "num":
            return Polynomial.const(tok[1])
        if tok[0] == "var":
            return Polynomial.var(tok[1])
        if tok[0] == "(":
            p = self.expr()
            self.take(")")
            return p
        if tok[0] == "-":
            return -self.factor()
        raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])


def parse_polynomial(text: str) -> Polynomial:
    return _PolyParser(text).parse()


def fraction_str(x: Fraction) -> str:
    return str(Fraction(x))


# ------------------------------------------------------ exact linear algebra

def row_echelon(rows: Sequence[Sequence]) -> tuple:
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    return len(row_echelon(rows)[1])


def solve_linear(columns: Sequence[Sequence], target: Sequence) -> list | None:
    """A solution x of sum_i x_i columns[i] = target (free variables set to 0), or None."""
    nvar = len(columns)
    neq = len(target)
    aug = [[columns[i][r] for i in range(nvar)] + [target[r]] for r in range(neq)]
    red, pivots = row_echelon(aug)
    if nvar in pivots:
        return None
    x = [Fraction(0)] * nvar
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return x
