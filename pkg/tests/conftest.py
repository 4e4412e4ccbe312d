import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from braidvar.exact import Polynomial

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=500, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_rationals = st.fractions(min_value=-9, max_value=9, max_denominator=9)
nonzero_rationals = small_rationals.filter(bool)


@st.composite
def polynomials(draw, nvars=3, max_terms=4, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {v: draw(st.integers(0, max_exp)) for v in range(1, nvars + 1)}
        m = tuple(sorted((v, e) for v, e in exps.items() if e))
        terms[m] = terms.get(m, Fraction(0)) + draw(st.integers(-5, 5))
    return Polynomial(terms)


def to_sympy(p):
    import sympy
    return sympy.sympify(str(p).replace("^", "**")) if str(p) != "0" else sympy.Integer(0)


@pytest.fixture
def sympy_of():
    return to_sympy
