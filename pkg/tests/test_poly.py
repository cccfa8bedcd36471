"""Exact polynomial and rational-function arithmetic against sympy."""

from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from posgeom.errors import InputError, VariableMismatchError
from posgeom.poly import MultiPoly, RatFunc, poly_gcd

VARS = ("x", "y", "z")
SYM = sympy.symbols(VARS)


def to_sympy(p: MultiPoly):
    return sympy.Add(*[
        sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**k for s, k in zip(SYM, e)])
        for e, c in p.terms.items()
    ])


coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, coeffs, max_size=5).map(lambda t: MultiPoly(VARS, t))


@given(polys, polys)
def test_ring_operations_match_sympy(p, q):
    assert sympy.expand(to_sympy(p + q) - (to_sympy(p) + to_sympy(q))) == 0
    assert sympy.expand(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.expand(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


@given(polys, polys)
def test_exact_quotient_recovers_factor(p, q):
    if q.is_zero():
        return
    assert (p * q).exquo(q) == p


@given(polys, polys, polys)
def test_gcd_contains_common_factor(p, q, r):
    if r.is_zero() or (p.is_zero() and q.is_zero()):
        return
    g = poly_gcd(p * r, q * r)
    assert r.divides(g)
    assert g.divides(p * r) and g.divides(q * r)


@given(polys, polys.filter(lambda q: not q.is_zero()))
def test_ratfunc_normal_form_is_canonical(p, q):
    f = RatFunc(p, q)
    again = RatFunc(p * q, q * q)
    assert f == again
    assert str(f) == str(again)
    assert sympy.simplify(to_sympy(f.num) / to_sympy(f.den) - to_sympy(p) / to_sympy(q)) == 0


@given(polys)
def test_string_and_json_roundtrip(p):
    assert MultiPoly.parse(str(p), VARS) == p
    assert MultiPoly.from_json(p.to_json()) == p


@given(polys, st.tuples(coeffs, coeffs, coeffs))
def test_evaluate_matches_sympy(p, point):
    values = dict(zip(VARS, point))
    expected = to_sympy(p).subs({s: sympy.Rational(v.numerator, v.denominator)
                                 for s, v in zip(SYM, point)})
    assert p.evaluate(values) == Fraction(int(sympy.numer(expected)), int(sympy.denom(expected)))


@given(polys)
def test_derivative_matches_sympy(p):
    for v, s in zip(VARS, SYM):
        assert sympy.expand(to_sympy(p.diff(v)) - sympy.diff(to_sympy(p), s)) == 0


def test_parse_and_print():
    p = MultiPoly.parse("2*x^2 - x*y + 1/3", VARS)
    assert str(p) == "2*x^2 - x*y + 1/3"
    assert p.total_degree() == 2
    assert p.homogeneity() is None
    assert MultiPoly.parse("x^2*y + y^3", VARS).homogeneity() == 3


def test_ratfunc_cancels_and_normalizes_denominator():
    assert RatFunc.parse("(x^2 - y^2)/(x - y)", VARS).is_polynomial()
    r = RatFunc.parse("x/(2*x + 2*y)", VARS)
    assert str(r.den) == "x + y"
    assert r.num == MultiPoly.parse("x/2", VARS)


def test_mixed_variable_tables_are_rejected():
    with pytest.raises(VariableMismatchError):
        MultiPoly.parse("x", VARS) + MultiPoly.parse("w", ("w",))


def test_unknown_identifier_is_an_input_error():
    with pytest.raises(InputError):
        MultiPoly.parse("x + w", VARS)


def test_inexact_division_raises():
    with pytest.raises(ArithmeticError):
        MultiPoly.parse("x^2 + 1", VARS).exquo(MultiPoly.parse("x + 1", VARS))
