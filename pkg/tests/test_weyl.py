"""Weyl algebra arithmetic, Groebner bases, connection matrices and GKZ systems."""

from fractions import Fraction
from pathlib import Path

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from posgeom.errors import InfiniteRankError, InputError
from posgeom.poly import MultiPoly, RatFunc
from posgeom.weyl import (
    LeftIdeal, SymbolicMonomial, WeylAlgebra, annihilator_check, connection_matrices,
    gkz_system, holonomic_rank, integrability_defect, parse_operators,
    standard_monomials,
)

EXAMPLES = Path(__file__).parent / "examples"


def to_sympy(r: RatFunc, syms):
    def poly(p):
        return sympy.Add(*[
            sympy.Rational(c.numerator, c.denominator) * sympy.Mul(*[s**k for s, k in zip(syms, e)])
            for e, c in p.terms.items()
        ])
    return poly(r.num) / poly(r.den)


def apply_sympy(op, f, syms):
    """Apply a Weyl element to a sympy expression in ``syms``."""
    total = 0
    for e, c in op.terms.items():
        g = f
        for s, k in zip(syms, e):
            if k:
                g = sympy.diff(g, s, k)
        total += to_sympy(c, syms) * g
    return sympy.simplify(total)


def test_products():
    A = WeylAlgebra(2)
    x1, d1, d2 = A.x(1), A.d(1), A.d(2)
    assert str(d1 * x1) == "x1*d1 + 1"
    assert (d1 * x1 - x1 * d1) == A.one()
    assert str(d1 * x1**2) == "x1^2*d1 + 2*x1"
    assert str(A.theta(1)) == "x1*d1"
    assert d1 * d2 == d2 * d1
    theta = A.theta(1)
    assert str(theta * theta) == "x1^2*d1^2 + x1*d1"


def test_apply_to_polynomials_and_symbolic_monomials():
    A = WeylAlgebra(2)
    f = MultiPoly.parse("x1^3*x2", A.vars)
    assert str((A.d(1) ** 2).apply(f)) == "6*x1*x2"
    assert str(A.theta(1).apply(f)) == "3*x1^3*x2"

    B = WeylAlgebra(2, params=("s", "t"))
    m = SymbolicMonomial.make(B, ("s", "t"))
    s = RatFunc.parse("s", B.vars)
    t = RatFunc.parse("t", B.vars)
    assert B.theta(1).apply(m).factor == s
    assert (B.theta(1) * B.theta(2)).apply(m).factor == s * t
    assert B.d(1).apply(m).factor == RatFunc.parse("s/x1", B.vars)


def test_rank_examples():
    A1 = WeylAlgebra(1)
    ideal = LeftIdeal([A1.d(1) - 1])
    assert holonomic_rank(ideal) == 1
    (M,) = connection_matrices(ideal)
    assert M == [[RatFunc.constant(A1.vars, 1)]]

    A = WeylAlgebra(2)
    assert holonomic_rank(LeftIdeal([A.x(1) * A.d(2)])) == float("inf")
    with pytest.raises(InfiniteRankError):
        connection_matrices(LeftIdeal([A.x(1) * A.d(2)]))
    assert standard_monomials(LeftIdeal([A.d(1) ** 2, A.d(2)])) == ((0, 0), (1, 0))
    assert standard_monomials(LeftIdeal([A.d(1), A.d(2)])) == ((0, 0),)


def _example():
    alg, ops = parse_operators((EXAMPLES / "connection_example.ops").read_text())
    return alg, LeftIdeal(tuple(op for _, op in ops))


def test_example_rank_agrees_across_orders():
    _, ideal = _example()
    assert holonomic_rank(ideal, "lex") == holonomic_rank(ideal, "degrevlex") == 3


def test_example_closed_form_solutions():
    alg, ideal = _example()
    syms = sympy.symbols("x1 x2", positive=True)
    x1, x2 = syms
    for f in (sympy.Integer(1), sympy.log(x1), sympy.exp(x1 / x2)):
        for op in ideal.generators:
            assert apply_sympy(op, f, syms) == 0


def test_example_connection_is_flat_and_acts_on_solutions():
    alg, ideal = _example()
    mats = connection_matrices(ideal)
    assert all(all(c.is_zero() for row in m for c in row)
               for m in integrability_defect(alg, mats).values())
    # the vector (f, d2 f, d1 f) of any solution satisfies d_i s = M_i s
    syms = sympy.symbols("x1 x2", positive=True)
    f = sympy.exp(syms[0] / syms[1])
    vec = [f, sympy.diff(f, syms[1]), sympy.diff(f, syms[0])]
    for i, M in enumerate(mats):
        for row, entry in zip(M, vec):
            lhs = sympy.diff(entry, syms[i])
            rhs = sum(to_sympy(c, syms) * v for c, v in zip(row, vec))
            assert sympy.simplify(lhs - rhs) == 0


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3),
       st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_associativity(a, b, c):
    A = WeylAlgebra(1)
    x, d = A.x(1), A.d(1)

    def el(k):
        return A.scalar(k[0]) + k[1] * x * d + k[2] * d * d * x
    p, q, r = el(a), el(b), el(c)
    assert (p * q) * r == p * (q * r)


def test_gkz_twisted_cubic():
    g = gkz_system([[1, 1, 1, 1], [0, 1, 2, 3]], ("b1", "b2"), 2)
    assert sorted(g.binomial_strings()) == ["d1*d3 - d2^2", "d1*d4 - d2*d3", "d2*d4 - d3^2"]
    assert g.truncated


def test_gkz_conic():
    g = gkz_system([[1, 1, 1], [0, 1, 2]], ("b1", "b2"), 2)
    assert g.binomial_strings() == ["d1*d3 - d2^2"]
    assert [str(e) for e in g.euler] == ["x1*d1 + x2*d2 + x3*d3 - b1", "x2*d2 + 2*x3*d3 - b2"]
    assert holonomic_rank(g.ideal) == 2


def test_gkz_annihilates_weighted_solution():
    # A = [[1, 2]], kappa = 3: toric operator d1^2 - d2, Euler x1*d1 + 2*x2*d2 - 3
    g = gkz_system([[1, 2]], (Fraction(3),), 2)
    assert g.binomial_strings() == ["d1^2 - d2"]
    vars = g.ideal.alg.vars
    assert annihilator_check(g.ideal, MultiPoly.parse("x1^3 + 6*x1*x2", vars))
    assert not annihilator_check(g.ideal, MultiPoly.parse("x1^3 + 3*x1*x2", vars))


@pytest.mark.parametrize("A,kappa,bound,msg", [
    ([], (1,), 2, "nonempty"),
    ([[0, 1]], (1,), 2, "zero"),
    ([[1, 1]], (1, 2), 2, "kappa"),
    ([[1, 1]], (1,), 0, "bound"),
])
def test_gkz_input_errors(A, kappa, bound, msg):
    with pytest.raises(InputError, match=msg):
        gkz_system(A, kappa, bound)


def test_parse_errors():
    with pytest.raises(InputError, match="cannot parse"):
        parse_operators("d1 + ")
    alg, ops = parse_operators("x1*d1 - s", params=("s",))
    assert alg.params == ("s",)
    assert str(ops[0][1]) == "x1*d1 - s"


@pytest.mark.parametrize("f", ["x1^2", "x1*x2", "x2^2"])
def test_euler_operators_annihilate_degree_two(f):
    g = gkz_system([[1, 1]], (Fraction(2),), 2)
    vars = g.ideal.alg.vars
    assert annihilator_check(LeftIdeal(tuple(g.euler)), MultiPoly.parse(f, vars))
