"""Hyperplane arrangements, intersection posets and Euler characteristics."""

import random
from math import comb
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from posgeom.arrangement import (
    Arrangement, euler_characteristic, generic_euler, intersection_poset,
    master_integral_count, parse_forms, restriction, specialize,
)
from posgeom.errors import DegenerateArrangementError, InputError
from posgeom.poly import MultiPoly

EXAMPLES = Path(__file__).parent / "examples"


def arr(vars, *forms, torus=False):
    return Arrangement(vars, tuple(MultiPoly.parse(f, vars) for f in forms), torus)


@pytest.mark.parametrize("k", range(0, 5))
def test_points_on_a_line(k):
    a = arr(("x",), *[f"x - {i + 1}" for i in range(k)])
    assert euler_characteristic(a) == 1 - k
    assert euler_characteristic(Arrangement(a.vars, a.forms, True)) == -k


@pytest.mark.parametrize("k", range(1, 6))
def test_generic_lines_in_the_plane(k):
    forms = [f"x + {i * i}*y - {i}" for i in range(1, k + 1)]
    a = arr(("x", "y"), *forms)
    assert euler_characteristic(a) == 1 - k + comb(k, 2)


def test_central_arrangement_has_zero_chi():
    assert euler_characteristic(arr(("x", "y"), "x", "y", "x + y", "x - y")) == 0


def test_poset_counts_for_a_triangle_of_lines():
    poset = intersection_poset(arr(("x", "y"), "x", "y", "x + y - 1"))
    assert poset.characteristic_counts() == {0: 1, 1: -3, 2: 3}


def test_two_site_arrangement_from_file():
    vars, params, forms = parse_forms((EXAMPLES / "twosite_arrangement.forms").read_text())
    assert vars == ("a1", "a2") and params == ("X1", "X2", "Y12")
    run = generic_euler(vars, params, [f for _, f in forms], in_torus=True, seed=3)
    assert run.stable and run.chi == 4
    a = Arrangement(vars, specialize(vars, params, [f for _, f in forms], (1, 2, 3)), True)
    assert master_integral_count(a) == 4
    # frozen regression value: flats of the generic 2-site arrangement in the torus
    assert len(intersection_poset(a).flats) == 14
    for point in run.draws:
        b = Arrangement(vars, specialize(vars, params, [f for _, f in forms], point), True)
        assert len(intersection_poset(b).flats) == 14


def test_one_generic_point_in_the_torus():
    assert master_integral_count(arr(("x",), "x - 3", torus=True)) == 1


def test_master_count_needs_torus():
    with pytest.raises(InputError):
        master_integral_count(arr(("x",), "x - 1"))


def test_restriction_to_a_point():
    r = restriction(arr(("x",), "x - 1", "x - 2"), 0)
    assert r.vars == () and r.forms == ()
    assert euler_characteristic(r) == 1


def test_rejections():
    with pytest.raises(InputError, match="degree exactly 1"):
        parse_forms("x^2 + y")
    with pytest.raises(InputError, match="degree exactly 1"):
        parse_forms("3")
    with pytest.raises(DegenerateArrangementError, match="proportional"):
        arr(("x", "y"), "x + y - 1", "2*x + 2*y - 2")


unimodular = st.sampled_from([((1, 0), (0, 1)), ((1, 1), (0, 1)), ((2, 1), (1, 1)),
                              ((0, 1), (1, 0)), ((1, -1), (0, 1)), ((3, 2), (1, 1))])


@given(unimodular, st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(0, 10**6))
def test_affine_unimodular_invariance(m, shift, seed):
    rng = random.Random(seed)
    vars = ("x", "y")
    forms = []
    while len(forms) < 4:
        coeffs = (rng.randint(-3, 3), rng.randint(-3, 3))
        if coeffs != (0, 0):
            forms.append(MultiPoly.linear(vars, coeffs, rng.randint(-3, 3)))
    try:
        a = Arrangement(vars, tuple(forms))
    except DegenerateArrangementError:
        return
    x, y = (MultiPoly.variable(vars, v) for v in vars)
    bindings = {
        "x": x * m[0][0] + y * m[0][1] + shift[0],
        "y": x * m[1][0] + y * m[1][1] + shift[1],
    }
    b = Arrangement(vars, tuple(f.substitute(bindings, vars) for f in forms))
    assert euler_characteristic(a) == euler_characteristic(b)
