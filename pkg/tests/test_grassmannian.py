"""Pluecker coordinates, positivity and the amplituhedron map."""

import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from posgeom.errors import DimensionMismatchError, InputError, NotPositiveError, RankDeficientError
from posgeom.grassmannian import (
    amplituhedron_map, check_plucker_relations, is_nonnegative, matrix_from_json, plucker,
    plucker_relations, positivity_check, random_totally_positive, vandermonde,
)

EXAMPLE = [[1, 0, -2, -6], [0, 1, 1, 3]]

small = st.integers(-4, 4)


def matrices(k, n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=k, max_size=k)


def test_example_coordinates_and_labels():
    p = plucker(EXAMPLE)
    assert p.to_json()["pluckers"] == {"p12": "1", "p13": "1", "p14": "3", "p23": "2",
                                       "p24": "6", "p34": "0"}
    assert is_nonnegative(p)


def test_mixed_signs_are_not_nonnegative():
    p = plucker([[1, 0, 0], [0, -1, 1]])
    assert (p[(0, 1)], p[(0, 2)]) == (-1, 1)
    assert not is_nonnegative(p)


def test_relation_count():
    assert len(plucker_relations(4, 2)) == 1
    assert len(plucker_relations(5, 2)) == 5
    # choose S of size k-2, then four of the remaining n-k+2 indices
    assert len(plucker_relations(6, 3)) == 6 * 5


def test_rank_deficient_input():
    with pytest.raises(RankDeficientError):
        plucker([[1, 2, 3], [2, 4, 6]])


@given(matrices(2, 5), matrices(2, 2))
def test_gl_k_rescales_coordinates(M, g):
    if sympy.Matrix(M).rank() < 2:
        return
    det = Fraction(g[0][0] * g[1][1] - g[0][1] * g[1][0])
    if not det:
        return
    gm = [[sum(g[i][t] * M[t][j] for t in range(2)) for j in range(5)] for i in range(2)]
    p, q = plucker(M), plucker(gm)
    assert all(q[s] == det * p[s] for s in p.pluckers)
    assert check_plucker_relations(p) and check_plucker_relations(q)
    assert is_nonnegative(p) == is_nonnegative(q)


@given(matrices(3, 6))
def test_minors_match_sympy(M):
    if sympy.Matrix(M).rank() < 3:
        return
    p = plucker(M)
    for cols in combinations(range(6), 3):
        assert p[cols] == sympy.Matrix(M).extract([0, 1, 2], list(cols)).det()
    assert check_plucker_relations(p)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_random_totally_positive(n):
    m = random_totally_positive(n, random.Random(n))
    for size in range(1, n + 1):
        for rows in combinations(range(n), size):
            for cols in combinations(range(n), size):
                assert sympy.Matrix(m).extract(list(rows), list(cols)).det() > 0


def test_positivity_examples():
    assert positivity_check(vandermonde([1, 2, 3, 4], 3))
    assert not positivity_check(vandermonde([2, 1, 3, 4], 3))
    assert not positivity_check([[1, 1], [0, 0], [1, 2]])
    assert not positivity_check([[1, 0], [0, 1], [0, 0]])
    with pytest.raises(DimensionMismatchError):
        positivity_check([[1, 2, 3]])


def test_amplituhedron_map():
    V = plucker([[1, 1, 0, 0], [0, 0, 1, 1]])
    Z = vandermonde([1, 2, 3, 4], 3)
    image = amplituhedron_map(V, Z)
    assert (image.k, image.n) == (2, 3)
    assert check_plucker_relations(image)
    with pytest.raises(NotPositiveError):
        amplituhedron_map(V, vandermonde([2, 1, 3, 4], 3))
    with pytest.raises(NotPositiveError):
        amplituhedron_map(plucker([[1, 0, 0, 1], [0, 1, 1, 0]]), Z)
    with pytest.raises(DimensionMismatchError):
        amplituhedron_map(V, vandermonde([1, 2, 3], 3))


def test_matrix_json_errors():
    assert matrix_from_json([["1/2", 3]]) == [[Fraction(1, 2), Fraction(3)]]
    with pytest.raises(InputError):
        matrix_from_json([[0.5, 1]])
    with pytest.raises(InputError):
        matrix_from_json([[1, 2], [3]])


def test_map_of_a_point_in_projective_space():
    Z = vandermonde([1, 2, 3], 2)
    image = amplituhedron_map(plucker([[1, 1, 1]]), Z)
    assert image.matrix == ((Fraction(3), Fraction(6)),)
    assert image.vector() == (3, 6)


@pytest.mark.parametrize("seed", range(5))
def test_map_of_the_example_point(seed):
    Z = random_totally_positive(4, random.Random(seed))
    image = amplituhedron_map(plucker(EXAMPLE), Z)
    assert (image.k, image.n) == (2, 4)
    assert check_plucker_relations(image)
    VZ = sympy.Matrix(EXAMPLE) * sympy.Matrix(Z)
    for cols in combinations(range(4), 2):
        assert image[cols] == VZ.extract([0, 1], list(cols)).det()
