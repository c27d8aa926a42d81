from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from latval.exact import (Polynomial, UnimodularMap, VectorPolynomial, as_exact, cross, det,
                          fmt, identity, inverse_transpose, lagrange_interpolate, matmul,
                          matvec, nullspace, parse, primitive, random_unimodular, rank,
                          rng_stream, rref, solve_linear)
from oracles import cofactor_det, gauss_solve, leibniz_det, vandermonde_fit

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
int_matrices = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n),
                       min_size=n, max_size=n))


def test_scalars_never_float():
    assert as_exact(Fraction(4, 2)) == 2 and type(as_exact(Fraction(4, 2))) is int
    assert as_exact("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_exact(0.5)
    with pytest.raises(TypeError):
        as_exact(True)
    assert fmt(Fraction(-3, 4)) == "-3/4" and fmt(5) == "5"
    assert parse("-3/4") == Fraction(-3, 4)


@given(fractions, fractions, fractions)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert parse(fmt(a)) == a


def test_det_examples():
    assert det(identity(3)) == 1
    assert det([[0, 1], [1, 0]]) == -1
    with pytest.raises(ValueError):
        det([[1, 2, 3], [4, 5, 6]])


def test_det_random_4x4_against_cofactor(seed):
    rng = np.random.default_rng(seed)
    for _ in range(50):
        m = rng.integers(-3, 4, size=(4, 4)).tolist()
        assert det(m) == cofactor_det(m) == leibniz_det(m)


@given(int_matrices)
def test_det_matches_cofactor(m):
    assert det(m) == cofactor_det(m)


def test_det_rational():
    m = [[Fraction(1, 2), 1], [Fraction(1, 3), Fraction(2, 5)]]
    assert det(m) == cofactor_det(m) == Fraction(1, 5) - Fraction(1, 3)


def test_rank_and_nullspace():
    assert rank([[1, 2], [2, 4]]) == 1
    ns = nullspace([[1, 1, 1]], 3)
    assert len(ns) == 2
    for v in ns:
        assert sum(v) == 0 and v == primitive(v)
    rows, piv = rref([[2, 4], [1, 3]])
    assert piv == [0, 1] and rows == [[1, 0], [0, 1]]


def test_cross_is_orthogonal():
    z = cross([(1, 0, 0), (0, 1, 0)])
    assert z == (0, 0, 1)
    v = cross([(1, 2, 3, 4), (0, 1, 0, 2), (3, 0, 1, 1)])
    for row in [(1, 2, 3, 4), (0, 1, 0, 2), (3, 0, 1, 1)]:
        assert sum(a * b for a, b in zip(v, row)) == 0


def test_solve_linear_examples():
    assert solve_linear(identity(3), [1, Fraction(2, 3), -4]) == [1, Fraction(2, 3), -4]
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    with pytest.raises(ValueError):
        solve_linear([[1, 2, 3]], [1])


def test_solve_linear_random_3x3(seed):
    rng = np.random.default_rng(seed)
    done = 0
    while done < 30:
        a = rng.integers(-5, 6, size=(3, 3)).tolist()
        b = rng.integers(-5, 6, size=3).tolist()
        x = solve_linear(a, b)
        if det(a) == 0:
            assert x is None
            continue
        assert [sum(p * q for p, q in zip(row, x)) for row in a] == b
        assert x == gauss_solve(a, b)
        done += 1


def test_inverse_transpose_examples():
    assert inverse_transpose(UnimodularMap.identity(3)) == UnimodularMap.identity(3)
    phi = UnimodularMap.from_matrix([[1, 1], [0, 1]])
    assert inverse_transpose(phi).matrix == ((1, 0), (-1, 1))
    with pytest.raises(ValueError):
        UnimodularMap.from_matrix([[0, 1], [1, 0]])


def test_random_unimodular_contract():
    with pytest.raises(ValueError):
        random_unimodular(2, steps=0)
    with pytest.raises(ValueError):
        random_unimodular(1)
    one = random_unimodular(3, steps=1, seed=4)
    off = [(i, j) for i in range(3) for j in range(3) if i != j and one.matrix[i][j] != 0]
    assert det(one.matrix) == 1 and len(off) == 1
    assert all(one.matrix[i][i] == 1 for i in range(3))
    assert random_unimodular(3, 12, 99) == random_unimodular(3, 12, 99)
    assert random_unimodular(3, 12, 99) != random_unimodular(3, 12, 100)


@given(st.integers(2, 4), st.integers(1, 20), st.integers(0, 2 ** 63))
def test_unimodular_invariants(n, steps, seed):
    phi = random_unimodular(n, steps, seed)
    assert cofactor_det(phi.matrix) == 1
    assert matmul(phi.matrix, phi.inverse) == identity(n)
    assert inverse_transpose(inverse_transpose(phi)) == phi
    assert UnimodularMap.from_json(phi.to_json()) == phi
    x = tuple(range(1, n + 1))
    assert phi.inv()(phi(x)) == x


@given(st.integers(2, 4), st.integers(0, 2 ** 32), st.integers(0, 2 ** 32))
def test_inverse_transpose_of_product(n, s1, s2):
    phi, psi = random_unimodular(n, seed=s1), random_unimodular(n, seed=s2)
    assert inverse_transpose(phi @ psi) == inverse_transpose(phi) @ inverse_transpose(psi)
    v = tuple(range(n))
    assert matvec((phi @ psi).matrix, v) == phi(psi(v))


def test_rng_streams_independent_and_stable():
    a = rng_stream(7, 1, 2).integers(0, 10 ** 9, size=4).tolist()
    assert a == rng_stream(7, 1, 2).integers(0, 10 ** 9, size=4).tolist()
    assert a != rng_stream(7, 1, 3).integers(0, 10 ** 9, size=4).tolist()


def test_lagrange_examples():
    assert lagrange_interpolate([(0, 1), (1, 1), (2, 1)]) == Polynomial([1])
    assert lagrange_interpolate([(0, 1), (1, 2), (2, 5)]) == Polynomial([1, 0, 1])
    assert lagrange_interpolate([(k, (k + 1) ** 2) for k in range(3)]) == Polynomial([1, 2, 1])
    with pytest.raises(ValueError):
        lagrange_interpolate([(0, 1), (0, 2)])


@given(st.lists(fractions, min_size=1, max_size=6), st.integers(-5, 5))
def test_lagrange_exact_on_samples(values, shift):
    samples = [(k + shift, v) for k, v in enumerate(values)]
    p = lagrange_interpolate(samples)
    assert all(p(k) == v for k, v in samples)
    assert p.degree < len(samples)
    oracle = vandermonde_fit(samples)
    assert [p.coefficient(i) for i in range(len(samples))] == oracle


def test_polynomial_algebra():
    p, q = Polynomial([1, 1]), Polynomial([-1, 1])
    assert p * q == Polynomial([-1, 0, 1])
    assert (p + q) == Polynomial([0, 2])
    assert Polynomial([0, 0]).degree == -1
    assert Polynomial([1, 2, 0]).degree == 1
    vp = VectorPolynomial([p, q])
    assert vp(2) == (3, 1) and vp.coefficient(1) == (1, 1) and vp.degree == 1
