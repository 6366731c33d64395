from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from oracles import rank_mod
from reedy_lab.linalg import (QQ, Field, Mat, NoSolution, Subspace, kernel, quotient, rank, rref,
                              solve, solve_rows)


F2 = Field(2)
F3 = Field(3)


def test_field_parse_and_tags():
    assert Field.parse("Q") == QQ
    assert Field.parse("Fp:5") == Field(5)
    assert Field(7).tag == "Fp:7"
    with pytest.raises(ValueError):
        Field(4)
    with pytest.raises(ValueError):
        Field.parse("R")


def test_prime_field_arithmetic():
    assert F3(Fraction(1, 2)) == 2
    assert F3.inv(2) == 2
    assert not F3.invertible(6)
    assert QQ.invertible(6)


def test_rref_small_example():
    m = Mat.from_rows(QQ, [[1, 2, 3], [2, 4, 7], [1, 2, 4]])
    R, piv, rk = rref(m)
    assert rk == 2
    assert piv == [0, 2]
    assert R == Mat.from_rows(QQ, [[1, 2, 0], [0, 0, 1], [0, 0, 0]])


def test_kernel_of_rank_one_matrix():
    m = Mat.from_rows(QQ, [[1, 1, 1]])
    ker = kernel(m)
    assert len(ker) == 2
    for v in ker:
        assert m.apply(v) == [0]


def test_solve_returns_particular_and_kernel():
    m = Mat.from_rows(QQ, [[1, 1], [1, -1]])
    sol = solve(m, Mat.from_rows(QQ, [[2], [0]]))
    assert sol.particular == Mat.from_rows(QQ, [[1], [1]])
    assert sol.kernel == []


def test_solve_inconsistent_raises():
    with pytest.raises(NoSolution):
        solve_rows(QQ, 2, [[1, 1], [1, 1]], [0, 1])


def test_solve_over_f2():
    sol = solve_rows(F2, 3, [[1, 1, 0], [0, 1, 1]], [1, 0])
    x = sol.particular
    assert (x[0] + x[1]) % 2 == 1 and (x[1] + x[2]) % 2 == 0
    assert len(sol.kernel) == 1


def test_subspace_sum_intersection_equality():
    a = Subspace(QQ, 3, [[1, 0, 0], [0, 1, 0]])
    b = Subspace(QQ, 3, [[0, 1, 0], [0, 0, 1]])
    assert (a + b).dim == 3
    meet = a & b
    assert meet.dim == 1 and meet.contains([0, 5, 0])
    assert Subspace(QQ, 3, [[2, 0, 0], [1, 1, 0]]) == a
    assert meet.issubset(a) and not a.issubset(b)


def test_quotient_projection():
    sub = Subspace(QQ, 3, [[1, 1, 0]])
    q = quotient(3, sub)
    assert q.dim == 2
    assert q.project([1, 1, 0]) == [0, 0]
    P = q.projection_matrix()
    assert P.shape == (2, 3)
    assert rank(P) == 2
    for i in range(q.dim):
        assert q.project(q.section(i)) == [1 if j == i else 0 for j in range(q.dim)]


def test_coordinates_round_trip():
    s = Subspace(QQ, 3, [[1, 2, 0], [0, 1, 1]])
    v = [2, 5, 1]
    c = s.coordinates(v)
    basis = s.basis()
    recon = [sum(ci * b[k] for ci, b in zip(c, basis)) for k in range(3)]
    assert recon == v


small_matrix = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(small_matrix)
def test_rank_matches_reference_over_q(rows):
    assert rank(Mat.from_rows(QQ, rows)) == rank_mod(rows, None)


@given(small_matrix, st.sampled_from([2, 3, 5]))
def test_rank_matches_reference_over_fp(rows, p):
    assert rank(Mat.from_rows(Field(p), rows)) == rank_mod(rows, p)


@given(small_matrix)
def test_rank_nullity(rows):
    m = Mat.from_rows(QQ, rows)
    assert rank(m) + len(kernel(m)) == m.cols


@given(small_matrix, small_matrix)
def test_sum_and_intersection_dimensions(a, b):
    n = min(len(a[0]), len(b[0]))
    A = Subspace(QQ, n, [r[:n] for r in a])
    B = Subspace(QQ, n, [r[:n] for r in b])
    assert (A + B).dim + (A & B).dim == A.dim + B.dim


@given(small_matrix)
def test_transpose_preserves_rank(rows):
    m = Mat.from_rows(F3, rows)
    assert rank(m) == rank(m.T)
