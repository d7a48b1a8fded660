import random

import pytest
import sympy

from arisr.lattice.exact_linalg import (IntMatrix, xgcd, smith_normal_form, hermite_normal_form,
                                        integer_kernel, integer_rank, determinant, saturate,
                                        lattice_index, solve_in_lattice, lattice_contains,
                                        parallelepiped_points)

from conftest import ROTATED_SQUARE, random_matrix

def test_intmatrix_shapes():
    A = IntMatrix.from_rows([ [1, 2, 3], [4, 5, 6] ])
    assert A.shape == (2, 3)
    assert A.transpose().to_rows() == [ [1, 4], [2, 5], [3, 6] ]
    assert A.column(1) == (2, 5)
    assert A.select_columns([2, 0]).to_rows() == [ [3, 1], [6, 4] ]
    assert A @ (1, 0, -1) == (-2, -2)
    assert IntMatrix.zeros(0, 3).shape == (0, 3)
    with pytest.raises(AttributeError):
        A.rows = 3

def test_xgcd():
    for a, b in [ (12, 18), (-4, 6), (0, 5), (7, 0), (0, 0) ]:
        g, x, y = xgcd(a, b)
        assert g == sympy.gcd(a, b)
        assert x * a + y * b == g

def test_smith_example():
    snf = smith_normal_form(ROTATED_SQUARE)
    assert snf.diagonal() == [2, 4]
    assert snf.U @ ROTATED_SQUARE @ snf.V == snf.D
    assert snf.U @ snf.U_inverse == IntMatrix.identity(2)

def test_hermite_example():
    H = hermite_normal_form(ROTATED_SQUARE.transpose())
    assert H == IntMatrix.from_rows([ [2, 0], [2, 4] ])
    # Same lattice, other basis
    assert hermite_normal_form(IntMatrix.from_columns([ [2, 2], [-2, 2] ])) == H

def test_hermite_drops_dependent_columns():
    A = IntMatrix.from_columns([ [2, 4], [1, 2], [3, 6] ])
    assert hermite_normal_form(A) == IntMatrix.from_columns([ [1, 2] ])

def test_saturation_and_index():
    L = IntMatrix.from_columns([ [2, 2] ])
    assert saturate(L) == IntMatrix.from_columns([ [1, 1] ])
    assert lattice_index(L) == 2
    assert lattice_index(ROTATED_SQUARE) == 8

def test_solve_in_lattice():
    B = IntMatrix.from_columns([ [2, 2], [-2, 2] ])
    assert solve_in_lattice(B, (0, 4)) == (1, 1)
    assert solve_in_lattice(B, (1, 1)) is None
    assert not lattice_contains(B, (2, 0))
    assert lattice_contains(B, (4, 0))
    with pytest.raises(ValueError):
        solve_in_lattice(IntMatrix.from_columns([ [1, 1], [2, 2] ]), (1, 1))

def test_parallelepiped_example():
    # Columns of X, as in the drawing of the toric arrangement
    points = parallelepiped_points(IntMatrix.from_columns([ [2, 2], [-2, 2] ]))
    assert sorted(points) == sorted([ (0, 0), (-1, 1), (0, 1), (1, 1), (-1, 2), (0, 2), (1, 2), (0, 3) ])

def test_parallelepiped_non_square():
    # One generator in the plane: points on the open segment [0, (2, 4))
    assert parallelepiped_points(IntMatrix.from_columns([ [2, 4] ])) == [ (0, 0), (1, 2) ]
    assert parallelepiped_points(IntMatrix.zeros(2, 0)) == [ (0, 0) ]

def test_determinant():
    assert determinant(ROTATED_SQUARE) == 8
    assert determinant(IntMatrix.from_rows([ [0, 1], [1, 0] ])) == -1
    assert determinant(IntMatrix.zeros(0, 0)) == 1
    with pytest.raises(ValueError):
        determinant(IntMatrix.zeros(2, 3))

def test_random_normal_forms():
    rng = random.Random(20240601)
    for _ in range(200):
        A = random_matrix(rng, max_rank=4, max_size=5, bound=6)
        snf = smith_normal_form(A)
        assert snf.U @ A @ snf.V == snf.D
        assert abs(determinant(snf.U)) == 1
        assert abs(determinant(snf.V)) == 1
        assert snf.U_inverse @ snf.U == IntMatrix.identity(A.rows)
        diagonal = [ d for d in snf.diagonal() if d ]
        assert all(d > 0 for d in diagonal)
        assert all(b % a == 0 for a, b in zip(diagonal, diagonal[1:]))

        reference = sympy.Matrix(A.to_rows())
        assert integer_rank(A) == reference.rank() == len(diagonal)
        if A.rows == A.cols:
            assert determinant(A) == reference.det()

        K = integer_kernel(A)
        assert (A @ K).is_zero()
        assert K.cols == A.cols - integer_rank(A)

        H = hermite_normal_form(A)
        assert H.cols == integer_rank(A)
        for column in A.columns():
            assert solve_in_lattice(H, column) is not None

        S = saturate(A)
        assert lattice_index(S) == 1
        assert saturate(S) == S
        assert integer_rank(S) == integer_rank(A)
        if diagonal:
            product = 1
            for d in diagonal:
                product *= d
            assert lattice_index(A) == product

def test_random_parallelepipeds():
    rng = random.Random(7)
    checked = 0
    while checked < 50:
        B = random_matrix(rng, max_rank=3, max_size=3, bound=3)
        if integer_rank(B) != B.cols:
            continue
        points = parallelepiped_points(B)
        assert len(set(points)) == len(points)
        assert len(points) == lattice_index(B)
        if B.rows == B.cols:
            assert len(points) == abs(determinant(B))
        # Distinct points are distinct modulo the generated lattice
        H = hermite_normal_form(B)
        for p in points:
            for q in points:
                if p != q:
                    assert solve_in_lattice(H, tuple(a - b for a, b in zip(p, q))) is None
        checked += 1
