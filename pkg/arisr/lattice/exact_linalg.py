#! /usr/bin/env python3

"""Exact integer matrices: Smith and Hermite normal forms, rank,
saturation and lattice membership.

All arithmetic uses Python integers, so no entry can overflow and no
floating point value is ever produced.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from itertools import product
import json
from pathlib import Path
import sys
from typing import NamedTuple, Optional

import sympy

class IntMatrix:
    """Dense immutable matrix of Python integers, stored row-major.

    Empty matrices (0 rows or 0 columns) are legal.
    """
    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries=()):
        entries = tuple(int(e) for e in entries)
        if len(entries) != rows * cols:
            raise ValueError(f"Expected {rows * cols} entries, got {len(entries)}")
        object.__setattr__(self, 'rows', rows)
        object.__setattr__(self, 'cols', cols)
        object.__setattr__(self, 'entries', entries)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows, cols: int = None) -> "IntMatrix":
        rows = [ list(r) for r in rows ]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        if any(len(r) != cols for r in rows):
            raise ValueError("Rows have different lengths")
        return cls(len(rows), cols, [ e for r in rows for e in r ])

    @classmethod
    def from_columns(cls, columns, rows: int = None) -> "IntMatrix":
        columns = [ list(c) for c in columns ]
        if rows is None:
            rows = len(columns[0]) if columns else 0
        if any(len(c) != rows for c in columns):
            raise ValueError("Columns have different lengths")
        return cls(rows, len(columns), [ columns[j][i]
                                         for i in range(rows)
                                         for j in range(len(columns)) ])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [ int(i == j) for i in range(n) for j in range(n) ])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    def __getitem__(self, index):
        i, j = index
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list:
        return [ list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows) ]

    def column(self, j: int) -> tuple:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def columns(self) -> list:
        return [ self.column(j) for j in range(self.cols) ]

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(self.columns(), cols=self.rows)

    def select_columns(self, indices) -> "IntMatrix":
        return IntMatrix.from_columns([ self.column(j) for j in indices ], rows=self.rows)

    def select_rows(self, indices) -> "IntMatrix":
        rows = self.to_rows()
        return IntMatrix.from_rows([ rows[i] for i in indices ], cols=self.cols)

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_columns(self.columns() + other.columns(), rows=self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"Shape mismatch {self.shape} @ {other.shape}")
            return IntMatrix(self.rows, other.cols,
                             [ sum(self[i, k] * other[k, j] for k in range(self.cols))
                               for i in range(self.rows)
                               for j in range(other.cols) ])
        # Plain vector
        vector = list(other)
        if len(vector) != self.cols:
            raise ValueError(f"Shape mismatch {self.shape} @ vector of length {len(vector)}")
        return tuple(sum(self[i, k] * vector[k] for k in range(self.cols)) for i in range(self.rows))

    @property
    def shape(self) -> tuple:
        return (self.rows, self.cols)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __eq__(self, other):
        return (isinstance(other, IntMatrix)
                and self.shape == other.shape
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"

class SnfDecomposition(NamedTuple):
    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    U_inverse: IntMatrix = None

    def diagonal(self) -> list:
        return [ self.D[i, i] for i in range(min(self.D.rows, self.D.cols)) ]

def xgcd(a: int, b: int) -> tuple:
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0.
    """
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y

def _identity_lists(n: int) -> list:
    return [ [ int(i == j) for j in range(n) ] for i in range(n) ]

def _smith(A: IntMatrix) -> tuple:
    """Elimination with pivoting on the smallest nonzero entry.

    Return (U, D, V, U_inverse) as lists of rows.
    """
    m, n = A.shape
    M = A.to_rows()
    U = _identity_lists(m)
    U_inv = _identity_lists(m)
    V = _identity_lists(n)

    def swap_rows(i, k):
        if i == k:
            return
        M[i], M[k] = M[k], M[i]
        U[i], U[k] = U[k], U[i]
        for row in U_inv:
            row[i], row[k] = row[k], row[i]

    def swap_cols(j, k):
        if j == k:
            return
        for row in M:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    def add_row(i, k, c):
        # row_i += c * row_k
        M[i] = [ a + c * b for a, b in zip(M[i], M[k]) ]
        U[i] = [ a + c * b for a, b in zip(U[i], U[k]) ]
        for row in U_inv:
            row[k] -= c * row[i]

    def add_col(j, k, c):
        # col_j += c * col_k
        for row in M:
            row[j] += c * row[k]
        for row in V:
            row[j] += c * row[k]

    def negate_row(i):
        M[i] = [ -a for a in M[i] ]
        U[i] = [ -a for a in U[i] ]
        for row in U_inv:
            row[i] = -row[i]

    for t in range(min(m, n)):
        candidates = [ (abs(M[i][j]), i, j)
                       for i in range(t, m)
                       for j in range(t, n)
                       if M[i][j] ]
        if not candidates:
            break
        _, i, j = min(candidates)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if M[i][t]:
                    add_row(i, t, -(M[i][t] // M[t][t]))
                    changed = changed or M[i][t] != 0
            for j in range(t + 1, n):
                if M[t][j]:
                    add_col(j, t, -(M[t][j] // M[t][t]))
                    changed = changed or M[t][j] != 0
            if changed:
                # Bring the smallest remainder to the pivot position
                candidates = ([ (abs(M[i][t]), i, t) for i in range(t, m) if M[i][t] ]
                              + [ (abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j] ])
                _, i, j = min(candidates)
                swap_rows(t, i)
                swap_cols(t, j)
                continue
            # The pivot must divide the whole remaining block
            bad = next(( i
                         for i in range(t + 1, m)
                         for j in range(t + 1, n)
                         if M[i][j] % M[t][t] ), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if M[t][t] < 0:
            negate_row(t)
    return U, M, V, U_inv

def smith_normal_form(A: IntMatrix) -> SnfDecomposition:
    """Return U, D, V with U @ A @ V == D.

    U and V are unimodular, D is diagonal with nonnegative entries
    where each nonzero diagonal entry divides the next one.
    """
    U, D, V, U_inv = _smith(A)
    result = SnfDecomposition(IntMatrix.from_rows(U, cols=A.rows),
                              IntMatrix.from_rows(D, cols=A.cols),
                              IntMatrix.from_rows(V, cols=A.cols),
                              IntMatrix.from_rows(U_inv, cols=A.rows))
    assert result.U @ A @ result.V == result.D
    return result

def _column_echelon(A: IntMatrix) -> tuple:
    """Column-style Hermite reduction H = A @ T.

    Return (H, T, pivot_rows) as lists of rows, where the first
    len(pivot_rows) columns of H are the canonical basis and the
    remaining columns are zero.
    """
    m, n = A.shape
    M = A.to_rows()
    T = _identity_lists(n)

    def combine(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for rows in (M, T):
            for row in rows:
                row[j], row[k] = a * row[j] + b * row[k], c * row[j] + d * row[k]

    pivot_rows = []
    c = 0
    for i in range(m):
        if c == n:
            break
        for j in range(c + 1, n):
            if M[i][j]:
                a, b = M[i][c], M[i][j]
                g, x, y = xgcd(a, b)
                combine(c, j, x, y, -b // g, a // g)
        if M[i][c] == 0:
            continue
        if M[i][c] < 0:
            combine(c, c, -1, 0, -1, 0)
        p = M[i][c]
        for j in range(c):
            q = M[i][j] // p
            if q:
                combine(j, c, 1, -q, 0, 1)
        pivot_rows.append(i)
        c += 1
    return M, T, pivot_rows

def hermite_normal_form(A: IntMatrix) -> IntMatrix:
    """Canonical basis of the column lattice of A.

    The result is lower triangular in echelon form, with positive
    pivots and entries left of each pivot reduced into [0, pivot).
    Only the nonzero columns are returned, so two matrices span the
    same lattice iff their Hermite normal forms are equal.
    """
    H, _, pivot_rows = _column_echelon(A)
    rank = len(pivot_rows)
    return IntMatrix.from_rows([ row[:rank] for row in H ], cols=rank)

def integer_kernel(A: IntMatrix) -> IntMatrix:
    """Basis (as columns) of the lattice {x : A @ x == 0}.
    """
    _, T, pivot_rows = _column_echelon(A)
    rank = len(pivot_rows)
    return IntMatrix.from_rows([ row[rank:] for row in T ], cols=A.cols - rank)

def integer_rank(A: IntMatrix) -> int:
    """Rank over the rationals, by fraction-free (Bareiss) elimination.
    """
    M = A.to_rows()
    m, n = A.shape
    rank = 0
    previous = 1
    for j in range(n):
        pivot = next((i for i in range(rank, m) if M[i][j]), None)
        if pivot is None:
            continue
        M[rank], M[pivot] = M[pivot], M[rank]
        p = M[rank][j]
        for i in range(rank + 1, m):
            M[i] = [ (p * M[i][k] - M[i][j] * M[rank][k]) // previous for k in range(n) ]
        previous = p
        rank += 1
        if rank == m:
            break
    return rank

def determinant(A: IntMatrix) -> int:
    """Exact determinant of a square matrix (Bareiss elimination).
    """
    if A.rows != A.cols:
        raise ValueError(f"Determinant of non-square matrix {A.shape}")
    M = A.to_rows()
    n = A.rows
    sign = 1
    previous = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if M[i][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            M[k], M[pivot] = M[pivot], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[k][k] * M[i][j] - M[i][k] * M[k][j]) // previous
        previous = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1

def saturate(L: IntMatrix) -> IntMatrix:
    """Basis of (real span of the columns of L) ∩ ℤ^n, in Hermite normal form.
    """
    _, D, _, U_inv = _smith(L)
    rank = sum(1 for t in range(min(L.shape)) if D[t][t])
    return hermite_normal_form(IntMatrix.from_rows([ row[:rank] for row in U_inv ], cols=rank))

def lattice_index(L: IntMatrix) -> int:
    """Index of the column lattice of L in its saturation.
    """
    index = 1
    for d in smith_normal_form(L).diagonal():
        if d:
            index *= d
    return index

def solve_in_lattice(B: IntMatrix, v) -> Optional[tuple]:
    """Integer coordinates x with B @ x == v, or None if v is not in the lattice.

    The columns of B must be linearly independent.
    """
    v = list(v)
    H, T, pivot_rows = _column_echelon(B)
    if len(pivot_rows) != B.cols:
        raise ValueError("Lattice basis columns are not independent")
    y = []
    for c, p in enumerate(pivot_rows):
        residual = v[p] - sum(H[p][k] * y[k] for k in range(c))
        if residual % H[p][c]:
            return None
        y.append(residual // H[p][c])
    if any(sum(H[i][k] * y[k] for k in range(len(y))) != v[i] for i in range(B.rows)):
        return None
    return tuple(sum(T[i][k] * y[k] for k in range(len(y))) for i in range(B.cols))

def lattice_contains(B: IntMatrix, v) -> bool:
    basis = hermite_normal_form(B)
    return solve_in_lattice(basis, v) is not None

def parallelepiped_points(B: IntMatrix) -> list:
    """Lattice points Σ λ_i b_i with λ_i ∈ [0, 1), for independent columns b_i of B.

    Points are sorted lexicographically.
    """
    k = B.cols
    if k == 0:
        return [ tuple([0] * B.rows) ]
    _, _, pivot_rows = _column_echelon(B)
    if len(pivot_rows) != k:
        raise ValueError("Parallelepiped generators are not independent")
    square = sympy.Matrix(B.select_rows(pivot_rows).to_rows())
    det = int(square.det())
    adjugate = IntMatrix.from_rows(square.adjugate().tolist(), cols=k)
    sign = 1 if det > 0 else -1
    ranges = [ range(sum(min(0, e) for e in row), sum(max(0, e) for e in row) + 1)
               for row in B.to_rows() ]
    points = []
    for p in product(*ranges):
        # det * λ, computed from the nonsingular square block
        scaled = adjugate @ [ p[i] for i in pivot_rows ]
        if not all(0 <= sign * s < abs(det) for s in scaled):
            continue
        if B @ scaled != tuple(det * e for e in p):
            continue
        points.append(tuple(p))
    return points

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Normal forms of an integer matrix given as JSON rows.")
    parser.add_argument("source", type=str, nargs='?',
                        help="JSON file containing a list of rows")
    parser.add_argument("--debug", dest="debug", action="store_true",
                        default=False,
                        help="Display debug messages")
    args = parser.parse_args()
    if args.source is None:
        parser.print_help()
        sys.exit(1)
    loglevel = logging.INFO
    if args.debug:
        loglevel = logging.DEBUG
    logging.basicConfig(level=loglevel)

    A = IntMatrix.from_rows(json.loads(Path(args.source).read_text()))
    snf = smith_normal_form(A)
    json.dump({ "rank": integer_rank(A),
                "smith_diagonal": snf.diagonal(),
                "hermite": hermite_normal_form(A).to_rows(),
                "saturation": saturate(A).to_rows() },
              sys.stdout, indent=2)
