#! /usr/bin/env python3

"""Matroids given by an independence family, Tutte polynomials and
f/h-polynomials of simplicial complexes.

The ground set is {1..N}. Subsets are sorted tuples, enumerated by
increasing cardinality and lexicographically within a cardinality.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from collections import Counter
from itertools import combinations
from math import comb
from pathlib import Path
import sys

import sympy
from sympy import Poly, ZZ

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.matroids"

from ..common import NotAMatroid, EmptyComplex, format_polynomial
from ..lattice.exact_linalg import IntMatrix, integer_rank

x, y, t = sympy.symbols('x y t')

def subsets(elements) -> list:
    """All subsets of elements, by cardinality then lexicographically.
    """
    elements = sorted(elements)
    return [ S
             for k in range(len(elements) + 1)
             for S in combinations(elements, k) ]

class Matroid:
    """A matroid on {1..N}, stored by its complete family of independent sets.
    """

    def __init__(self, ground_size: int, independent_sets, validate: bool = True):
        self.ground_size = ground_size
        family = sorted(set(tuple(sorted(S)) for S in independent_sets),
                        key=lambda S: (len(S), S))
        self._independent = frozenset(family)
        self.independent_sets = tuple(family)
        if validate:
            self._validate()
        self.rank = self.rank_of(self.ground_set)

    @property
    def ground_set(self) -> tuple:
        return tuple(range(1, self.ground_size + 1))

    def _validate(self):
        if () not in self._independent:
            raise NotAMatroid("The empty set must be independent")
        for S in self.independent_sets:
            if any(e < 1 or e > self.ground_size for e in S):
                raise NotAMatroid(f"Set {list(S)} is not contained in the ground set 1..{self.ground_size}")
            for e in S:
                if tuple(a for a in S if a != e) not in self._independent:
                    raise NotAMatroid(f"Family is not closed under subsets: {list(S)} without {e}")
        by_size = {}
        for S in self.independent_sets:
            by_size.setdefault(len(S), []).append(S)
        # Exchange between consecutive sizes suffices for a downward closed family
        for k, smaller in by_size.items():
            for A1 in smaller:
                for A2 in by_size.get(k + 1, []):
                    if not any(tuple(sorted(A1 + (e,))) in self._independent
                               for e in A2 if e not in A1):
                        raise NotAMatroid(f"Exchange axiom fails for {list(A1)} and {list(A2)}")

    def is_independent(self, S) -> bool:
        return tuple(sorted(S)) in self._independent

    def rank_of(self, A) -> int:
        # Greedy extension is exact for matroids
        basis = ()
        for e in sorted(A):
            candidate = basis + (e,)
            if candidate in self._independent:
                basis = candidate
        return len(basis)

    def bases(self) -> list:
        return [ S for S in self.independent_sets if len(S) == self.rank ]

    def __eq__(self, other):
        return (isinstance(other, Matroid)
                and self.ground_size == other.ground_size
                and self._independent == other._independent)

    def __hash__(self):
        return hash((self.ground_size, self._independent))

    def __repr__(self):
        return f"Matroid({self.ground_size}, rank={self.rank}, independent={[list(S) for S in self.independent_sets]})"

def matroid_from_columns(X) -> Matroid:
    """Matroid of ℚ-independent column subsets.

    X is an IntMatrix, or any object with a `free_matrix` (such as a
    Representation over ℤ^r ⊕ torsion), whose torsion coordinates are
    then ignored.
    """
    if not isinstance(X, IntMatrix):
        X = X.free_matrix
    N = X.cols
    family = [ () ]
    level = [ () ]
    # Independent sets are downward closed, so grow them one element at a time
    while level:
        next_level = []
        current = set(level)
        for S in level:
            start = S[-1] + 1 if S else 1
            for e in range(start, N + 1):
                candidate = S + (e,)
                if not all(candidate[:i] + candidate[i + 1:] in current for i in range(len(S))):
                    continue
                if integer_rank(X.select_columns([ i - 1 for i in candidate ])) == len(candidate):
                    next_level.append(candidate)
        family.extend(next_level)
        level = next_level
    logger.debug(f"Matroid of {X.rows}x{N} matrix has {len(family)} independent sets")
    return Matroid(N, family, validate=False)

def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, [ S for S in subsets(range(1, n + 1)) if len(S) <= r ], validate=False)

def rank(M: Matroid, A) -> int:
    return M.rank_of(A)

def is_loop(M: Matroid, e: int) -> bool:
    return not M.is_independent((e,))

def is_coloop(M: Matroid, e: int) -> bool:
    return M.rank_of([ a for a in M.ground_set if a != e ]) < M.rank

def _relabel(S, e):
    return tuple(a if a < e else a - 1 for a in S)

def deletion(M: Matroid, e: int) -> Matroid:
    """M with e removed; elements after e are shifted down by one.
    """
    return Matroid(M.ground_size - 1,
                   [ _relabel(S, e) for S in M.independent_sets if e not in S ],
                   validate=False)

def contraction(M: Matroid, e: int) -> Matroid:
    """M/e, labelled like deletion(M, e).
    """
    if is_loop(M, e):
        return deletion(M, e)
    return Matroid(M.ground_size - 1,
                   [ _relabel(tuple(a for a in S if a != e), e)
                     for S in M.independent_sets if e in S ],
                   validate=False)

def tutte(M: Matroid) -> Poly:
    """Σ_A (x-1)^(r-rk A) (y-1)^(|A|-rk A) over all subsets A of the ground set.
    """
    counts = Counter()
    for A in subsets(M.ground_set):
        rk = M.rank_of(A)
        counts[(M.rank - rk, len(A) - rk)] += 1
    expression = sum((c * (x - 1)**i * (y - 1)**j for (i, j), c in counts.items()), sympy.Integer(0))
    return Poly(expression, x, y, domain=ZZ)

def _faces(complex_or_matroid) -> list:
    if isinstance(complex_or_matroid, Matroid):
        return list(complex_or_matroid.independent_sets)
    return [ tuple(sorted(S)) for S in complex_or_matroid ]

def f_polynomial(faces) -> Poly:
    """f(t) = Σ_i f_i t^(r-i), f_i the number of faces of size i.
    """
    faces = _faces(faces)
    if not faces:
        raise EmptyComplex("The empty complex has no f-polynomial")
    r = max(len(S) for S in faces)
    counts = Counter(len(S) for S in faces)
    return Poly(sum((c * t**(r - i) for i, c in counts.items()), sympy.Integer(0)), t, domain=ZZ)

def h_polynomial(faces) -> Poly:
    return Poly(f_polynomial(faces).as_expr().subs(t, t - 1), t, domain=ZZ)

def coefficient_vector(poly: Poly, r: int) -> list:
    """[c_0, …, c_r] where c_i is the coefficient of t^(r-i).
    """
    return [ int(poly.coeff_monomial(t**(r - i))) for i in range(r + 1) ]

def f_vector(faces) -> list:
    faces = _faces(faces)
    f = f_polynomial(faces)
    return coefficient_vector(f, max(len(S) for S in faces))

def h_vector(faces) -> list:
    faces = _faces(faces)
    h = h_polynomial(faces)
    return coefficient_vector(h, max(len(S) for S in faces))

def hilbert_numerator_from_tutte(M: Matroid) -> list:
    """Coefficients h_0..h_r of t^r·T(1/t, 1), the numerator of the
    Hilbert series of the face ring.
    """
    at_one = Poly(tutte(M).as_expr().subs(y, 1), x, domain=ZZ)
    return [ int(at_one.coeff_monomial(x**(M.rank - j))) for j in range(M.rank + 1) ]

def face_ring_dimension(faces, d: int) -> int:
    """Dimension of the degree d part of the face ring K[Δ].

    Monomials survive iff their support is a face, and there are
    C(d-1, k-1) monomials of degree d supported exactly on a k-face.
    """
    faces = _faces(faces)
    if d == 0:
        return 1
    return sum(comb(d - 1, len(S) - 1) for S in faces if S)

def classical_sr_generators(faces, vertices=None) -> list:
    """Minimal non-faces, the squarefree monomial generators of I_Δ.

    For a matroid the vertices are the whole ground set, so loops
    appear as generators of degree one.
    """
    if vertices is None and isinstance(faces, Matroid):
        vertices = faces.ground_set
    faces = _faces(faces)
    face_set = set(faces)
    if vertices is None:
        vertices = sorted(set(e for S in faces for e in S))
    generators = set()
    for S in face_set:
        for e in vertices:
            if e in S:
                continue
            candidate = tuple(sorted(S + (e,)))
            if candidate in face_set:
                continue
            if all(candidate[:i] + candidate[i + 1:] in face_set for i in range(len(candidate))):
                generators.add(candidate)
    return sorted(generators, key=lambda S: (len(S), S))

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Tutte and f/h-polynomials of the matroid of an input file.")
    parser.add_argument("source", type=str, nargs='?',
                        help="Input file (JSON or YAML)")
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

    from ..parsers.input_spec import load_input
    M = load_input(Path(args.source)).matroid()
    print(f"Tutte: {format_polynomial(tutte(M))}")
    print(f"f: {format_polynomial(f_polynomial(M))}")
    print(f"h: {format_polynomial(h_polynomial(M))}")
