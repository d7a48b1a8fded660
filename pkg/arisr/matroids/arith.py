#! /usr/bin/env python3

"""Multiplicity functions, arithmetic Tutte polynomials and the
arithmetic matroid axioms.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from collections import Counter
from dataclasses import dataclass, field
from numbers import Integral
from pathlib import Path
import sys
from typing import NamedTuple

import sympy
from sympy import Poly, ZZ

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.matroids"

from ..common import InputError, PartialMultiplicity, format_polynomial
from ..lattice.exact_linalg import IntMatrix, saturate
from ..groups.abelian import quotient_group
from .matroid import Matroid, matroid_from_columns, subsets, x, y

class AmbientGroup:
    """ℤ^r ⊕ ℤ/q_1 ⊕ … ⊕ ℤ/q_n with q_1 | … | q_n.
    """

    def __init__(self, free_rank: int, torsion=()):
        torsion = tuple(int(q) for q in torsion)
        if free_rank < 0:
            raise InputError(f"Negative free rank {free_rank}")
        if any(q < 2 for q in torsion):
            raise InputError(f"Torsion orders must be at least 2, got {list(torsion)}")
        if any(b % a for a, b in zip(torsion, torsion[1:])):
            raise InputError(f"Torsion orders {list(torsion)} do not form a divisibility chain")
        self.free_rank = free_rank
        self.torsion = torsion

    @property
    def dimension(self) -> int:
        return self.free_rank + len(self.torsion)

    def reduce(self, vector) -> tuple:
        vector = tuple(int(v) for v in vector)
        if len(vector) != self.dimension:
            raise InputError(f"Vector {list(vector)} has {len(vector)} coordinates, expected {self.dimension}")
        return vector[:self.free_rank] + tuple(v % q for v, q in zip(vector[self.free_rank:], self.torsion))

    def torsion_order(self) -> int:
        order = 1
        for q in self.torsion:
            order *= q
        return order

    def torsion_relations(self) -> IntMatrix:
        """The lattice ker(ℤ^(r+n) → G), as columns.
        """
        n = len(self.torsion)
        return IntMatrix.from_columns([ [0] * self.free_rank + [ q if i == j else 0 for i in range(n) ]
                                        for j, q in enumerate(self.torsion) ],
                                      rows=self.dimension)

    def __eq__(self, other):
        return (isinstance(other, AmbientGroup)
                and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __repr__(self):
        return f"AmbientGroup({self.free_rank}, {list(self.torsion)})"

class Representation:
    """A list of elements x_1..x_N of an ambient group ℤ^r ⊕ G_t.

    Columns are given in ambient coordinates, torsion coordinates
    last, and are reduced modulo the torsion orders.
    """

    def __init__(self, ambient: AmbientGroup, columns):
        self.ambient = ambient
        self.columns = [ ambient.reduce(c) for c in columns ]

    @classmethod
    def from_matrix(cls, X: IntMatrix) -> "Representation":
        return cls(AmbientGroup(X.rows), X.columns())

    @property
    def ground_size(self) -> int:
        return len(self.columns)

    @property
    def matrix(self) -> IntMatrix:
        return IntMatrix.from_columns(self.columns, rows=self.ambient.dimension)

    @property
    def free_matrix(self) -> IntMatrix:
        """The projected matrix with torsion coordinates discarded.
        """
        return IntMatrix.from_columns([ c[:self.ambient.free_rank] for c in self.columns ],
                                      rows=self.ambient.free_rank)

    def is_torsion_free(self) -> bool:
        return not self.ambient.torsion

    def __repr__(self):
        return f"Representation({self.ambient!r}, {[list(c) for c in self.columns]})"

def _as_representation(X) -> Representation:
    if isinstance(X, Representation):
        return X
    return Representation.from_matrix(X)

def multiplicity_from_representation(X, A) -> int:
    """|G_A / ⟨A⟩|, with G_A the largest subgroup in which ⟨A⟩ has finite index.

    The computation lifts to ℤ^(r+n): with L the lifted columns of A
    together with the torsion relations, G_A/⟨A⟩ is isomorphic to
    saturate(L)/L.
    """
    X = _as_representation(X)
    lifted = X.matrix.select_columns([ e - 1 for e in sorted(A) ])
    lattice = lifted.hstack(X.ambient.torsion_relations())
    group, _ = quotient_group(saturate(lattice), lattice)
    return group.order

class Multiplicity:
    """A map from subsets of {1..N} to positive integers.

    It is total when defined on every subset, and partial when only
    defined on the independent sets of the matroid.
    """

    def __init__(self, matroid: Matroid, values: dict):
        for S, v in values.items():
            if isinstance(v, bool) or not isinstance(v, Integral):
                raise InputError(f"Multiplicity of {list(S)} must be an integer, got {v!r}")
        values = { tuple(sorted(S)): int(v) for S, v in values.items() }
        for S, v in values.items():
            if v < 1:
                raise InputError(f"Multiplicity of {list(S)} is {v}, must be at least 1")
        missing = [ S for S in matroid.independent_sets if S not in values ]
        if missing:
            raise PartialMultiplicity(f"Multiplicity is undefined on independent set {list(missing[0])}")
        self.matroid = matroid
        self.values = values
        self.total = all(S in values for S in subsets(matroid.ground_set))

    def __call__(self, S) -> int:
        S = tuple(sorted(S))
        try:
            return self.values[S]
        except KeyError:
            raise PartialMultiplicity(f"Multiplicity is undefined on dependent set {list(S)}")

    def as_list(self) -> list:
        return [ { "set": list(S), "m": self.values[S] }
                 for S in sorted(self.values, key=lambda S: (len(S), S)) ]

    def __eq__(self, other):
        return isinstance(other, Multiplicity) and self.values == other.values

    def __repr__(self):
        return f"Multiplicity({self.as_list()})"

def multiplicity_function(X) -> Multiplicity:
    """The total multiplicity function of a representation.
    """
    X = _as_representation(X)
    M = matroid_from_columns(X)
    return Multiplicity(M, { A: multiplicity_from_representation(X, A)
                             for A in subsets(M.ground_set) })

def arithmetic_tutte(M: Matroid, m: Multiplicity) -> Poly:
    """Σ_A m(A) (x-1)^(r-rk A) (y-1)^(|A|-rk A).
    """
    if not m.total:
        raise PartialMultiplicity("The bivariate arithmetic Tutte polynomial needs a total multiplicity")
    weights = Counter()
    for A in subsets(M.ground_set):
        rk = M.rank_of(A)
        weights[(M.rank - rk, len(A) - rk)] += m(A)
    expression = sum((c * (x - 1)**i * (y - 1)**j for (i, j), c in weights.items()), sympy.Integer(0))
    return Poly(expression, x, y, domain=ZZ)

def arithmetic_tutte_at_one(M: Matroid, m: Multiplicity) -> Poly:
    """The specialization y = 1, Σ over independent S of m(S) (x-1)^(r-|S|).

    Only independent sets contribute, so a partial multiplicity is enough.
    """
    expression = sum((m(S) * (x - 1)**(M.rank - len(S)) for S in M.independent_sets),
                     sympy.Integer(0))
    return Poly(expression, x, domain=ZZ)

class Molecule(NamedTuple):
    R: tuple
    S: tuple
    F: tuple
    T: tuple

def find_molecules(M: Matroid) -> list:
    """All molecules [R, S], sorted by (R, S).

    F is the set of e in S∖R raising the rank of R, T the rest; the
    rank condition is then checked on the whole interval.
    """
    molecules = []
    for S in subsets(M.ground_set):
        for R in subsets(S):
            rank_R = M.rank_of(R)
            rest = [ e for e in S if e not in R ]
            F = tuple(e for e in rest if M.rank_of(R + (e,)) == rank_R + 1)
            T = tuple(e for e in rest if e not in F)
            if all(M.rank_of(R + B) == rank_R + len(set(B) & set(F))
                   for B in subsets(rest)):
                molecules.append(Molecule(R, S, F, T))
    return sorted(molecules, key=lambda mol: ((len(mol.R), mol.R), (len(mol.S), mol.S)))

def rho(m: Multiplicity, molecule: Molecule) -> int:
    R, S, _, T = molecule
    rest = [ e for e in S if e not in R ]
    total = sum((-1)**(len(S) - len(R) - len(B)) * m(R + B) for B in subsets(rest))
    return (-1)**len(T) * total

class Violation(NamedTuple):
    axiom: str
    sets: tuple
    values: tuple

    def describe(self) -> str:
        sets = ", ".join("{" + ",".join(str(e) for e in S) + "}" for S in self.sets)
        return f"({self.axiom}) fails on {sets}: {list(self.values)}"

@dataclass
class AxiomReport:
    holds_P: bool = True
    holds_A1: bool = True
    holds_A2: bool = True
    violations: list = field(default_factory=list)

    @property
    def all_hold(self) -> bool:
        return self.holds_P and self.holds_A1 and self.holds_A2

    def add(self, violation: Violation):
        self.violations.append(violation)
        setattr(self, f"holds_{violation.axiom}", False)

    def as_dict(self) -> dict:
        return { "P": self.holds_P,
                 "A1": self.holds_A1,
                 "A2": self.holds_A2,
                 "violations": [ { "axiom": v.axiom,
                                   "sets": [ list(S) for S in v.sets ],
                                   "values": list(v.values) }
                                 for v in self.violations ] }

    def render(self) -> str:
        lines = [ f"(P): {'holds' if self.holds_P else 'violated'}",
                  f"(A1): {'holds' if self.holds_A1 else 'violated'}",
                  f"(A2): {'holds' if self.holds_A2 else 'violated'}" ]
        lines.extend(v.describe() for v in self.violations)
        return "\n".join(lines)

def check_axioms(M: Matroid, m: Multiplicity) -> AxiomReport:
    if not m.total:
        raise PartialMultiplicity("Checking (P), (A1) and (A2) needs a total multiplicity")
    report = AxiomReport()
    for A in subsets(M.ground_set):
        rank_A = M.rank_of(A)
        for e in M.ground_set:
            if e in A:
                continue
            B = tuple(sorted(A + (e,)))
            if M.rank_of(B) == rank_A:
                if m(A) % m(B):
                    report.add(Violation("A1", (B, A), (m(B), m(A))))
            elif m(B) % m(A):
                report.add(Violation("A1", (A, B), (m(A), m(B))))
    for molecule in find_molecules(M):
        value = rho(m, molecule)
        if value < 0:
            report.add(Violation("P", (molecule.R, molecule.S), (value,)))
        R, S, F, T = molecule
        left = m(R) * m(S)
        right = m(R + F) * m(R + T)
        if left != right:
            report.add(Violation("A2", (R, S), (left, right)))
    logger.debug(f"Axiom check: {len(report.violations)} violations")
    return report

def weak_violations(M: Matroid, m: Multiplicity) -> list:
    """Pairs (S, S ∪ {x}) of independent sets where m(S) does not divide m(S ∪ {x}).
    """
    violations = []
    for S in M.independent_sets:
        for e in M.ground_set:
            if e in S:
                continue
            B = tuple(sorted(S + (e,)))
            if M.is_independent(B) and m(B) % m(S):
                violations.append((S, B))
    return violations

def validate_weak(M: Matroid, m: Multiplicity) -> bool:
    return not weak_violations(M, m)

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Multiplicities, arithmetic Tutte polynomial and axioms of an input file.")
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
    spec = load_input(Path(args.source))
    M, m = spec.matroid(), spec.multiplicity()
    for item in m.as_list():
        print(f"m({item['set']}) = {item['m']}")
    if m.total:
        print(f"arithmetic Tutte: {format_polynomial(arithmetic_tutte(M, m))}")
        print(check_axioms(M, m).render())
    else:
        print(f"arithmetic Tutte at y=1: {format_polynomial(arithmetic_tutte_at_one(M, m))}")
        print(f"weak divisibility: {validate_weak(M, m)}")
