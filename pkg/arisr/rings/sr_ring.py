#! /usr/bin/env python3

"""Stanley–Reisner ideals of simplicial posets and their Hilbert functions.

The ideal of a simplicial poset P with minimum y_0 is generated by
  (S1) y_i y_j when y_i and y_j have no common upper bound,
  (S2) y_i y_j - (y_i ∧ y_j) Σ z over the minimal upper bounds z,
  (S3) y_0 - 1,
graded by deg(y) = ρ(y).

The Hilbert function is checked against h_P(t)/(1-t)^r by an
independent linear algebra oracle. After y_0 = 1 every relation is
also homogeneous for the finer grading by multisets of atoms (the
atoms below a product y_i y_j are those below its meet plus those
below any join), so each fine degree is an independent block whose
dimension is #monomials - rank(relations), computed over ℚ.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from pathlib import Path
import sys
from typing import NamedTuple

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.rings"

from ..common import NotSimplicial
from ..posets.poset import (IndPoset, PosetElement, build_poset, meet, minimal_upper_bounds,
                            poset_h_polynomial, poset_h_vector, unique_minimum,
                            verify_simplicial, element_labels)
from ..structures.gstruct import GroupStructure, torsion_free_reduction

class FormalPolynomial:
    """Integer combination of monomials in poset elements.

    A monomial is a tuple of (element, exponent) pairs, sorted by the
    element order of the poset. Terms keep their insertion order.
    """

    def __init__(self, order):
        self._order = order
        self.terms = {}

    def monomial(self, *elements) -> tuple:
        counts = Counter(elements)
        return tuple(sorted(counts.items(), key=lambda item: self._order[item[0]]))

    def add(self, monomial: tuple, coefficient: int):
        value = self.terms.get(monomial, 0) + coefficient
        if value:
            self.terms[monomial] = value
        else:
            self.terms.pop(monomial, None)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self, weight) -> set:
        return set(sum(weight(y) * e for y, e in monomial) for monomial in self.terms)

    def is_homogeneous(self, weight) -> bool:
        return len(self.degrees(weight)) <= 1

    def substitute_one(self, variable) -> "FormalPolynomial":
        result = FormalPolynomial(self._order)
        for monomial, c in self.terms.items():
            result.add(tuple((y, e) for y, e in monomial if y != variable), c)
        return result

    def render(self, labels: dict) -> str:
        output = []
        for monomial, c in self.terms.items():
            factors = [ labels[y] if e == 1 else f"{labels[y]}^{e}" for y, e in monomial ]
            magnitude = abs(c)
            if not factors:
                text = str(magnitude)
            elif magnitude == 1:
                text = "*".join(factors)
            else:
                text = "*".join([ str(magnitude) ] + factors)
            if not output:
                output.append(text if c > 0 else f"-{text}")
            else:
                output.append(f"+ {text}" if c > 0 else f"- {text}")
        return " ".join(output) if output else "0"

class Generator(NamedTuple):
    tag: str
    polynomial: FormalPolynomial
    pair: tuple

class SRIdeal:
    def __init__(self, poset: IndPoset, generators: list):
        self.poset = poset
        self.generators = generators

    def tagged(self, tag: str) -> list:
        return [ g for g in self.generators if g.tag == tag ]

    def grading(self, y: PosetElement) -> int:
        return y.rho

    def __len__(self):
        return len(self.generators)

    def __repr__(self):
        counts = Counter(g.tag for g in self.generators)
        return f"SRIdeal({counts['S1']} S1, {counts['S2']} S2, {counts['S3']} S3)"

def sr_ideal(P: IndPoset) -> SRIdeal:
    if not verify_simplicial(P):
        raise NotSimplicial(f"{P} is not a simplicial poset")
    bottom = unique_minimum(P)
    order = P.index
    s1, s2 = [], []
    others = [ y for y in P.elements if y != bottom ]
    for yi, yj in combinations(others, 2):
        upper = minimal_upper_bounds(P, yi, yj)
        polynomial = FormalPolynomial(order)
        polynomial.add(polynomial.monomial(yi, yj), 1)
        if not upper:
            s1.append(Generator("S1", polynomial, (yi, yj)))
            continue
        m = meet(P, yi, yj)
        for z in upper:
            polynomial.add(polynomial.monomial(m, z), -1)
        # Comparable pairs give the zero relation
        if polynomial.is_zero():
            continue
        assert polynomial.is_homogeneous(lambda y: y.rho), f"Inhomogeneous relation for {yi}, {yj}"
        s2.append(Generator("S2", polynomial, (yi, yj)))
    s3 = FormalPolynomial(order)
    s3.add(s3.monomial(bottom), 1)
    s3.add((), -1)
    generators = s1 + s2 + [ Generator("S3", s3, (bottom,)) ]
    logger.debug(f"Ideal of {P}: {len(s1)} S1 and {len(s2)} S2 generators")
    return SRIdeal(P, generators)

def render_ideal(I: SRIdeal, labels: dict = None) -> str:
    """One generator per line. The factor y_0 is written as 1 outside (S3).
    """
    labels = labels or element_labels(I.poset)
    bottom = unique_minimum(I.poset)
    lines = []
    for g in I.generators:
        polynomial = g.polynomial if g.tag == "S3" else g.polynomial.substitute_one(bottom)
        lines.append(f"{g.tag}: {polynomial.render(labels)}")
    return "\n".join(lines) + "\n"

class _Oracle:
    """Graded dimensions of K[P] = K[y]/I with y_0 = 1.

    The (S1) generators span a monomial ideal M, so K[y]/M has the
    monomials avoiding every (S1) pair as a basis. Only the (S2)
    relations are then reduced modulo M and ranked.
    """

    def __init__(self, I: SRIdeal):
        P = I.poset
        bottom = unique_minimum(P)
        self.elements = [ y for y in P.elements if y != bottom ]
        index = { y: k for k, y in enumerate(self.elements) }
        atoms = [ y for y in self.elements if y.rho == 1 ]
        atom_index = { a: k for k, a in enumerate(atoms) }
        self.vectors = []
        for y in self.elements:
            v = [0] * len(atoms)
            for z in P.down_set(y):
                if z.rho == 1:
                    v[atom_index[z]] = 1
            self.vectors.append(tuple(v))
        self.atom_count = len(atoms)
        self.zero_pairs = set()
        self.relations = []
        for g in I.generators:
            if g.tag == "S3":
                continue
            if g.tag == "S1":
                i, j = sorted(index[y] for y in g.pair)
                self.zero_pairs.add((i, j))
                continue
            reduced = g.polynomial.substitute_one(bottom)
            terms = [ (tuple(sorted(index[y] for y, e in monomial for _ in range(e))), c)
                      for monomial, c in reduced.terms.items() ]
            degree = self.fine_degree(terms[0][0])
            assert all(self.fine_degree(m) == degree for m, _ in terms), f"Relation {g.tag} {g.pair} is not finely homogeneous"
            self.relations.append((degree, terms))
        self._monomials = {}

    def fine_degree(self, monomial: tuple) -> tuple:
        total = [0] * self.atom_count
        for k in monomial:
            for i, c in enumerate(self.vectors[k]):
                total[i] += c
        return tuple(total)

    def monomials(self, degree: tuple) -> list:
        """Monomials outside M (sorted element index tuples) of the given fine degree.
        """
        if degree in self._monomials:
            return self._monomials[degree]
        found = []

        def extend(start, remaining, current):
            if not any(remaining):
                found.append(tuple(current))
                return
            for k in range(start, len(self.elements)):
                v = self.vectors[k]
                if not all(c <= r for c, r in zip(v, remaining)):
                    continue
                if any((c, k) in self.zero_pairs for c in current if c != k):
                    continue
                current.append(k)
                extend(k, tuple(r - c for r, c in zip(remaining, v)), current)
                current.pop()

        extend(0, degree, [])
        self._monomials[degree] = found
        return found

    def blocks(self, d: int) -> list:
        """Fine degrees of the monomials of total degree d outside M.

        Every other fine degree has no monomial, hence a zero block.
        """
        found = set()
        ranks = [ y.rho for y in self.elements ]

        def extend(start, remaining, current, degree):
            if remaining == 0:
                found.add(tuple(degree))
                return
            for k in range(start, len(self.elements)):
                if ranks[k] > remaining:
                    continue
                if any((c, k) in self.zero_pairs for c in current if c != k):
                    continue
                current.append(k)
                extend(k, remaining - ranks[k], current,
                       [ a + b for a, b in zip(degree, self.vectors[k]) ])
                current.pop()

        extend(0, d, [], [0] * self.atom_count)
        return sorted(found)

    def block_dimension(self, degree: tuple) -> int:
        columns = { m: i for i, m in enumerate(self.monomials(degree)) }
        if not columns:
            return 0
        rows = set()
        for relation_degree, terms in self.relations:
            rest = tuple(a - b for a, b in zip(degree, relation_degree))
            if any(r < 0 for r in rest):
                continue
            for multiplier in self.monomials(rest):
                row = Counter()
                for monomial, c in terms:
                    # Products falling into M vanish
                    column = columns.get(tuple(sorted(monomial + multiplier)))
                    if column is not None:
                        row[column] += c
                row = frozenset((i, c) for i, c in row.items() if c)
                if row:
                    rows.add(row)
        if not rows:
            return len(columns)
        sparse = { r: { i: QQ(c) for i, c in row } for r, row in enumerate(rows) }
        rank = DomainMatrix(sparse, (len(rows), len(columns)), QQ).rank()
        logger.debug(f"Block {degree}: {len(columns)} monomials, rank {rank}")
        return len(columns) - rank

    def dimension(self, d: int) -> int:
        if d == 0:
            return 1
        return sum(self.block_dimension(degree) for degree in self.blocks(d))

def hilbert_oracle(I: SRIdeal, d: int) -> int:
    """dim_ℚ of the degree d part of K[P].
    """
    return _Oracle(I).dimension(d)

def hilbert_dimensions(I: SRIdeal, max_degree: int) -> list:
    oracle = _Oracle(I)
    dimensions = []
    for d in range(max_degree + 1):
        dimensions.append(oracle.dimension(d))
        logger.debug(f"dim K[P]_{d} = {dimensions[-1]}")
    return dimensions

def hilbert_closed(P: IndPoset) -> tuple:
    """(h_P, r) standing for the series (h_0 + h_1 t + … + h_r t^r)/(1-t)^r.
    """
    return poset_h_polynomial(P), P.rank

def series_coefficients(numerator: list, r: int, max_degree: int, scale=1) -> list:
    """Coefficients of t^0..t^max_degree in scale·(Σ numerator[i] t^i)/(1-t)^r.
    """
    coefficients = []
    for d in range(max_degree + 1):
        if r == 0:
            value = numerator[d] if d < len(numerator) else 0
        else:
            value = sum(h * comb(d - i + r - 1, r - 1) for i, h in enumerate(numerator) if i <= d)
        value = Fraction(value) * Fraction(scale)
        coefficients.append(int(value) if value.denominator == 1 else value)
    return coefficients

@dataclass
class HilbertReport:
    dimensions: list = field(default_factory=list)
    expected: list = field(default_factory=list)
    numerator: list = field(default_factory=list)
    rank: int = 0
    scale: Fraction = Fraction(1)

    @property
    def match(self) -> bool:
        return self.dimensions == self.expected

    def __bool__(self):
        return self.match

    def as_dict(self) -> dict:
        return { "rank": self.rank,
                 "h": list(self.numerator),
                 "scale": str(self.scale),
                 "dimensions": list(self.dimensions),
                 "expected": [ str(e) for e in self.expected ],
                 "match": self.match }

    def render(self) -> str:
        lines = [ f"h = {self.numerator}, r = {self.rank}" + (f", scale {self.scale}" if self.scale != 1 else "") ]
        for d, (a, b) in enumerate(zip(self.dimensions, self.expected)):
            lines.append(f"{d}: {a} {b}")
        lines.append("MATCH" if self.match else "MISMATCH")
        return "\n".join(lines)

def _report(I: SRIdeal, numerator: list, r: int, max_degree: int, scale=1) -> HilbertReport:
    report = HilbertReport(dimensions=hilbert_dimensions(I, max_degree),
                           expected=series_coefficients(numerator, r, max_degree, scale),
                           numerator=numerator, rank=r, scale=Fraction(scale))
    if not report.match:
        logger.warning(f"Hilbert function mismatch: {report.dimensions} != {report.expected}")
    return report

def verify_hilbert(P: IndPoset, max_degree: int = None) -> HilbertReport:
    """Compare the oracle with h_P(t)/(1-t)^r up to max_degree (default r + 3).
    """
    r = P.rank
    if max_degree is None:
        max_degree = r + 3
    return _report(sr_ideal(P), poset_h_vector(P), r, max_degree)

def verify_reduced_hilbert(G: GroupStructure, max_degree: int = None) -> HilbertReport:
    """Compare K[P̃] of the torsion-free reduction with (1/|G(∅)|)·h_P(t)/(1-t)^r,
    h_P being the h-vector of the full poset.
    """
    P = build_poset(G)
    reduced = build_poset(torsion_free_reduction(G))
    r = P.rank
    if max_degree is None:
        max_degree = r + 3
    return _report(sr_ideal(reduced), poset_h_vector(P), r, max_degree,
                   scale=Fraction(1, G.order(())))

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Stanley-Reisner ideal and Hilbert function check for an input file.")
    parser.add_argument("source", type=str, nargs='?',
                        help="Input file (JSON or YAML)")
    parser.add_argument("--structure", choices=["layer", "cyclic"], default="cyclic",
                        help="Group structure to build")
    parser.add_argument("--max-degree", type=int, default=None,
                        help="Highest degree to check (default r + 3)")
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
    G = load_input(Path(args.source)).structure(args.structure)
    report = verify_reduced_hilbert(G, args.max_degree)
    print(report.render())
    sys.exit(0 if report else 1)
