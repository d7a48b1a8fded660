#! /usr/bin/env python3

"""Finite abelian groups in invariant-factor form, their elements and
homomorphisms.

A group ℤ/d_1 ⊕ … ⊕ ℤ/d_k is stored by its invariant factors
1 < d_1 | d_2 | … | d_k. Elements are coordinate tuples reduced into
[0, d_i). Homomorphisms are integer matrices acting on coordinates.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from dataclasses import dataclass
from itertools import product
from math import prod
from pathlib import Path
import sys

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.groups"

from ..common import InfiniteQuotient, IllDefined
from ..lattice.exact_linalg import (IntMatrix, smith_normal_form,
                                    hermite_normal_form, integer_kernel,
                                    lattice_index, solve_in_lattice)

@dataclass(frozen=True, order=True)
class GroupElem:
    coords: tuple = ()

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        if len(self.coords) == 1:
            return str(self.coords[0])
        return "(" + ",".join(str(c) for c in self.coords) + ")"

class FinAbGroup:
    """A finite abelian group ℤ/d_1 ⊕ … ⊕ ℤ/d_k.

    Any list of positive orders is accepted and normalized into
    invariant factors, so FinAbGroup([2, 3]) == FinAbGroup([6]).
    """

    def __init__(self, factors=()):
        factors = [ int(d) for d in factors ]
        if any(d == 0 for d in factors):
            raise InfiniteQuotient(f"Group with free part {factors} is not finite")
        factors = [ abs(d) for d in factors if abs(d) != 1 ]
        if any(b % a for a, b in zip(factors, factors[1:])):
            diagonal = IntMatrix.from_rows([ [ d if i == j else 0 for j in range(len(factors)) ]
                                             for i, d in enumerate(factors) ],
                                           cols=len(factors))
            factors = smith_normal_form(diagonal).diagonal()
        self.invariant_factors = tuple(d for d in factors if d > 1)

    @classmethod
    def cyclic(cls, n: int) -> "FinAbGroup":
        return cls([n])

    @classmethod
    def trivial(cls) -> "FinAbGroup":
        return cls()

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def ngens(self) -> int:
        return len(self.invariant_factors)

    def is_trivial(self) -> bool:
        return not self.invariant_factors

    def reduce(self, coords) -> GroupElem:
        coords = tuple(coords)
        if len(coords) != self.ngens:
            raise ValueError(f"Element {coords} does not belong to {self}")
        return GroupElem(tuple(c % d for c, d in zip(coords, self.invariant_factors)))

    def zero(self) -> GroupElem:
        return GroupElem((0,) * self.ngens)

    def generators(self) -> list:
        return [ GroupElem(tuple(int(i == j) for j in range(self.ngens)))
                 for i in range(self.ngens) ]

    def add(self, g: GroupElem, h: GroupElem) -> GroupElem:
        return self.reduce(a + b for a, b in zip(g.coords, h.coords))

    def neg(self, g: GroupElem) -> GroupElem:
        return self.reduce(-a for a in g.coords)

    def scale(self, n: int, g: GroupElem) -> GroupElem:
        return self.reduce(n * a for a in g.coords)

    def contains(self, g: GroupElem) -> bool:
        return (len(g.coords) == self.ngens
                and all(0 <= c < d for c, d in zip(g.coords, self.invariant_factors)))

    def element_order(self, g: GroupElem) -> int:
        n = 1
        while self.scale(n, g) != self.zero():
            n += 1
        return n

    def elements(self) -> list:
        return elements(self)

    def __eq__(self, other):
        return isinstance(other, FinAbGroup) and self.invariant_factors == other.invariant_factors

    def __hash__(self):
        return hash(self.invariant_factors)

    def __str__(self):
        if self.is_trivial():
            return "0"
        return " + ".join(f"Z/{d}" for d in self.invariant_factors)

    def __repr__(self):
        return f"FinAbGroup({list(self.invariant_factors)})"

def elements(G: FinAbGroup) -> list:
    """All elements of G, in lexicographic coordinate order.
    """
    return [ GroupElem(coords) for coords in product(*(range(d) for d in G.invariant_factors)) ]

class GroupHom:
    """Homomorphism given by an integer matrix acting on coordinates.

    The matrix has one column per domain generator, holding the
    coordinates of its image. Well-definedness is checked on
    construction.
    """

    def __init__(self, domain: FinAbGroup, codomain: FinAbGroup, action: IntMatrix):
        if action.shape != (codomain.ngens, domain.ngens):
            raise ValueError(f"Action of shape {action.shape} does not fit {domain} -> {codomain}")
        for j, d in enumerate(domain.invariant_factors):
            image = codomain.reduce(d * c for c in action.column(j))
            if image != codomain.zero():
                raise IllDefined(f"Generator {j} of {domain} has order {d} but its image in {codomain} is not killed by {d}")
        # Store reduced images so that equal maps have equal matrices
        columns = [ codomain.reduce(action.column(j)).coords for j in range(domain.ngens) ]
        self.domain = domain
        self.codomain = codomain
        self.action = IntMatrix.from_columns(columns, rows=codomain.ngens)

    @classmethod
    def identity(cls, G: FinAbGroup) -> "GroupHom":
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def zero(cls, domain: FinAbGroup, codomain: FinAbGroup) -> "GroupHom":
        return cls(domain, codomain, IntMatrix.zeros(codomain.ngens, domain.ngens))

    def __call__(self, g: GroupElem) -> GroupElem:
        return self.apply(g)

    def apply(self, g: GroupElem) -> GroupElem:
        if not self.domain.contains(g):
            raise ValueError(f"{g} is not an element of {self.domain}")
        return self.codomain.reduce(self.action @ g.coords)

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """Return self ∘ inner.
        """
        if inner.codomain != self.domain:
            raise ValueError(f"Cannot compose {inner.domain} -> {inner.codomain} with {self.domain} -> {self.codomain}")
        return GroupHom(inner.domain, self.codomain, self.action @ inner.action)

    def image_order(self) -> int:
        if self.codomain.is_trivial():
            return 1
        relations = IntMatrix.from_columns([ [ d if i == j else 0 for i in range(self.codomain.ngens) ]
                                             for j, d in enumerate(self.codomain.invariant_factors) ],
                                           rows=self.codomain.ngens)
        # Index of (image + relations) in ℤ^k is the order of the cokernel
        return self.codomain.order // lattice_index(self.action.hstack(relations))

    def is_injective(self) -> bool:
        return self.image_order() == self.domain.order

    def __eq__(self, other):
        return (isinstance(other, GroupHom)
                and self.domain == other.domain
                and self.codomain == other.codomain
                and self.action == other.action)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.action))

    def __repr__(self):
        return f"GroupHom({self.domain!r} -> {self.codomain!r}, {self.action.to_rows()})"

class QuotientMap:
    """Coordinate map from an ambient lattice onto a finite quotient.

    The ambient lattice is given by a basis (columns, independent).
    """

    def __init__(self, ambient: IntMatrix, group: FinAbGroup, U: IntMatrix, U_inverse: IntMatrix, offset: int):
        self.ambient = ambient
        self.group = group
        self._U = U
        self._U_inverse = U_inverse
        # Invariant factors equal to 1 occupy the first offset SNF positions
        self._offset = offset

    def __call__(self, vector) -> GroupElem:
        coordinates = solve_in_lattice(self.ambient, vector)
        if coordinates is None:
            raise ValueError(f"{tuple(vector)} is not in the ambient lattice")
        z = self._U @ coordinates
        return self.group.reduce(z[self._offset:])

    def lift(self, g: GroupElem) -> tuple:
        """A lattice vector mapping to g.
        """
        z = [0] * self._offset + list(g.coords)
        return self.ambient @ (self._U_inverse @ z)

def quotient_group(ambient: IntMatrix, sub: IntMatrix) -> tuple:
    """Quotient of the lattice spanned by ambient by the one spanned by sub.

    The columns of ambient must be independent and the columns of sub
    must lie in their lattice. Return (group, coordinate_map), the
    kernel of coordinate_map being exactly the sublattice.
    """
    columns = []
    for v in sub.columns():
        coordinates = solve_in_lattice(ambient, v)
        if coordinates is None:
            raise ValueError(f"Sublattice vector {v} is not in the ambient lattice")
        columns.append(coordinates)
    relations = IntMatrix.from_columns(columns, rows=ambient.cols)
    snf = smith_normal_form(relations)
    diagonal = snf.diagonal() + [0] * (ambient.cols - min(relations.shape))
    if any(d == 0 for d in diagonal):
        raise InfiniteQuotient(f"Sublattice of rank {relations.cols} has infinite index in a lattice of rank {ambient.cols}")
    offset = sum(1 for d in diagonal if d == 1)
    group = FinAbGroup(diagonal[offset:])
    logger.debug(f"Quotient of rank {ambient.cols} lattice is {group}")
    return group, QuotientMap(ambient, group, snf.U, snf.U_inverse, offset)

def hom_from_vector_map(domain: FinAbGroup, codomain: FinAbGroup, generator_images) -> GroupHom:
    """Build the homomorphism sending the i-th generator of domain to generator_images[i].
    """
    images = [ tuple(g.coords) if isinstance(g, GroupElem) else tuple(g)
               for g in generator_images ]
    if len(images) != domain.ngens:
        raise ValueError(f"{domain} has {domain.ngens} generators, got {len(images)} images")
    return GroupHom(domain, codomain, IntMatrix.from_columns(images, rows=codomain.ngens))

def is_surjective(h: GroupHom) -> bool:
    return h.image_order() == h.codomain.order

def compose(outer: GroupHom, inner: GroupHom) -> GroupHom:
    return outer.compose(inner)

class Embedding(GroupHom):
    """Injective homomorphism of a kernel into its ambient group, able
    to pull elements back.
    """

    def __init__(self, domain: FinAbGroup, codomain: FinAbGroup, action: IntMatrix, coordinate_map: QuotientMap):
        super().__init__(domain, codomain, action)
        self._coordinate_map = coordinate_map

    def preimage(self, g: GroupElem) -> GroupElem:
        return self._coordinate_map(g.coords)

def kernel(h: GroupHom) -> tuple:
    """Return (K, embedding) where K is the kernel of h.

    K is computed as {x ∈ ℤ^k : h(x) = 0} modulo the relations of the
    domain.
    """
    G, H = h.domain, h.codomain
    k, l = G.ngens, H.ngens
    if G.is_trivial():
        K, coordinate_map = quotient_group(IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0))
        return K, Embedding(K, G, IntMatrix.zeros(0, 0), coordinate_map)
    # x ↦ A x lies in the codomain relations iff (x, y) solves A x - E y = 0
    relations = [ [ -d if i == j else 0 for j in range(l) ] for i, d in enumerate(H.invariant_factors) ]
    action_rows = h.action.to_rows()
    system = IntMatrix.from_rows([ action_rows[i] + relations[i] for i in range(l) ],
                                 cols=k + l)
    solutions = integer_kernel(system)
    kernel_lattice = hermite_normal_form(IntMatrix.from_rows(solutions.to_rows()[:k], cols=solutions.cols))
    domain_relations = IntMatrix.from_columns([ [ d if i == j else 0 for i in range(k) ]
                                                for j, d in enumerate(G.invariant_factors) ],
                                              rows=k)
    K, coordinate_map = quotient_group(kernel_lattice, domain_relations)
    action = IntMatrix.from_columns([ coordinate_map.lift(g) for g in K.generators() ], rows=k)
    embedding = Embedding(K, G, action, coordinate_map)
    assert K.order * h.image_order() == G.order
    return K, embedding

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Kernel and image of Z/n -> Z/m sending 1 to 1.")
    parser.add_argument("source", type=int, nargs='?',
                        help="Order n of the domain")
    parser.add_argument("target", type=int, nargs='?',
                        help="Order m of the codomain")
    parser.add_argument("--debug", dest="debug", action="store_true",
                        default=False,
                        help="Display debug messages")
    args = parser.parse_args()
    if args.source is None or args.target is None:
        parser.print_help()
        sys.exit(1)
    loglevel = logging.INFO
    if args.debug:
        loglevel = logging.DEBUG
    logging.basicConfig(level=loglevel)

    domain = FinAbGroup.cyclic(args.source)
    codomain = FinAbGroup.cyclic(args.target)
    h = hom_from_vector_map(domain, codomain, [ [1] ])
    K, _ = kernel(h)
    print(f"{domain} -> {codomain}: kernel {K}, image order {h.image_order()}, surjective {is_surjective(h)}")
