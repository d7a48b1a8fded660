#! /usr/bin/env python3

"""Independence posets of group structures.

Elements are pairs (S, g) with g ∈ G(S). (S ∪ {a}, g) covers (S, h)
iff the deletion map sends g to h. The Hasse diagram is a networkx
DiGraph with edges pointing from the covered to the covering element.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from pathlib import Path
import sys
from typing import NamedTuple

import networkx as nx
from networkx.utils import UnionFind
import sympy
from sympy import Poly, ZZ

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.posets"

from ..common import InvalidStructure, NoUpperBound, NonUniqueMeet, NoUniqueMin
from ..groups.abelian import GroupElem
from ..matroids.matroid import t, coefficient_vector
from ..structures.gstruct import GroupStructure, validate_structure, face_structure, format_set

class PosetElement(NamedTuple):
    S: tuple
    g: GroupElem

    @property
    def rho(self) -> int:
        return len(self.S)

    def __str__(self):
        return f"{format_set(self.S)}:{self.g}"

def _order(element: PosetElement) -> tuple:
    return (element.rho, element.S, element.g.coords)

class IndPoset:
    """A graded poset given by its cover relation.
    """

    def __init__(self, elements, covers):
        """covers is an iterable of (lower, upper) pairs.
        """
        self.elements = sorted(set(elements), key=_order)
        self.index = { y: i for i, y in enumerate(self.elements) }
        self.graph = nx.DiGraph()
        for y in self.elements:
            self.graph.add_node(y, rho=y.rho)
        for lower, upper in covers:
            if upper.rho != lower.rho + 1:
                raise InvalidStructure(f"{upper} cannot cover {lower}")
            self.graph.add_edge(lower, upper)
        self._down = {}
        self._up = {}

    @property
    def rank(self) -> int:
        return max((y.rho for y in self.elements), default=0)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, y):
        return y in self.index

    def covered_by(self, y) -> list:
        """Elements covered by y.
        """
        return sorted(self.graph.predecessors(y), key=_order)

    def covering(self, y) -> list:
        """Elements covering y.
        """
        return sorted(self.graph.successors(y), key=_order)

    def down_set(self, y) -> frozenset:
        if y not in self._down:
            self._down[y] = frozenset(nx.ancestors(self.graph, y) | { y })
        return self._down[y]

    def up_set(self, y) -> frozenset:
        if y not in self._up:
            self._up[y] = frozenset(nx.descendants(self.graph, y) | { y })
        return self._up[y]

    def leq(self, y1, y2) -> bool:
        return y1 in self.down_set(y2)

    def minimal_elements(self) -> list:
        return [ y for y in self.elements if self.graph.in_degree(y) == 0 ]

    def edges(self) -> list:
        return sorted(self.graph.edges(), key=lambda e: (self.index[e[0]], self.index[e[1]]))

    def subposet(self, elements) -> "IndPoset":
        elements = set(elements)
        return IndPoset(elements, [ (a, b) for a, b in self.graph.edges() if a in elements and b in elements ])

    def __repr__(self):
        return f"IndPoset({len(self.elements)} elements, {self.graph.number_of_edges()} covers, rank {self.rank})"

def build_poset(G: GroupStructure) -> IndPoset:
    report = validate_structure(G)
    if not report:
        raise InvalidStructure(f"Not a surjective group structure: {report.first_failure}")
    elements = [ PosetElement(S, g) for S in G.faces for g in G.group(S).elements() ]
    covers = []
    for S, a in G.extensions():
        U = tuple(sorted(S + (a,)))
        h = G.proj(S, a)
        for g in G.group(U).elements():
            covers.append((PosetElement(S, h(g)), PosetElement(U, g)))
    P = IndPoset(elements, covers)
    logger.debug(f"Built {P} from {G}")
    return P

def face_poset(faces) -> IndPoset:
    return build_poset(face_structure(faces))

def components(P: IndPoset) -> list:
    """Connected components of the Hasse diagram, ordered by their minimal element.
    """
    parts = UnionFind(P.elements)
    for a, b in P.graph.edges():
        parts.union(a, b)
    groups = [ sorted(part, key=_order) for part in parts.to_sets() ]
    return [ P.subposet(part) for part in sorted(groups, key=lambda part: _order(part[0])) ]

def poset_f_vector(P: IndPoset) -> list:
    f = [0] * (P.rank + 1)
    for y in P.elements:
        f[y.rho] += 1
    return f

def poset_f_polynomial(P: IndPoset) -> Poly:
    r = P.rank
    return Poly(sum((c * t**(r - i) for i, c in enumerate(poset_f_vector(P))), sympy.Integer(0)), t, domain=ZZ)

def poset_h_polynomial(P: IndPoset) -> Poly:
    return Poly(poset_f_polynomial(P).as_expr().subs(t, t - 1), t, domain=ZZ)

def poset_h_vector(P: IndPoset) -> list:
    return coefficient_vector(poset_h_polynomial(P), P.rank)

def unique_minimum(P: IndPoset) -> PosetElement:
    minimal = P.minimal_elements()
    if len(minimal) != 1:
        raise NoUniqueMin(f"Poset has {len(minimal)} minimal elements")
    return minimal[0]

def verify_simplicial(P: IndPoset) -> bool:
    """True iff every lower interval [0̂, y] is a boolean algebra.

    Each z in the interval is mapped to the set of atoms below it; the
    map must be an order isomorphism onto the subsets of the ρ(y)
    atoms below y.
    """
    unique_minimum(P)
    for y in P.elements:
        interval = P.down_set(y)
        atoms = [ z for z in interval if z.rho == 1 ]
        if len(atoms) != y.rho:
            logger.debug(f"{y} has {len(atoms)} atoms below it, expected {y.rho}")
            return False
        downs = { z: P.down_set(z) for z in interval }
        below = { z: frozenset(a for a in atoms if a in downs[z]) for z in interval }
        if len(set(below.values())) != 2**y.rho:
            logger.debug(f"Interval below {y} is not boolean")
            return False
        for z in interval:
            if len(below[z]) != z.rho:
                return False
            for w in interval:
                if below[z] <= below[w] and z not in downs[w]:
                    logger.debug(f"{z} and {w} are not ordered like their atom sets")
                    return False
    return True

def minimal_upper_bounds(P: IndPoset, y1, y2) -> list:
    upper = P.up_set(y1) & P.up_set(y2)
    return sorted((z for z in upper
                   if not any(w != z and w in upper for w in P.down_set(z))), key=_order)

def meet(P: IndPoset, y1, y2) -> PosetElement:
    if not P.up_set(y1) & P.up_set(y2):
        raise NoUpperBound(f"{y1} and {y2} have no common upper bound")
    lower = P.down_set(y1) & P.down_set(y2)
    maximal = [ z for z in lower
                if not any(w != z and P.leq(z, w) for w in lower) ]
    if len(maximal) != 1:
        raise NonUniqueMeet(f"{y1} and {y2} have {len(maximal)} maximal common lower bounds")
    return maximal[0]

def is_isomorphic(P: IndPoset, Q: IndPoset) -> bool:
    """Graded isomorphism of the Hasse diagrams.
    """
    return nx.is_isomorphic(P.graph, Q.graph,
                            node_match=lambda a, b: a['rho'] == b['rho'])

def cut_vertices(P: IndPoset) -> list:
    return sorted(nx.articulation_points(P.graph.to_undirected()), key=_order)

def _letter(e: int) -> str:
    return chr(ord('a') + e - 1) if e <= 26 else f"x{e}"

def _suffix(g: GroupElem) -> str:
    if not g.coords:
        return "0"
    if len(g.coords) == 1:
        return str(g.coords[0])
    return "(" + ",".join(str(c) for c in g.coords) + ")"

def element_labels(P: IndPoset, prefixes: dict = None, representatives: dict = None) -> dict:
    """Display names for the elements of P.

    A name is a prefix for the subset followed by the residue of the
    group element, or by a representative point when representatives[S]
    maps elements of G(S) to points. The default prefix spells the
    subset in letters ("a", "ab", ...), or is "y" for ∅.
    """
    prefixes = prefixes or {}
    representatives = representatives or {}
    labels = {}
    for y in P.elements:
        if not y.S:
            prefix = prefixes.get((), "y")
        else:
            prefix = prefixes.get(y.S, "".join(_letter(e) for e in y.S))
        points = representatives.get(y.S)
        if points is not None:
            point = points[y.g]
            suffix = "[" + ",".join(str(c) for c in point) + "]"
        else:
            suffix = _suffix(y.g)
        labels[y] = f"{prefix}{suffix}"
    return labels

def export_dot(P: IndPoset, labels: dict = None) -> str:
    """DOT text of the Hasse diagram, edges from covered to covering element.
    """
    labels = labels or { y: str(y) for y in P.elements }
    lines = [ 'digraph {', '  rankdir=BT;' ]
    for y in P.elements:
        lines.append(f'  "{labels[y]}";')
    for lower, upper in P.edges():
        lines.append(f'  "{labels[lower]}" -> "{labels[upper]}";')
    lines.append('}')
    return "\n".join(lines) + "\n"

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Independence poset of an input file.")
    parser.add_argument("source", type=str, nargs='?',
                        help="Input file (JSON or YAML)")
    parser.add_argument("--structure", choices=["layer", "cyclic"], default="cyclic",
                        help="Group structure to build")
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
    P = build_poset(load_input(Path(args.source)).structure(args.structure))
    sys.stdout.write(export_dot(P, element_labels(P)))
