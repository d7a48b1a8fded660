#! /usr/bin/env python3

"""Surjective finite abelian group structures on simplicial complexes.

A structure assigns a finite abelian group to every face S and a
homomorphism G(S ∪ {a}) → G(S) to every one-element extension. Layer
groups of an integer matrix and cyclic groups of a multiplicity
function are the two constructions provided.
"""

import logging
logger = logging.getLogger(__name__)

import argparse
from dataclasses import dataclass, field
from pathlib import Path
import sys

# Allow relative imports if invoked as a script
# From https://stackoverflow.com/a/65780624/2870028
if __package__ is None:
    module_dir = Path(__file__).resolve().parent
    sys.path.insert(0, str(module_dir.parent.parent))
    __package__ = "arisr.structures"

from ..common import InvalidStructure, NotWeaklyArithmetic
from ..lattice.exact_linalg import IntMatrix, saturate, hermite_normal_form, parallelepiped_points
from ..groups.abelian import (FinAbGroup, GroupElem, GroupHom, quotient_group,
                              hom_from_vector_map, is_surjective, kernel)
from ..matroids.matroid import Matroid, matroid_from_columns
from ..matroids.arith import Multiplicity, Representation, weak_violations

def _key(S) -> tuple:
    return (len(S), S)

def format_set(S) -> str:
    return "{" + ",".join(str(e) for e in S) + "}"

class GroupStructure:
    """Groups on the faces of a complex with one-element deletion maps.

    maps[(S, a)] goes from groups[S ∪ {a}] to groups[S]. When a matroid
    is attached and S ∪ {a} has the same rank as S, the map is expected
    to be injective instead of surjective.
    """

    def __init__(self, faces, groups: dict, maps: dict, matroid: Matroid = None, kind: str = "custom"):
        self.faces = tuple(sorted(set(tuple(sorted(S)) for S in faces), key=_key))
        self.groups = { tuple(sorted(S)): G for S, G in groups.items() }
        self.maps = dict(maps)
        self.matroid = matroid
        self.kind = kind
        face_set = set(self.faces)
        for S in self.faces:
            if S not in self.groups:
                raise InvalidStructure(f"No group assigned to face {format_set(S)}")
            for e in S:
                smaller = tuple(b for b in S if b != e)
                if smaller not in face_set:
                    raise InvalidStructure(f"Face {format_set(S)} has missing subface {format_set(smaller)}")
                if (smaller, e) not in self.maps:
                    raise InvalidStructure(f"No map from {format_set(S)} to {format_set(smaller)}")

    def group(self, S) -> FinAbGroup:
        return self.groups[tuple(sorted(S))]

    def proj(self, S, a: int) -> GroupHom:
        return self.maps[(tuple(sorted(S)), a)]

    def extensions(self):
        """Pairs (S, a) with S ∪ {a} a face, in face order.
        """
        for U in self.faces:
            for a in U:
                yield tuple(b for b in U if b != a), a

    def pi_hom(self, S) -> GroupHom:
        """The composite G(S) → G(∅), deleting the largest element first.
        """
        S = tuple(sorted(S))
        h = GroupHom.identity(self.group(S))
        current = S
        while current:
            a = current[-1]
            current = current[:-1]
            h = self.proj(current, a).compose(h)
        return h

    def order(self, S) -> int:
        return self.group(S).order

    def element_count(self) -> int:
        return sum(G.order for G in self.groups.values())

    def __repr__(self):
        return f"GroupStructure({self.kind}, {len(self.faces)} faces, {self.element_count()} elements)"

def pi_S(G: GroupStructure, S, g: GroupElem) -> GroupElem:
    return G.pi_hom(S).apply(g)

def _cyclic_projection(domain: FinAbGroup, codomain: FinAbGroup) -> GroupHom:
    # Sends 1 to 1; cyclic groups have at most one generator
    return hom_from_vector_map(domain, codomain, [ [1] * codomain.ngens ] * domain.ngens)

def cyclic_structure(M: Matroid, m: Multiplicity) -> GroupStructure:
    """G(S) = ℤ/m(S) with the projections sending 1 to 1.
    """
    violations = weak_violations(M, m)
    if violations:
        S, B = violations[0]
        raise NotWeaklyArithmetic(f"m({format_set(S)}) = {m(S)} does not divide m({format_set(B)}) = {m(B)}")
    groups = { S: FinAbGroup.cyclic(m(S)) for S in M.independent_sets }
    maps = {}
    for U in M.independent_sets:
        for a in U:
            S = tuple(b for b in U if b != a)
            maps[(S, a)] = _cyclic_projection(groups[U], groups[S])
    logger.debug(f"Cyclic structure on {len(groups)} faces")
    return GroupStructure(M.independent_sets, groups, maps, matroid=M, kind="cyclic")

def face_structure(faces, matroid: Matroid = None) -> GroupStructure:
    """The trivial structure, whose poset is the face poset.
    """
    faces = [ tuple(sorted(S)) for S in faces ]
    trivial = FinAbGroup.trivial()
    groups = { S: trivial for S in faces }
    maps = { (tuple(b for b in U if b != a), a): GroupHom.identity(trivial)
             for U in faces for a in U }
    return GroupStructure(faces, groups, maps, matroid=matroid, kind="face")

class LayerStructure(GroupStructure):
    """Layer groups LG(S) = W(S)/I(S) of an integer matrix.

    I(S) = X[S]^T ℤ^r is the image lattice in ℤ^S, W(S) its saturation.
    """

    def __init__(self, X):
        if isinstance(X, Representation):
            # Layer groups only see the projection to G/G_t
            X = X.free_matrix
        self.matrix = X
        M = matroid_from_columns(X)
        self._lattices = {}
        self._coordinate_maps = {}
        groups = {}
        for S in M.independent_sets:
            # Canonical basis, so that the coordinates only depend on the lattice
            image = hermite_normal_form(X.select_columns([ e - 1 for e in S ]).transpose())
            saturated = saturate(image)
            group, coordinate_map = quotient_group(saturated, image)
            self._lattices[S] = (saturated, image)
            self._coordinate_maps[S] = coordinate_map
            groups[S] = group
        maps = {}
        for U in M.independent_sets:
            for position, a in enumerate(U):
                S = U[:position] + U[position + 1:]
                images = []
                for g in groups[U].generators():
                    v = self._coordinate_maps[U].lift(g)
                    # Forget the coordinate of a
                    images.append(self._coordinate_maps[S](v[:position] + v[position + 1:]))
                maps[(S, a)] = hom_from_vector_map(groups[U], groups[S], images)
        super().__init__(M.independent_sets, groups, maps, matroid=M, kind="layer")
        logger.debug(f"Layer structure on {len(groups)} faces, {self.element_count()} elements")

    def lattices(self, S) -> tuple:
        """(W(S), I(S)) as column bases in ℤ^S.
        """
        return self._lattices[tuple(sorted(S))]

    def coordinate_map(self, S):
        return self._coordinate_maps[tuple(sorted(S))]

    def parallelepiped_labels(self, S, generators: IntMatrix = None) -> dict:
        """Map each element of LG(S) to the lattice point of ℤ^S
        representing it in the half-open parallelepiped.

        The parallelepiped is spanned by the given generators, which
        must form a basis of I(S), or by the Hermite basis of I(S).
        """
        S = tuple(sorted(S))
        _, image = self._lattices[S]
        if generators is None:
            generators = image
        elif hermite_normal_form(generators) != image:
            raise InvalidStructure(f"Generators do not span I({format_set(S)})")
        coordinate_map = self._coordinate_maps[S]
        labels = {}
        for point in parallelepiped_points(generators):
            labels[coordinate_map(point)] = point
        assert len(labels) == self.order(S)
        return labels

def layer_structure(X) -> LayerStructure:
    return LayerStructure(X)

@dataclass
class StructureReport:
    valid: bool = True
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.valid

    @property
    def first_failure(self) -> str:
        return self.failures[0] if self.failures else ""

    def fail(self, message: str):
        self.valid = False
        self.failures.append(message)

    def as_dict(self) -> dict:
        return { "valid": self.valid, "failures": list(self.failures) }

def validate_structure(G: GroupStructure) -> StructureReport:
    """Check the projection maps and the commuting squares.

    Maps along rank-increasing extensions must be surjective. With a
    matroid attached, maps along dependent extensions must be
    injective. Squares are compared on every element.
    """
    report = StructureReport()
    face_set = set(G.faces)
    for S, a in G.extensions():
        h = G.proj(S, a)
        U = tuple(sorted(S + (a,)))
        if h.domain != G.group(U) or h.codomain != G.group(S):
            report.fail(f"map {format_set(U)} -> {format_set(S)} has wrong domain or codomain")
            continue
        dependent = G.matroid is not None and G.matroid.rank_of(U) == G.matroid.rank_of(S)
        if dependent:
            if not h.is_injective():
                report.fail(f"map {format_set(U)} -> {format_set(S)} along a dependent extension is not injective")
        elif not is_surjective(h):
            report.fail(f"map {format_set(U)} -> {format_set(S)} is not surjective")
    for U in G.faces:
        for i, a in enumerate(U):
            for b in U[i + 1:]:
                S = tuple(e for e in U if e not in (a, b))
                Sa = tuple(e for e in U if e != b)
                Sb = tuple(e for e in U if e != a)
                if not (Sa in face_set and Sb in face_set):
                    continue
                via_a = G.proj(S, a).compose(G.proj(Sa, b))
                via_b = G.proj(S, b).compose(G.proj(Sb, a))
                for g in G.group(U).elements():
                    left, right = via_a(g), via_b(g)
                    if left != right:
                        report.fail(f"square {format_set(U)} -> {format_set(Sa)},{format_set(Sb)} -> {format_set(S)} "
                                    f"does not commute at {g}: {left} != {right}")
                        break
    if report.valid:
        logger.debug(f"{G} is valid")
    else:
        logger.warning(f"{G} is invalid: {report.first_failure}")
    return report

def torsion_free_reduction(G: GroupStructure) -> GroupStructure:
    """Replace each G(S) by the kernel of π_S : G(S) → G(∅).
    """
    kernels = {}
    for S in G.faces:
        kernels[S] = kernel(G.pi_hom(S))
    groups = { S: K for S, (K, _) in kernels.items() }
    maps = {}
    for S, a in G.extensions():
        U = tuple(sorted(S + (a,)))
        K_U, embedding_U = kernels[U]
        _, embedding_S = kernels[S]
        images = [ embedding_S.preimage(G.proj(S, a)(embedding_U(k))) for k in K_U.generators() ]
        maps[(S, a)] = hom_from_vector_map(K_U, groups[S], images)
    return GroupStructure(G.faces, groups, maps, matroid=G.matroid, kind=f"{G.kind}-reduced")

def noncommuting_square(repaired: bool = False) -> GroupStructure:
    """Cyclic groups on all subsets of the rank one matroid with
    m(∅) = m({1,2}) = 3, m({1}) = 6, m({2}) = 9.

    The dependent set {1,2} is mapped injectively into G({1}) and
    G({2}). No such square commutes; with ℤ/9 replaced by ℤ/3 ⊕ ℤ/3
    (repaired=True) it does.
    """
    M = Matroid(2, [ (), (1,), (2,) ])
    Z3 = FinAbGroup.cyclic(3)
    Z6 = FinAbGroup.cyclic(6)
    groups = { (): Z3, (1,): Z6, (1, 2): Z3 }
    maps = { ((), 1): hom_from_vector_map(Z6, Z3, [ [1] ]),
             ((1,), 2): hom_from_vector_map(Z3, Z6, [ [2] ]) }
    if repaired:
        Z3Z3 = FinAbGroup([3, 3])
        groups[(2,)] = Z3Z3
        maps[((), 2)] = hom_from_vector_map(Z3Z3, Z3, [ [1], [0] ])
        maps[((2,), 1)] = hom_from_vector_map(Z3, Z3Z3, [ [2, 0] ])
    else:
        Z9 = FinAbGroup.cyclic(9)
        groups[(2,)] = Z9
        maps[((), 2)] = hom_from_vector_map(Z9, Z3, [ [1] ])
        maps[((2,), 1)] = hom_from_vector_map(Z3, Z9, [ [3] ])
    return GroupStructure(groups.keys(), groups, maps, matroid=M, kind="total")

if __name__ == "__main__":
    parser = argparse.ArgumentParser(description="Build and validate a group structure for an input file.")
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
    G = load_input(Path(args.source)).structure(args.structure)
    for S in G.faces:
        print(f"{format_set(S)}: {G.group(S)}")
    report = validate_structure(G)
    print("valid" if report else f"invalid: {report.first_failure}")
