from fractions import Fraction

import pytest
from sympy import Poly

from arisr.common import NotSimplicial
from arisr.groups.abelian import GroupElem
from arisr.matroids.matroid import t, uniform_matroid, face_ring_dimension
from arisr.posets.poset import PosetElement, IndPoset, build_poset, face_poset, element_labels
from arisr.lattice.exact_linalg import IntMatrix
from arisr.rings.sr_ring import (sr_ideal, render_ideal, hilbert_oracle, hilbert_dimensions,
                                 hilbert_closed, series_coefficients, verify_hilbert,
                                 verify_reduced_hilbert, _Oracle)

def test_doubled_pair_ideal(doubled_pair):
    P = build_poset(doubled_pair.structure('cyclic'))
    I = sr_ideal(P)
    assert len(I.tagged("S1")) == 9
    assert len(I.tagged("S2")) == 2
    assert len(I.tagged("S3")) == 1
    text = render_ideal(I, element_labels(P, prefixes={ (1, 2): "C" }))
    assert text == "\n".join([
        "S1: a0*a1",
        "S1: a0*b1",
        "S1: a0*C1",
        "S1: a1*b0",
        "S1: a1*C0",
        "S1: b0*b1",
        "S1: b0*C1",
        "S1: b1*C0",
        "S1: C0*C1",
        "S2: a0*b0 - C0",
        "S2: a1*b1 - C1",
        "S3: y0 - 1",
    ]) + "\n"

def test_rotated_square_cyclic_ideal(rotated_square):
    P = build_poset(rotated_square.structure('cyclic'))
    text = render_ideal(sr_ideal(P), element_labels(P, prefixes={ (1, 2): "C" }))
    assert "S2: a0*b0 - C0 - C2 - C4 - C6\n" in text
    assert "S2: a1*b1 - C1 - C3 - C5 - C7\n" in text
    assert "S1: a0*b1\n" in text

def test_rotated_square_layer_ideal(rotated_square):
    # Four binomials, each with two cells
    P = build_poset(rotated_square.structure('layer'))
    I = sr_ideal(P)
    atom_pairs = [ g for g in I.tagged("S2") if all(y.rho == 1 for y in g.pair) ]
    assert len(atom_pairs) == 4
    assert all(len(g.polynomial.terms) == 3 for g in atom_pairs)
    assert all(g.polynomial.is_homogeneous(lambda y: y.rho) for g in I.generators)

def test_rotated_square_binomials(rotated_square):
    G = rotated_square.structure('layer')
    P = build_poset(G)
    points = G.parallelepiped_labels((1, 2), IntMatrix.from_columns([ [2, 2], [-2, 2] ]))
    labels = element_labels(P, prefixes={ (1, 2): "C" }, representatives={ (1, 2): points })
    lines = set(render_ideal(sr_ideal(P), labels).splitlines())

    def binomial(a, b, p, q):
        return { f"S2: {a}*{b} - {p} - {q}", f"S2: {a}*{b} - {q} - {p}" }

    assert binomial("a0", "b0", "C[0,0]", "C[0,2]") & lines
    assert binomial("a0", "b1", "C[0,1]", "C[0,3]") & lines
    assert binomial("a1", "b0", "C[-1,2]", "C[1,2]") & lines
    assert binomial("a1", "b1", "C[-1,1]", "C[1,1]") & lines

def test_block_without_common_upper_bound():
    # a, b, c are pairwise joined but nothing lies above all three
    faces = [ (), (1,), (2,), (3,), (1, 2), (1, 3), (2, 3) ]
    I = sr_ideal(face_poset(faces))
    oracle = _Oracle(I)
    assert (1, 1, 1) in oracle.blocks(3)
    assert oracle.monomials((1, 1, 1)) != []
    assert oracle.block_dimension((1, 1, 1)) == 0
    assert hilbert_dimensions(I, 5) == [ face_ring_dimension(faces, d) for d in range(6) ]

@pytest.mark.parametrize("structure, name", [ ('layer', 'rotated_square'),
                                              ('cyclic', 'rotated_square'),
                                              ('cyclic', 'doubled_pair'),
                                              ('layer', 'unimodular') ])
def test_blocks_off_element_supports_vanish(structure, name, request):
    P = build_poset(request.getfixturevalue(name).structure(structure))
    oracle = _Oracle(sr_ideal(P))
    supports = { frozenset(i for i, c in enumerate(v) if c) for v in oracle.vectors }
    for d in range(1, P.rank + 3):
        for degree in oracle.blocks(d):
            if frozenset(i for i, c in enumerate(degree) if c) not in supports:
                assert oracle.block_dimension(degree) == 0, f"{degree}"

def test_oracle_doubled_pair(doubled_pair):
    P = build_poset(doubled_pair.structure('cyclic'))
    assert hilbert_dimensions(sr_ideal(P), 4) == [1, 4, 6, 8, 10]
    assert hilbert_oracle(sr_ideal(P), 0) == 1

def test_oracle_rotated_square(rotated_square):
    P = build_poset(rotated_square.structure('layer'))
    assert hilbert_dimensions(sr_ideal(P), 4) == [1, 4, 12, 20, 28]

def test_hilbert_closed(rotated_square, doubled_pair):
    h, r = hilbert_closed(build_poset(rotated_square.structure('layer')))
    assert (h, r) == (Poly(t**2 + 2*t + 5, t), 2)
    h, r = hilbert_closed(build_poset(doubled_pair.structure('cyclic')))
    assert h == Poly(t**2 + 2*t - 1, t)
    single = IndPoset([ PosetElement((), GroupElem(())) ], [])
    assert hilbert_closed(single) == (Poly(1, t), 0)

def test_series_coefficients():
    assert series_coefficients([1, 2, 5], 2, 4) == [1, 4, 12, 20, 28]
    assert series_coefficients([1, 2, -1], 2, 4) == [1, 4, 6, 8, 10]
    assert series_coefficients([1], 0, 2) == [1, 0, 0]
    assert series_coefficients([3, 12], 1, 3, Fraction(1, 3)) == [1, 5, 5, 5]
    assert series_coefficients([1, 1], 1, 1, Fraction(1, 2)) == [Fraction(1, 2), 1]

@pytest.mark.parametrize("structure, name", [ ('layer', 'rotated_square'),
                                              ('cyclic', 'rotated_square'),
                                              ('cyclic', 'doubled_pair'),
                                              ('layer', 'unimodular') ])
def test_verify_hilbert_fixtures(structure, name, request):
    spec = request.getfixturevalue(name)
    P = build_poset(spec.structure(structure))
    report = verify_hilbert(P, P.rank + 3)
    assert report.match, report.render()
    assert report.render().endswith("MATCH")

def test_verify_reduced_hilbert(torsion_pair):
    report = verify_reduced_hilbert(torsion_pair.structure('cyclic'), 5)
    assert report.dimensions == [1, 5, 5, 5, 5, 5]
    assert report.expected == [1, 5, 5, 5, 5, 5]
    assert report.scale == Fraction(1, 3)
    assert report.numerator == [3, 12]
    assert report.as_dict()["match"]

def test_face_ring_degeneration():
    faces = uniform_matroid(2, 4).independent_sets
    P = face_poset(faces)
    I = sr_ideal(P)
    assert hilbert_dimensions(I, 5) == [ face_ring_dimension(faces, d) for d in range(6) ]

def test_mismatch_is_reported():
    report = verify_hilbert(face_poset(uniform_matroid(1, 2).independent_sets), 2)
    assert report
    report.expected = [1, 2, 3]
    assert not report.match
    assert report.render().endswith("MISMATCH")

def test_non_simplicial_has_no_ideal():
    bottom = PosetElement((), GroupElem(()))
    a, b = PosetElement((1,), GroupElem(())), PosetElement((2,), GroupElem(()))
    c1, c2 = PosetElement((1, 2), GroupElem((0,))), PosetElement((1, 2), GroupElem((1,)))
    top = PosetElement((1, 2, 3), GroupElem(()))
    P = IndPoset([ bottom, a, b, c1, c2, top ],
                 [ (bottom, a), (bottom, b), (a, c1), (b, c1), (a, c2), (b, c2), (c1, top), (c2, top) ])
    with pytest.raises(NotSimplicial):
        sr_ideal(P)
