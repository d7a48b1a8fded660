import random

import pytest

from arisr.common import InfiniteQuotient, IllDefined
from arisr.lattice.exact_linalg import IntMatrix, hermite_normal_form, saturate
from arisr.groups.abelian import (FinAbGroup, GroupElem, GroupHom, elements, quotient_group,
                                  hom_from_vector_map, is_surjective, compose, kernel)

from conftest import ROTATED_SQUARE, random_matrix

def test_invariant_factors():
    assert FinAbGroup([2, 3]) == FinAbGroup([6])
    assert FinAbGroup([4, 2]).invariant_factors == (2, 4)
    assert FinAbGroup([1, 1]).is_trivial()
    assert FinAbGroup([6, 4]).invariant_factors == (2, 12)
    assert str(FinAbGroup([2, 4])) == "Z/2 + Z/4"
    assert str(FinAbGroup.trivial()) == "0"
    with pytest.raises(InfiniteQuotient):
        FinAbGroup([0])

def test_elements_and_arithmetic():
    G = FinAbGroup([2, 4])
    assert G.order == 8
    assert len(elements(G)) == 8
    g = GroupElem((1, 3))
    assert G.add(g, g) == GroupElem((0, 2))
    assert G.neg(g) == GroupElem((1, 1))
    assert G.element_order(g) == 4
    assert G.reduce((5, -1)) == g
    assert str(g) == "(1,3)"
    assert str(GroupElem((2,))) == "2"

def test_quotient_of_example():
    G, coordinate_map = quotient_group(IntMatrix.identity(2), ROTATED_SQUARE.transpose())
    assert G == FinAbGroup([2, 4])
    # The relations map to zero
    for column in ROTATED_SQUARE.transpose().columns():
        assert coordinate_map(column) == G.zero()
    # Lifts are sections
    for g in G.elements():
        assert coordinate_map(coordinate_map.lift(g)) == g
    assert len(set(coordinate_map(p) for p in [ (0, 0), (-1, 1), (0, 1), (1, 1),
                                                 (-1, 2), (0, 2), (1, 2), (0, 3) ])) == 8

def test_infinite_quotient():
    with pytest.raises(InfiniteQuotient):
        quotient_group(IntMatrix.identity(2), IntMatrix.from_columns([ [2, 0] ]))

def test_hom_well_defined():
    Z4 = FinAbGroup.cyclic(4)
    Z6 = FinAbGroup.cyclic(6)
    with pytest.raises(IllDefined):
        hom_from_vector_map(Z4, Z6, [ [1] ])
    h = hom_from_vector_map(Z4, Z6, [ [3] ])
    assert h(GroupElem((1,))) == GroupElem((3,))
    assert h.image_order() == 2
    assert not is_surjective(h)
    assert not h.is_injective()

def test_compose_and_identity():
    Z6 = FinAbGroup.cyclic(6)
    Z3 = FinAbGroup.cyclic(3)
    Z2 = FinAbGroup.cyclic(2)
    p = hom_from_vector_map(Z6, Z3, [ [1] ])
    q = hom_from_vector_map(Z6, Z2, [ [1] ])
    assert is_surjective(p) and is_surjective(q)
    assert compose(p, GroupHom.identity(Z6)) == p
    h = hom_from_vector_map(Z3, Z6, [ [2] ])
    assert p.compose(h)(GroupElem((1,))) == GroupElem((2,))
    assert q.compose(h) == GroupHom.zero(Z3, Z2)
    with pytest.raises(ValueError):
        h.compose(h)

def test_kernel_cyclic():
    Z6 = FinAbGroup.cyclic(6)
    Z3 = FinAbGroup.cyclic(3)
    K, embedding = kernel(hom_from_vector_map(Z6, Z3, [ [1] ]))
    assert K == FinAbGroup.cyclic(2)
    assert set(embedding(g) for g in K.elements()) == { GroupElem((0,)), GroupElem((3,)) }
    for g in K.elements():
        assert embedding.preimage(embedding(g)) == g
    assert embedding.is_injective()

def test_kernel_trivial_cases():
    Z5 = FinAbGroup.cyclic(5)
    K, _ = kernel(GroupHom.identity(Z5))
    assert K.is_trivial()
    K, embedding = kernel(GroupHom.zero(Z5, FinAbGroup.trivial()))
    assert K == Z5
    assert set(embedding(g) for g in K.elements()) == set(Z5.elements())
    K, _ = kernel(GroupHom.identity(FinAbGroup.trivial()))
    assert K.is_trivial()

def test_random_kernels():
    rng = random.Random(11)
    for _ in range(100):
        G = FinAbGroup([ rng.randint(1, 6) for _ in range(rng.randint(1, 2)) ])
        H = FinAbGroup([ rng.randint(1, 6) for _ in range(rng.randint(1, 2)) ])
        # Images of generators, scaled so that the map is well defined
        images = []
        for d in G.invariant_factors:
            image = [ rng.randint(0, e - 1) for e in H.invariant_factors ]
            while H.scale(d, GroupElem(tuple(image))) != H.zero():
                image = [ rng.randint(0, e - 1) for e in H.invariant_factors ]
            images.append(image)
        h = hom_from_vector_map(G, H, images)
        K, embedding = kernel(h)
        brute = [ g for g in G.elements() if h(g) == H.zero() ]
        assert K.order == len(brute)
        assert set(embedding(k) for k in K.elements()) == set(brute)
        assert h.image_order() == len(set(h(g) for g in G.elements()))

def test_random_quotient_maps_are_homomorphisms():
    rng = random.Random(13)
    checked = 0
    while checked < 50:
        image = hermite_normal_form(random_matrix(rng).transpose())
        if image.cols == 0:
            continue
        checked += 1
        ambient = saturate(image)
        G, coordinate_map = quotient_group(ambient, image)
        assert G.order == len(set(coordinate_map(coordinate_map.lift(g)) for g in G.elements()))
        for _ in range(5):
            u = ambient @ [ rng.randint(-4, 4) for _ in range(ambient.cols) ]
            v = ambient @ [ rng.randint(-4, 4) for _ in range(ambient.cols) ]
            total = tuple(a + b for a, b in zip(u, v))
            assert coordinate_map(total) == G.add(coordinate_map(u), coordinate_map(v)), f"{u} {v} in {ambient}"
        for column in image.columns():
            assert coordinate_map(column) == G.zero()
