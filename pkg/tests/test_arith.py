import random

import pytest

from arisr.common import InputError, PartialMultiplicity, format_polynomial
from arisr.lattice.exact_linalg import IntMatrix
from arisr.matroids.matroid import Matroid, tutte, uniform_matroid
from arisr.matroids.arith import (AmbientGroup, Representation, Multiplicity, Molecule,
                                  multiplicity_from_representation, multiplicity_function,
                                  arithmetic_tutte, arithmetic_tutte_at_one, find_molecules,
                                  rho, check_axioms, weak_violations, validate_weak)

from conftest import ROTATED_SQUARE, random_matrix

def test_ambient_group():
    G = AmbientGroup(1, [3])
    assert G.dimension == 2
    assert G.reduce((2, 4)) == (2, 1)
    with pytest.raises(InputError):
        AmbientGroup(1, [3, 2])
    with pytest.raises(InputError):
        AmbientGroup(1, [1])
    with pytest.raises(InputError):
        G.reduce((1, 2, 3))

def test_rotated_square_multiplicity():
    m = multiplicity_function(ROTATED_SQUARE)
    assert [ m(S) for S in [ (), (1,), (2,), (1, 2) ] ] == [1, 2, 2, 8]
    assert format_polynomial(arithmetic_tutte(m.matroid, m)) == "x^2 + 2*x + 5"

def test_torsion_pair_multiplicity(torsion_pair):
    X = torsion_pair.representation
    assert X.free_matrix == IntMatrix.from_rows([ [2, 3] ])
    m = multiplicity_function(X)
    assert [ m(S) for S in [ (), (1,), (2,), (1, 2) ] ] == [3, 6, 9, 3]
    M = m.matroid
    assert format_polynomial(tutte(M)) == "x + y"
    assert format_polynomial(arithmetic_tutte(M, m)) == "3*x + 3*y + 9"
    assert format_polynomial(arithmetic_tutte_at_one(M, m)) == "3*x + 12"
    assert check_axioms(M, m).all_hold

def test_torsion_column():
    # A pure torsion element of Z + Z/4 generates a finite group
    X = Representation(AmbientGroup(1, [4]), [ (0, 2) ])
    assert multiplicity_from_representation(X, ()) == 4
    assert multiplicity_from_representation(X, (1,)) == 2

def test_unimodular_collapse(unimodular):
    M = unimodular.matroid()
    m = unimodular.multiplicity()
    assert all(v == 1 for v in m.values.values())
    assert arithmetic_tutte(M, m) == tutte(M)
    identity = multiplicity_function(IntMatrix.identity(3))
    assert arithmetic_tutte(identity.matroid, identity) == tutte(identity.matroid)

def test_partial_multiplicity():
    M = uniform_matroid(1, 2)
    with pytest.raises(PartialMultiplicity):
        Multiplicity(M, { (): 1, (1,): 2 })
    m = Multiplicity(M, { (): 1, (1,): 2, (2,): 2 })
    assert not m.total
    with pytest.raises(PartialMultiplicity):
        m((1, 2))
    with pytest.raises(PartialMultiplicity):
        arithmetic_tutte(M, m)
    with pytest.raises(PartialMultiplicity):
        check_axioms(M, m)
    assert format_polynomial(arithmetic_tutte_at_one(M, m)) == "x + 3"
    with pytest.raises(InputError):
        Multiplicity(M, { (): 0, (1,): 2, (2,): 2 })
    with pytest.raises(InputError):
        Multiplicity(M, { (): 1, (1,): 2.5, (2,): 2 })

def test_molecules_of_parallel_pair():
    M = Matroid(2, [ (), (1,), (2,) ])
    molecules = find_molecules(M)
    assert Molecule((), (1, 2), (1, 2), ()) not in molecules
    assert all(not (mol.R == () and mol.S == (1, 2)) for mol in molecules)
    assert Molecule((1,), (1, 2), (), (2,)) in molecules
    assert Molecule((), (1,), (1,), ()) in molecules

def test_doubled_pair_axioms(doubled_pair):
    M = doubled_pair.matroid()
    m = doubled_pair.multiplicity()
    assert format_polynomial(arithmetic_tutte(M, m)) == "x^2 + 2*x - 1"
    assert rho(m, Molecule((), (1, 2), (1, 2), ())) == -1
    report = check_axioms(M, m)
    assert not report.holds_P
    assert report.holds_A1
    assert report.holds_A2
    assert [ (v.axiom, v.sets) for v in report.violations ] == [ ("P", ((), (1, 2))) ]
    assert "(P): violated" in report.render()
    assert report.as_dict()["violations"][0]["values"] == [-1]

def test_weak_violations():
    M = uniform_matroid(2, 2)
    m = Multiplicity(M, { (): 2, (1,): 3, (2,): 2, (1, 2): 6 })
    assert weak_violations(M, m) == [ ((), (1,)) ]
    assert not validate_weak(M, m)
    report = check_axioms(M, m)
    assert not report.holds_A1

def test_representable_axioms():
    rng = random.Random(17)
    for _ in range(100):
        X = random_matrix(rng)
        m = multiplicity_function(X)
        report = check_axioms(m.matroid, m)
        assert report.all_hold, report.render()
        assert validate_weak(m.matroid, m)
        for S in m.matroid.independent_sets:
            assert multiplicity_from_representation(Representation.from_matrix(X), S) == m(S)
