from pathlib import Path
from math import gcd
import random

import pytest

from arisr.lattice.exact_linalg import IntMatrix
from arisr.matroids.matroid import Matroid, matroid_from_columns, uniform_matroid
from arisr.matroids.arith import Multiplicity
from arisr.parsers.input_spec import load_input

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

ROTATED_SQUARE = IntMatrix.from_rows([ [2, -2], [2, 2] ])

def fixture_path(name: str) -> Path:
    return FIXTURES / f"{name}.json"

def random_matrix(rng: random.Random, max_rank: int = 3, max_size: int = 4, bound: int = 3) -> IntMatrix:
    r = rng.randint(1, max_rank)
    N = rng.randint(1, max_size)
    return IntMatrix.from_rows([ [ rng.randint(-bound, bound) for _ in range(N) ] for _ in range(r) ])

def random_matroid(rng: random.Random, max_size: int = 4) -> Matroid:
    if rng.random() < 0.3:
        n = rng.randint(1, max_size)
        return uniform_matroid(rng.randint(0, n), n)
    return matroid_from_columns(random_matrix(rng, max_size=max_size, bound=2))

def random_weak_multiplicity(rng: random.Random, M: Matroid, bound: int = 12) -> Multiplicity:
    """Multiplicity on the independent sets, each value a multiple of
    the values on its subsets.
    """
    while True:
        values = {}
        for S in M.independent_sets:
            base = 1
            for e in S:
                smaller = tuple(a for a in S if a != e)
                value = values[smaller]
                base = base * value // gcd(base, value)
            choices = [ k for k in (1, 2, 3) if base * k <= bound ]
            if not choices:
                break
            values[S] = base * rng.choice(choices)
        else:
            return Multiplicity(M, values)

@pytest.fixture
def rotated_square():
    return load_input(fixture_path("rotated_square"))

@pytest.fixture
def doubled_pair():
    return load_input(fixture_path("doubled_pair"))

@pytest.fixture
def torsion_pair():
    return load_input(fixture_path("torsion_pair"))

@pytest.fixture
def unimodular():
    return load_input(fixture_path("unimodular"))
