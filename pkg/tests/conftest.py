import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from dsekit import DSE, Atom, IntervalSet, PartialMap


def half_shift() -> PartialMap:
    """x -> x + 1/2 mod 1, the standard two-cell rotation."""
    return PartialMap([Atom(0, Fraction(1, 2), 1, Fraction(1, 2)),
                       Atom(Fraction(1, 2), 1, 1, Fraction(-1, 2))])


def random_interval_set(rng: random.Random, level: int = 6) -> IntervalSet:
    cells = 2 ** level
    unit = Fraction(1, cells)
    chosen = [i for i in range(cells) if rng.random() < 0.4]
    return IntervalSet((i * unit, (i + 1) * unit) for i in chosen)


def random_cell_map(rng: random.Random, level: int,
                    reflections: bool = False) -> PartialMap:
    """A random permutation of the dyadic cells as a partial map."""
    cells = 2 ** level
    unit = Fraction(1, cells)
    perm = list(range(cells))
    rng.shuffle(perm)
    atoms = []
    for j, i in enumerate(perm):
        if reflections and rng.random() < 0.3:
            atoms.append(Atom(j * unit, (j + 1) * unit, -1,
                              (i + j + 1) * unit))
        else:
            atoms.append(Atom(j * unit, (j + 1) * unit, 1, (i - j) * unit))
    return PartialMap(atoms)


def random_cell_dse(rng: random.Random, level: int, n: int,
                    reflections: bool = False) -> DSE:
    return DSE([random_cell_map(rng, level, reflections) for _ in range(n)], n)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20260810)
