import random
from fractions import Fraction as F

import pytest

from dsekit import (DSE, Atom, PartialMap, decompose_bvn, discretize,
                    distance, extract_permutation, identity_map, lift,
                    pad_to_doubly_stochastic, symmetrize, validate)
from dsekit.bvn import is_permutation
from dsekit.errors import (Infeasible, NotCellAligned, NotDoublyStochastic,
                           NotPermutation)
from dsekit.gallery import counterexample

from conftest import half_shift


def random_regular_matrix(rng: random.Random, m: int, n: int) -> list[list[int]]:
    """Sum of n random permutation matrices: a guaranteed member of B_m^n."""
    out = [[0] * m for _ in range(m)]
    for _ in range(n):
        perm = list(range(m))
        rng.shuffle(perm)
        for i, j in enumerate(perm):
            out[i][j] += 1
    return out


def test_extract_from_scaled_identity():
    a = [[3, 0], [0, 3]]
    assert extract_permutation(a) == [[1, 0], [0, 1]]


def test_extract_permutation_small():
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    p = extract_permutation(a)
    assert is_permutation(p)
    assert all(p[i][j] <= a[i][j] for i in range(3) for j in range(3))


def test_extract_rejects_zero_row():
    with pytest.raises(NotDoublyStochastic):
        extract_permutation([[0, 0], [1, 1]])


def test_decompose_single_permutation():
    a = [[0, 1], [1, 0]]
    assert decompose_bvn(a) == [a]


def test_decompose_small_example():
    a = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
    perms = decompose_bvn(a)
    assert len(perms) == 2
    total = [[sum(p[i][j] for p in perms) for j in range(3)] for i in range(3)]
    assert total == a


def test_decompose_random_matrices(rng):
    for _ in range(40):
        m = rng.randint(2, 16)
        n = rng.randint(1, 5)
        a = random_regular_matrix(rng, m, n)
        perms = decompose_bvn(a)
        assert len(perms) == n
        assert all(is_permutation(p) for p in perms)
        total = [[sum(p[i][j] for p in perms) for j in range(m)]
                 for i in range(m)]
        assert total == a


def test_pad_already_regular():
    a = [[1, 1], [1, 1]]
    assert pad_to_doubly_stochastic(a, 2) == [[0, 0], [0, 0]]


def test_pad_zero_matrix_greedy_identity():
    assert pad_to_doubly_stochastic([[0, 0], [0, 0]], 1) == [[1, 0], [0, 1]]


def test_pad_forced_entry():
    assert pad_to_doubly_stochastic([[1, 0], [0, 0]], 1) == [[0, 0], [0, 1]]


def test_pad_infeasible():
    with pytest.raises(Infeasible):
        pad_to_doubly_stochastic([[2, 0], [0, 0]], 1)


def test_discretize_identity():
    d = DSE([identity_map()], 1)
    assert discretize(d, 1) == [[1, 0], [0, 1]]


def test_discretize_symmetrized_shift():
    d = symmetrize(DSE([half_shift()], 1))
    assert discretize(d, 1) == [[0, 2], [2, 0]]


def test_discretize_counterexample():
    a = discretize(counterexample(2), 4)
    assert all(sum(row) == 2 for row in a)
    assert all(sum(a[i][j] for i in range(16)) == 2 for j in range(16))


def test_discretize_reflections_align_cell_to_cell():
    d = DSE([PartialMap([Atom(0, 1, -1, 1)])], 1)
    assert discretize(d, 1) == [[0, 1], [1, 0]]


def test_discretize_rejects_misaligned():
    rotation = PartialMap([Atom(0, F(2, 3), 1, F(1, 3)),
                           Atom(F(2, 3), 1, 1, F(-2, 3))])
    d = DSE([rotation], 1)
    with pytest.raises(NotCellAligned) as exc:
        discretize(d, 2)
    assert exc.value.offending_atoms


def test_lift_identity():
    d = lift([[[1, 0], [0, 1]]], 1)
    assert d == DSE([identity_map()], 1)


def test_lift_two_cycle_is_shift():
    d = lift([[[0, 1], [1, 0]]], 1)
    assert d == DSE([half_shift()], 1)


def test_lift_rejects_non_permutation():
    with pytest.raises(NotPermutation):
        lift([[[1, 1], [0, 0]]], 1)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_roundtrip_counterexample(k):
    ce = counterexample(k)
    level = k + 1
    back = lift(decompose_bvn(discretize(ce, level)), level)
    assert validate(back).ok
    assert distance(ce, back) == 0


def test_roundtrip_random_translation_dse(rng):
    from conftest import random_cell_dse
    d = random_cell_dse(rng, 3, 3)
    back = lift(decompose_bvn(discretize(d, 3)), 3)
    assert distance(d, back) == 0
