from fractions import Fraction as F

import pytest

from dsekit import (DSE, Atom, BetterPath, GraphMultiset, IntervalSet,
                    PartialMap, apply_better_path, degree_profile, distance,
                    equivalent, error, find_better_path, identity_map,
                    improve_division, initial_division, near_perfect_division,
                    regular_graph_partial_automorphism, symmetric_split,
                    symmetrize, validate)
from dsekit.errors import (AlreadyPerfect, InvalidPath, NotSymmetric,
                           UnsplittableDiagonal)
from dsekit.gallery import counterexample

from conftest import half_shift, random_cell_dse

iv = IntervalSet.interval


def sym_shift():
    return symmetrize(DSE([half_shift()], 1))


def test_initial_division_of_symmetrized_shift():
    div = initial_division(sym_shift().matrix)
    assert list(div.oriented.families()) == [
        ((1, F(1, 2)), ((F(0), F(1, 2), 2),))]
    assert error(div) == 1
    prof = degree_profile(div)
    assert prof.p_plus() == iv(0, F(1, 2))
    assert prof.p_minus() == iv(F(1, 2), 1)


def test_initial_division_even_diagonal():
    g = GraphMultiset([(Atom(0, 1, 1, 0), 2)])
    div = initial_division(g)
    assert error(div) == 0


def test_initial_division_odd_diagonal():
    with pytest.raises(UnsplittableDiagonal):
        initial_division(GraphMultiset([(Atom(0, 1, 1, 0), 1)]))


def test_initial_division_not_symmetric():
    with pytest.raises(NotSymmetric):
        initial_division(counterexample(2).matrix)


def test_initial_division_splits_reflections():
    # both copies of the full reflection sit below the diagonal on [0, 1/2)
    r = PartialMap([Atom(0, 1, -1, 1)])
    g = GraphMultiset.from_maps([r, r])
    div = initial_division(g)
    assert list(div.oriented.families()) == [
        ((-1, F(1)), ((F(0), F(1, 2), 2),))]
    assert error(div) == 1


def test_error_bracketing():
    div = initial_division(sym_shift().matrix)
    mu_plus = degree_profile(div).p_plus().measure()
    assert mu_plus <= error(div) <= 2 * div.n * mu_plus


def test_find_better_path_perfect_division():
    g = GraphMultiset([(Atom(0, 1, 1, 0), 2)])
    assert find_better_path(initial_division(g), 3) is None


def test_find_better_path_on_symmetrized_shift():
    div = initial_division(sym_shift().matrix)
    path = find_better_path(div, 1)
    assert path is not None and path.length == 1
    assert path.sets[0] == iv(0, F(1, 2))
    assert path.sets[1] == iv(F(1, 2), 1)


def test_apply_better_path_error_identity():
    div = initial_division(sym_shift().matrix)
    path = find_better_path(div, 1)
    out = apply_better_path(div, path)
    assert error(out) == error(div) - 2 * path.sets[0].measure() == 0


def test_apply_better_path_rejects_empty_and_reuse():
    div = initial_division(sym_shift().matrix)
    path = find_better_path(div, 1)
    out = apply_better_path(div, path)
    with pytest.raises(InvalidPath):
        apply_better_path(out, path)  # edges were flipped away
    from dsekit import EMPTY, EMPTY_MAP
    with pytest.raises(InvalidPath):
        apply_better_path(div, BetterPath((EMPTY_MAP,), (EMPTY, EMPTY)))


def test_improve_division_bound():
    div = initial_division(sym_shift().matrix)
    improved = improve_division(div)
    assert error(improved) == 0 <= 1 - F(1, 8) ** 2


def test_improve_division_already_perfect():
    g = GraphMultiset([(Atom(0, 1, 1, 0), 2)])
    with pytest.raises(AlreadyPerfect):
        improve_division(initial_division(g))


def test_improve_division_random_symmetric(rng):
    base = random_cell_dse(rng, 4, 2)
    g = symmetrize(base).matrix
    div = initial_division(g)
    if error(div) == 0:
        return
    err = error(div)
    improved = improve_division(div)
    assert err - error(improved) >= (err / (7 * div.n ** 3 + err)) ** 2


def test_near_perfect_division_counterexample():
    g = symmetrize(counterexample(4)).matrix
    div = near_perfect_division(g, F(1, 16))
    assert error(div) < F(1, 16)
    assert div.oriented.add(div.oriented.flip()) == g


def test_symmetric_split_shift_exact():
    psi = sym_shift()
    phi = symmetric_split(psi, F(1, 2))
    assert distance(psi, symmetrize(phi)) == 0
    assert equivalent(phi, DSE([half_shift()], 1))


def test_symmetric_split_doubled_identity():
    psi = DSE([identity_map(), identity_map()], 2)
    phi = symmetric_split(psi, F(1, 3))
    assert equivalent(phi, DSE([identity_map()], 1))


def test_symmetric_split_counterexample():
    psi = symmetrize(counterexample(4))
    phi = symmetric_split(psi, F(1, 8))
    assert phi.multiplicity == 2
    assert validate(phi).ok
    d = distance(psi, symmetrize(phi))
    assert d < F(1, 8)


def test_symmetric_split_requires_symmetry():
    with pytest.raises(NotSymmetric):
        symmetric_split(counterexample(2), F(1, 4))


def test_symmetric_split_random(rng):
    base = random_cell_dse(rng, 3, 2)
    psi = symmetrize(base)
    phi = symmetric_split(psi, F(1, 16))
    assert validate(phi).ok
    assert distance(psi, symmetrize(phi)) < F(1, 16)


def test_symmetric_split_reflection_forest():
    from dsekit.gallery import forest_example
    phi1, phi2 = forest_example(3)
    psi = DSE([phi1, phi2], 2)  # both maps are involutions
    phi = symmetric_split(psi, F(1, 8))
    assert distance(psi, symmetrize(phi)) < F(1, 8)


def test_symmetric_split_random_with_reflections(rng):
    psi = symmetrize(random_cell_dse(rng, 3, 2, reflections=True))
    phi = symmetric_split(psi, F(1, 16))
    assert validate(phi).ok
    assert distance(psi, symmetrize(phi)) < F(1, 16)


def test_regular_graph_identity():
    g = GraphMultiset([(Atom(0, 1, 1, 0), 2)])
    pm = regular_graph_partial_automorphism(g, F(1, 2))
    assert pm == identity_map()


def test_regular_graph_shift():
    g = sym_shift().matrix
    pm = regular_graph_partial_automorphism(g, F(1, 4))
    assert pm.domain.measure() == 1
    assert g.contains_graph(pm)


def test_regular_graph_counterexample():
    g = symmetrize(counterexample(4)).matrix
    pm = regular_graph_partial_automorphism(g, F(1, 16))
    assert pm.domain.measure() > F(15, 16)
    assert g.contains_graph(pm)
