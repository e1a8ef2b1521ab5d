from fractions import Fraction as F

import pytest

from dsekit import (DSE, EMPTY, FULL, Atom, EMPTY_MAP, IntervalSet,
                    PartialMap, Piece, apply_extension, enlarge_piece,
                    find_extension, graph_intersect, identity_map,
                    lemma_piece, maximal_piece, near_full_piece, neighbor_set,
                    symmetrize, validate)
from dsekit.errors import AlreadyFull, InvalidExtension, PreconditionViolated
from dsekit.gallery import counterexample
from dsekit.pieces import validate_extension

from conftest import half_shift

iv = IntervalSet.interval


@pytest.fixture
def ce2():
    return counterexample(2)


def piece_is_inside_host(p: Piece) -> bool:
    """Recover the piece from the host's maps with graph_intersect only."""
    covered = EMPTY
    for m in p.host.maps:
        covered = covered.union(graph_intersect(p.map, m).domain)
    return covered == p.map.domain


def test_maximal_piece_empty_allowed(ce2):
    p = maximal_piece(ce2, EMPTY, EMPTY)
    assert p.map == EMPTY_MAP


def test_maximal_piece_identity():
    d = DSE([identity_map()], 1)
    p = maximal_piece(d, FULL, EMPTY)
    assert p.measure() == 1


def test_maximal_piece_counterexample(ce2):
    p = maximal_piece(ce2, FULL, EMPTY)
    assert p.domain == iv(0, F(3, 4))
    assert piece_is_inside_host(p)
    # maximality: the neighbours of the leftover are already covered
    assert p.image.contains(neighbor_set(ce2, p.domain.complement()))


def test_lemma_piece_empty_source(ce2):
    p = lemma_piece(ce2, EMPTY, EMPTY)
    assert p.map.is_empty()


def test_lemma_piece_identity_bound():
    d = DSE([identity_map()], 1)
    p = lemma_piece(d, iv(0, F(1, 2)), EMPTY)
    assert p.measure() == F(1, 2) >= F(1, 4)


def test_lemma_piece_vacuous_bound(ce2):
    p = lemma_piece(ce2, iv(F(3, 4), 1), iv(F(1, 4), 1))
    assert p.measure() >= 0


def test_lemma_piece_precondition(ce2):
    blocker = maximal_piece(ce2, iv(0, F(1, 4)), EMPTY)
    with pytest.raises(PreconditionViolated):
        lemma_piece(ce2, iv(0, F(1, 2)), EMPTY, blocker)


def test_find_extension_full_piece_returns_none():
    d = DSE([identity_map()], 1)
    full = maximal_piece(d, FULL, EMPTY)
    assert find_extension(d, full, 3) is None


def test_find_extension_depth_zero():
    t = half_shift()
    d = DSE([t, t.invert()], 2)
    theta = Piece(t.restrict(iv(0, F(1, 2))), d)
    ext = find_extension(d, theta, 0)
    assert ext is not None and ext.depth == 0
    assert iv(F(1, 2), 1).contains(ext.sources[0])
    assert iv(0, F(1, 2)).contains(ext.targets[-1])


def test_find_extension_counterexample_needs_depth(ce2):
    theta = maximal_piece(ce2, FULL, EMPTY)
    ext = find_extension(ce2, theta, 2)
    assert ext is not None
    assert ext.depth >= 1  # the greedy piece is maximal, no 0-depth move
    validate_extension(theta, ext)


def test_apply_extension_depth_zero_is_disjoint_union():
    t = half_shift()
    d = DSE([t, t.invert()], 2)
    theta = Piece(t.restrict(iv(0, F(1, 2))), d)
    ext = find_extension(d, theta, 0)
    grown = apply_extension(theta, ext)
    assert grown.measure() == theta.measure() + ext.sources[0].measure()
    assert grown.domain == theta.domain.union(ext.sources[0])


def test_apply_extension_grows_counterexample(ce2):
    theta = maximal_piece(ce2, FULL, EMPTY)
    ext = find_extension(ce2, theta, 2)
    grown = apply_extension(theta, ext)
    assert grown.measure() == theta.measure() + ext.sources[0].measure()
    assert grown.measure() > F(3, 4)
    assert piece_is_inside_host(grown)


def test_apply_extension_rejects_mismatched(ce2):
    theta = maximal_piece(ce2, FULL, EMPTY)
    ext = find_extension(ce2, theta, 2)
    # a piece whose domain already contains the extension's gain set
    other = maximal_piece(ce2, iv(F(1, 2), 1), EMPTY)
    assert other.domain.contains(ext.sources[0])
    with pytest.raises(InvalidExtension):
        apply_extension(other, ext)


def test_enlarge_piece_identity_from_empty():
    d = DSE([identity_map()], 1)
    grown = enlarge_piece(d, Piece(EMPTY_MAP, d))
    assert grown.measure() >= F(1, 64)  # bound (1/(7+1))^2; actual is 1
    assert grown.measure() == 1


def test_enlarge_piece_counterexample_bound(ce2):
    theta = maximal_piece(ce2, FULL, EMPTY)
    grown = enlarge_piece(ce2, theta)
    assert grown.measure() >= F(3, 4) + F(1, 57) ** 2


def test_enlarge_piece_already_full():
    d = DSE([identity_map()], 1)
    with pytest.raises(AlreadyFull):
        enlarge_piece(d, maximal_piece(d, FULL, EMPTY))


def test_near_full_identity():
    d = DSE([identity_map()], 1)
    assert near_full_piece(d, F(1, 2)).measure() == 1


def test_near_full_symmetrized_shift():
    p = near_full_piece(symmetrize(DSE([half_shift()], 1)), F(1, 4))
    assert p.measure() > F(3, 4)
    assert p.measure() == 1  # the first map is already an automorphism


def test_near_full_counterexample_four():
    trace = []
    p = near_full_piece(counterexample(4), F(1, 16), trace=trace)
    assert p.measure() > F(15, 16)
    assert piece_is_inside_host(p)
    for before, after, bound in trace:
        assert after >= before + bound


def test_near_full_requires_positive_eps(ce2):
    with pytest.raises(ValueError):
        near_full_piece(ce2, F(0, 1))
