from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dsekit import (Atom, EMPTY_MAP, IntervalSet, PartialMap, compose, glue,
                    graph_intersect, identity_map)
from dsekit.errors import OverlapError
from dsekit.gallery import counterexample, forest_example

iv = IntervalSet.interval


def reflection():
    return PartialMap([Atom(0, 1, -1, 1)])


def test_apply_identity():
    assert identity_map().apply(F(1, 3)) == F(1, 3)


def test_apply_shift_atom():
    m = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    assert m.apply(F(1, 4)) == F(3, 4)
    assert m.apply(F(3, 4)) is None


def test_apply_reflection():
    assert reflection().apply(F(1, 4)) == F(3, 4)


def test_invert_shift_atom():
    m = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    assert m.invert() == PartialMap([Atom(F(1, 2), 1, 1, F(-1, 2))])


def test_reflection_is_involution():
    r = reflection()
    assert r.invert() == r
    assert compose(r, r) == identity_map()


def test_invert_invert_roundtrip():
    m = PartialMap([Atom(0, F(1, 8), 1, F(1, 2)),
                    Atom(F(1, 4), F(3, 8), -1, F(3, 8)),
                    Atom(F(1, 2), F(3, 4), 1, F(-1, 4))])
    assert m.invert().invert() == m
    # composing with the inverse gives the identity on the domain
    back = compose(m.invert(), m)
    assert back == identity_map().restrict(m.domain)


def test_compose_identity_neutral():
    m = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    assert compose(identity_map(), m) == m
    assert compose(m, identity_map()) == m


def test_compose_forest_pieces():
    # flipping everything and then the right half shifts (1/2,3/4) down by 1/4
    phi1, phi2 = forest_example(3)
    comp = compose(phi2, phi1)
    piece = comp.restrict(iv(F(1, 2), F(3, 4)))
    assert piece == PartialMap([Atom(F(1, 2), F(3, 4), 1, F(-1, 4))])
    for x in (F(33, 64), F(9, 16), F(5, 8), F(43, 64), F(47, 64)):
        assert comp.apply(x) == x - F(1, 4)


def test_image_and_preimage():
    m = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    assert identity_map().image_of(iv(0, F(1, 4))) == iv(0, F(1, 4))
    assert m.image_of(iv(0, F(1, 4))) == iv(F(1, 2), F(3, 4))
    assert m.preimage_of(iv(F(1, 2), F(3, 4))) == iv(0, F(1, 4))


def test_image_of_reflection_reorients():
    r = reflection()
    assert r.image_of(iv(0, F(1, 4))) == iv(F(3, 4), 1)


def test_restrict():
    half = identity_map().restrict(iv(0, F(1, 2)))
    assert half == PartialMap([Atom(0, F(1, 2), 1, 0)])
    assert half.domain == iv(0, F(1, 2))


def test_glue_contraction_family():
    # the psi^1 family of the truncated element glues into one map
    ce = counterexample(4)
    family = [ce.maps[2 + 2 * n] for n in range(4)]
    glued = glue(family)
    assert glued.domain.measure() == sum(m.domain.measure() for m in family)
    assert iv(0, F(1, 2)).contains(glued.image)


def test_glue_overlap_raises():
    a = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    b = PartialMap([Atom(F(1, 2), 1, 1, 0)])
    with pytest.raises(OverlapError):
        glue([a, b])  # images both cover [1/2,1)


def test_graph_intersect_self():
    m = PartialMap([Atom(0, F(1, 2), 1, F(1, 4))])
    assert graph_intersect(m, m) == m


def test_graph_intersect_disjoint_families():
    a = PartialMap([Atom(0, F(1, 2), 1, F(1, 2))])
    b = PartialMap([Atom(F(1, 2), 1, 1, F(-1, 2))])
    assert graph_intersect(a, b) == EMPTY_MAP


def test_graph_intersect_reflection_vs_identity():
    # they agree only at the fixed point 1/2, which has measure zero
    assert graph_intersect(reflection(), identity_map()) == EMPTY_MAP


def test_overlapping_sources_rejected():
    with pytest.raises(OverlapError):
        PartialMap([Atom(0, F(1, 2), 1, 0), Atom(F(1, 4), F(3, 4), 1, F(1, 4))])


levels = st.integers(min_value=0, max_value=15)


@st.composite
def cell_maps(draw):
    import random
    seed = draw(st.integers(0, 10 ** 9))
    rng = random.Random(seed)
    from conftest import random_cell_map
    return random_cell_map(rng, 3, reflections=True)


@settings(max_examples=60)
@given(cell_maps())
def test_measure_preservation(m):
    assert m.domain.measure() == m.image.measure()


@settings(max_examples=60)
@given(cell_maps())
def test_inverse_composition_is_identity(m):
    assert compose(m.invert(), m) == identity_map().restrict(m.domain)


@settings(max_examples=40)
@given(cell_maps(), st.integers(0, 7), st.integers(0, 7))
def test_image_distributes_over_union(m, i, j):
    a = iv(F(i, 8), F(i + 1, 8))
    b = iv(F(j, 8), F(j + 1, 8))
    lhs = m.image_of(a.union(b))
    assert lhs == m.image_of(a).union(m.image_of(b))
