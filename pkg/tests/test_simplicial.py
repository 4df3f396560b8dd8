import pytest

from gsegal.cat import discrete_category, poset_chain
from gsegal.corpus import enumerate_corpus, g_objects_instances
from gsegal.errors import TruncationExceeded
from gsegal.gcat import fixed_category, swap_walking_isomorphism, trivial_action
from gsegal.group import cyclic_group, subgroups, trivial_subgroup, whole_group
from gsegal.simplicial import (SimplicialError, TruncatedSSet, fixed_ssets, nerve, simplicial_identity_failures,
                               spine, standard_simplex, sub_sset, walking_iso_nerve)

Z2 = cyclic_group(2)
CORPUS = enumerate_corpus() + g_objects_instances()


def test_standard_simplex_examples():
    D0 = standard_simplex(0, 4)
    assert D0.sizes() == [1] * 5
    assert all(D0.nondegenerate(k) == [] for k in range(1, 5))
    D1 = standard_simplex(1, 3)
    assert D1.levels[1] == ((0, 0), (0, 1), (1, 1))
    assert len(standard_simplex(3, 2).nondegenerate(1)) == 6
    with pytest.raises(ValueError):
        standard_simplex(-1)


def test_spine_examples():
    S1, inc1 = spine(1, 3)
    assert S1.levels == standard_simplex(1, 3).levels
    S3, inc3 = spine(3, 4)
    assert len(S3.levels[0]) == 4
    assert [S3.levels[1][x] for x in S3.nondegenerate(1)] == [(0, 1), (1, 2), (2, 3)]
    assert all(S3.nondegenerate(k) == [] for k in range(2, 5))
    S2, _ = spine(2, 3)
    assert len(S2.nondegenerate(0)) + len(S2.nondegenerate(1)) == 5
    assert (0, 2) not in S2.levels[1]
    for inc in (inc1, inc3):
        inc.validate()
        assert inc.is_levelwise_injective()


def test_walking_iso_nerve_sizes():
    assert walking_iso_nerve(4).sizes() == [2 ** (k + 1) for k in range(5)]


def test_identities_hold_for_constructions():
    for X in [standard_simplex(2, 4), standard_simplex(3, 4), spine(3, 4)[0], walking_iso_nerve(4)]:
        X.validate()


def test_broken_face_detected():
    X = standard_simplex(1, 2)
    faces = list(X.faces)
    faces[2] = (faces[2][1],) + faces[2][1:]
    bad = TruncatedSSet(X.levels, tuple(faces), X.degens)
    assert next(simplicial_identity_failures(bad.faces, bad.degens, bad.sizes()), None) is not None
    with pytest.raises(SimplicialError):
        bad.validate()


def test_sub_sset_must_be_closed():
    X = standard_simplex(1, 1)
    with pytest.raises(SimplicialError):
        sub_sset(X, [[0], [1]])


def test_nerve_examples():
    assert nerve(trivial_action(poset_chain(1), Z2), 2).sset.sizes() == [2, 3, 4]
    D = nerve(trivial_action(discrete_category("abc"), Z2), 3).sset
    assert D.sizes() == [3] * 4 and all(D.nondegenerate(k) == [] for k in range(1, 4))
    swap = nerve(swap_walking_isomorphism(Z2), 4)
    swap.validate()
    assert fixed_ssets(swap, whole_group(Z2)).sizes() == [0] * 5
    with pytest.raises(TruncationExceeded):
        nerve(swap_walking_isomorphism(Z2), 5)


def test_fixed_ssets_trivial_cases():
    X = nerve(swap_walking_isomorphism(Z2), 3)
    assert fixed_ssets(X, trivial_subgroup(Z2)).levels == X.sset.levels
    T = nerve(trivial_action(poset_chain(2), Z2), 3)
    assert fixed_ssets(T, whole_group(Z2)).levels == T.sset.levels


@pytest.mark.parametrize("inst", CORPUS, ids=lambda i: i.name)
def test_fixed_nerve_is_nerve_of_fixed_category(inst):
    GC = inst.category
    X = nerve(GC, 3).validate()
    for H in subgroups(GC.group):
        F = fixed_ssets(X, H)
        F.validate()
        sub = trivial_action(fixed_category(GC, H), GC.group)
        assert [sorted(lv) for lv in F.levels] == [sorted(lv) for lv in nerve(sub, 3).sset.levels]
