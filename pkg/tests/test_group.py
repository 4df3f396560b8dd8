import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gsegal.group import (BadIdentity, GSet, GSetError, GroupError, NoInverse, NonAssociative, Subgroup,
                          adjunction_check, conjugacy_class_representatives, coset_gset, cyclic_group,
                          enumerate_gmaps, fixed_points, klein_four, product_with_set, regular_gset,
                          small_groups, subgroups, symmetric_group, trivial_gset, trivial_subgroup,
                          validate_group, whole_group)

from oracles import equivariant_functions, labelled_actions, subgroups_by_subsets

S3 = symmetric_group(3)
Z2 = cyclic_group(2)


def subgroup_of_order(G, k, pick=0):
    return [H for H in subgroups(G) if len(H) == k][pick]


def test_z2_table():
    G = validate_group([[0, 1], [1, 0]], 0, names=["e", "s"])
    assert G.order == 2
    assert G.inv(1) == 1


def test_idempotent_non_identity_rejected():
    with pytest.raises((BadIdentity, NoInverse)):
        validate_group([[0, 1], [1, 1]], 0)


def test_non_associative_rejected():
    # a Latin square with a unit that is not associative
    table = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(NonAssociative) as info:
        validate_group(table, 0)
    assert info.value.witness is not None


def test_missing_inverse_rejected():
    with pytest.raises(NoInverse):
        validate_group([[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0)


def test_s3_from_permutation_composition():
    perms = list(itertools.permutations(range(3)))
    table = [[perms.index(tuple(p[q[i]] for i in range(3))) for q in perms] for p in perms]
    G = validate_group(table)
    assert G.order == 6
    assert len([g for g in range(6) if G.mult[g][g] == G.identity]) == 4


def test_subgroup_counts():
    assert len(subgroups(Z2)) == 2
    assert len(subgroups(cyclic_group(1))) == 1
    sizes = sorted(len(H) for H in subgroups(S3))
    assert sizes == [1, 2, 2, 2, 3, 6]


@pytest.mark.parametrize("name,G", small_groups(6) + [("Z8", cyclic_group(8))])
def test_subgroups_match_subset_closure(name, G):
    found = {H.member_set for H in subgroups(G)}
    assert found == set(subgroups_by_subsets(G.mult, G.identity))
    for H in subgroups(G):
        H.validate()


def test_large_group_path_agrees_with_subsets():
    # order 9 takes the cyclic-join path
    G = cyclic_group(9)
    assert {H.member_set for H in subgroups(G)} == set(subgroups_by_subsets(G.mult, G.identity))


def test_group_cap():
    with pytest.raises(GroupError):
        cyclic_group(25)


def test_coset_examples():
    regular = coset_gset(Z2, trivial_subgroup(Z2))
    assert len(regular.points) == 2 and regular.action[1] == (1, 0)
    point = coset_gset(Z2, whole_group(Z2))
    assert point.action == ((0,), (0,))
    X = coset_gset(S3, subgroup_of_order(S3, 3))
    assert len(X.points) == 2
    for g in range(6):
        is_transposition = S3.mult[g][g] == S3.identity and g != S3.identity
        assert X.action[g] == ((1, 0) if is_transposition else (0, 1))


def test_fixed_point_examples():
    assert fixed_points(regular_gset(Z2), whole_group(Z2)) == ()
    X = coset_gset(S3, subgroup_of_order(S3, 3))
    assert fixed_points(X, trivial_subgroup(S3)) == (0, 1)
    H = subgroup_of_order(S3, 2)
    assert len(fixed_points(coset_gset(S3, H), H)) == 1


def test_gmap_examples():
    R = regular_gset(Z2)
    assert len(enumerate_gmaps(R, R)) == 2
    assert len(enumerate_gmaps(R, trivial_gset(Z2, ["*"]))) == 1
    for X in [R, coset_gset(S3, subgroup_of_order(S3, 2))]:
        G = X.group
        assert len(enumerate_gmaps(trivial_gset(G, ["*"]), X)) == len(fixed_points(X, whole_group(G)))


def test_invalid_action_rejected():
    bad = GSet(Z2, (0, 1), ((0, 1), (0, 0)))
    with pytest.raises(GSetError):
        bad.validate()


@pytest.mark.parametrize("name,G", small_groups(4))
def test_gmaps_match_filter_of_all_functions(name, G):
    for n, m in [(2, 2), (3, 2), (2, 3), (4, 2)]:
        for ax in labelled_actions(G, n):
            for ay in labelled_actions(G, m)[:4]:
                X, Y = GSet(G, tuple(range(n)), ax), GSet(G, tuple(range(m)), ay)
                assert enumerate_gmaps(X, Y) == equivariant_functions(X, Y)


def test_adjunction_examples():
    R = regular_gset(Z2)
    rep = adjunction_check(Z2, trivial_subgroup(Z2), 1, R)
    assert rep.passed and rep.details["left_count"] == rep.details["right_count"] == 2
    for X in [R, trivial_gset(Z2, "ab")]:
        rep = adjunction_check(Z2, whole_group(Z2), 1, X)
        assert rep.passed and rep.details["left_count"] == len(fixed_points(X, whole_group(Z2)))
    H = subgroup_of_order(S3, 2)
    rep = adjunction_check(S3, H, 2, coset_gset(S3, H))
    assert rep.passed and rep.details["left_count"] == 1


def test_conjugacy_representatives_s3():
    assert sorted(len(H) for H in conjugacy_class_representatives(S3)) == [1, 2, 3, 6]
    assert sorted(len(H) for H in conjugacy_class_representatives(klein_four())) == [1, 2, 2, 2, 4]


groups = st.sampled_from([G for _, G in small_groups(6)])


@settings(max_examples=60, deadline=None)
@given(groups, st.data())
def test_fixed_points_reverse_inclusion(G, data):
    subs = subgroups(G)
    H1 = data.draw(st.sampled_from(subs))
    H2 = data.draw(st.sampled_from([H for H in subs if H1.issubset(H)]))
    K = data.draw(st.sampled_from(subs))
    X = product_with_set(coset_gset(G, K), data.draw(st.integers(0, 2)))
    assert set(fixed_points(X, H2)) <= set(fixed_points(X, H1))


@settings(max_examples=60, deadline=None)
@given(groups, st.data())
def test_lemma_cardinality(G, data):
    H = data.draw(st.sampled_from(subgroups(G)))
    K = data.draw(st.sampled_from(subgroups(G)))
    na = data.draw(st.integers(0, 3))
    X = coset_gset(G, K)
    source = product_with_set(coset_gset(G, H), na)
    assert len(enumerate_gmaps(source, X)) == len(fixed_points(X, H)) ** na


def test_subgroup_validation_rejects_non_subgroups():
    r = next(g for g in range(6) if g != S3.identity and S3.mult[g][g] != S3.identity)
    with pytest.raises(GroupError):
        Subgroup(S3, (S3.identity, r)).validate()
    with pytest.raises(GroupError):
        Subgroup(S3, (r,)).validate()
