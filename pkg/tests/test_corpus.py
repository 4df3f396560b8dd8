import pytest

from gsegal.cat import discrete_category, poset_chain, walking_isomorphism
from gsegal.corpus import (BoundsTooLarge, CorpusBounds, acceptance_corpus, actions_up_to_conjugacy,
                           category_automorphisms, category_library, enumerate_corpus, random_cospans)
from gsegal.group import cyclic_group, symmetric_group

from oracles import functors


def names(instances):
    return [i.name for i in instances]


def test_deterministic():
    assert names(enumerate_corpus()) == names(enumerate_corpus())
    a, b = enumerate_corpus()[17].category, enumerate_corpus()[17].category
    assert (a.obj_act, a.mor_act) == (b.obj_act, b.mor_act)


def test_zero_bounds_give_nothing():
    assert enumerate_corpus(CorpusBounds(0, 0, 0)) == []
    assert enumerate_corpus(CorpusBounds(6, 0, 12)) == []


def test_bounds_too_large():
    with pytest.raises(BoundsTooLarge):
        enumerate_corpus(CorpusBounds(7, 3, 12))
    with pytest.raises(BoundsTooLarge):
        CorpusBounds(6, 4, 12).check()
    with pytest.raises(ValueError):
        CorpusBounds(-1, 3, 12).check()


def test_frozen_counts():
    assert len(enumerate_corpus(CorpusBounds(4, 3, 12))) == 75
    assert len(enumerate_corpus()) == 115
    assert len(acceptance_corpus()) == 120


def test_required_families_present():
    got = names(acceptance_corpus())
    assert any(n.endswith("/Z1/0") for n in got)
    assert "E/Z2/1" in got or "E/Z2/0" in got
    assert any("/Z3/" in n for n in got) and any("/S3/" in n for n in got)
    assert any(n.startswith("Gobj(") for n in got)
    swaps = [i for i in acceptance_corpus() if i.name.startswith("E/Z2/")]
    assert any(i.category.obj_act[1] == (1, 0) for i in swaps)


@pytest.mark.parametrize("name,C", category_library())
def test_automorphisms_match_functor_enumeration(name, C):
    if C.n_morphisms > 6:
        pytest.skip("oracle too slow")
    autos = [(o, m) for o, m in functors(C, C) if len(set(m)) == C.n_morphisms]
    assert sorted(category_automorphisms(C)) == sorted(autos)


def test_actions_up_to_conjugacy_examples():
    assert len(actions_up_to_conjugacy(walking_isomorphism(), cyclic_group(2))) == 2
    assert len(actions_up_to_conjugacy(poset_chain(2), symmetric_group(3))) == 1
    # S3 maps onto Z/2 in one way, and Aut of two points is Z/2
    assert len(actions_up_to_conjugacy(discrete_category("ab"), symmetric_group(3))) == 2
    assert len(actions_up_to_conjugacy(discrete_category("ab"), cyclic_group(3))) == 1


def test_instances_validate():
    for inst in acceptance_corpus():
        inst.category.validate()
        assert inst.category.base.n_morphisms <= 12 and inst.category.group.order <= 6


def test_random_cospans_deterministic_and_valid():
    first, again = random_cospans(20, seed=3), random_cospans(20, seed=3)
    for c, d in zip(first, again):
        assert c.p.functor.obj_map == d.p.functor.obj_map and c.q.functor.mor_map == d.q.functor.mor_map
    for c in random_cospans(100):
        c.p.validate()
        c.q.validate()
        assert c.p.dom.base.n_objects <= 6 and c.q.dom.base.n_objects <= 6
        assert c.p.cod is c.q.cod
    assert len({c.group.order for c in random_cospans(100)}) > 3
