import pytest

from gsegal.cat import (Functor, Groupoid, discrete_category, inverse_map, one_object, poset_chain,
                        walking_isomorphism)
from gsegal.corpus import enumerate_corpus, g_objects_instances
from gsegal.errors import LevelOutOfRange
from gsegal.gcat import (GCategory, GFunctor, fixed_category, fixed_part, g_objects_category,
                         swap_walking_isomorphism, trivial_action)
from gsegal.group import cyclic_group, subgroups, trivial_subgroup, whole_group
from gsegal.segal import (NotSegal, RefusedCheck, RelativeGCategory, SegalGObject, check_complete, check_segal,
                          classification_diagram, classifying_diagram, comparison_to_base, constant_segal_object,
                          discrete_segal_object, fixed_segal_object, homotopy_category, homotopy_data,
                          homotopy_equivalences, mapping_gspace, segal_map, segal_target)
from gsegal.simplicial import nerve

Z1, Z2 = cyclic_group(1), cyclic_group(2)
CORPUS = enumerate_corpus() + g_objects_instances()
# level 3 keeps the per-module suite quick; the acceptance tests run the same checks to level 4
N = 3


def arrow():
    return trivial_action(poset_chain(1), Z1)


def discrete_bz2(N=4):
    return discrete_segal_object(nerve(trivial_action(one_object(Z2), Z1), N))


def point_object(N=4):
    return constant_segal_object(trivial_action(discrete_category(["p"]), Z1), N)


def test_arrow_levels():
    W = classifying_diagram(arrow(), 3)
    assert [n for n, _ in W.sizes()] == [2, 3, 4, 5]
    assert all(n == m for n, m in W.sizes())
    W.validate()


def test_walking_iso_level_zero():
    W = classifying_diagram(trivial_action(walking_isomorphism(), Z1), 2)
    assert W.sizes()[0] == (2, 4)


def test_g_objects_level_zero():
    GC = g_objects_category(one_object(Z2), Z2)
    W = classifying_diagram(GC, 2)
    assert W.level(0).n_objects == 2
    assert all(row == (0, 1) for row in W.levels[0].obj_act)


def test_segal_map_examples():
    phi = segal_map(classifying_diagram(arrow(), 2), 2).functor
    assert phi.dom.n_objects == phi.cod.n_objects == 4 and phi.is_isomorphism()
    phi = segal_map(point_object(2), 2).functor
    assert phi.cod.n_objects == phi.cod.n_morphisms == 1
    phi = segal_map(discrete_bz2(2), 2).functor
    assert phi.dom.n_objects == 4 and phi.is_isomorphism()
    with pytest.raises(LevelOutOfRange):
        segal_map(point_object(2), 3)
    with pytest.raises(LevelOutOfRange):
        segal_map(point_object(2), 1)


def test_constant_object_is_segal():
    Z = swap_walking_isomorphism(Z2)
    rep = check_segal(constant_segal_object(Z, 3))
    assert rep.passed and len(rep.entries) == 2 * 2


def test_empty_second_level_fails():
    W = classifying_diagram(arrow(), 2)
    empty = GCategory(discrete_category([]), Z1, ((),), ((),))
    faces = tuple(GFunctor(empty, W.levels[1], Functor(empty.base, W.level(1), (), ())) for _ in range(3))
    # no degeneracy can land in an empty level, so this object is checked, not validated
    broken = SegalGObject(Z1, (W.levels[0], W.levels[1], empty), ((), W.faces[1], faces), W.degens)
    rep = check_segal(broken)
    assert not rep.passed
    assert rep.entries[0].n == 2 and rep.entries[0].report.ess_surj_witness is not None


def test_mapping_space_examples():
    W = classifying_diagram(arrow(), 2)
    M = mapping_gspace(W, 0, 1)
    assert len(M.objects) == 1 and M.groupoid.n_morphisms == 1
    E = classifying_diagram(trivial_action(walking_isomorphism(), Z1), 2)
    M = mapping_gspace(E, 0, 1)
    assert len(M.objects) == 1 and M.groupoid.n_morphisms == 1
    assert E.level(1).objects[M.objects[0]] == (("x", "y"), ("u",))
    for inst in CORPUS[:40]:
        W = classifying_diagram(inst.category, 2)
        s0 = W.degens[0][0].functor
        for x in range(W.level(0).n_objects):
            assert s0.obj_map[x] in mapping_gspace(W, x, x).objects


def test_mapping_space_stabilizer():
    W = classifying_diagram(swap_walking_isomorphism(Z2), 2)
    assert len(mapping_gspace(W, 0, 1).stabilizer) == 1
    W = classifying_diagram(g_objects_category(one_object(Z2), Z2), 2)
    M = mapping_gspace(W, 0, 0)
    assert len(M.stabilizer) == 2 and set(M.obj_act) == {0, 1}


def test_homotopy_category_examples():
    ho = homotopy_category(classifying_diagram(arrow(), 3))
    assert ho.base.n_objects == 2 and ho.base.n_morphisms == 3
    ho = homotopy_category(discrete_bz2(3))
    assert ho.base.n_objects == 1 and ho.base.n_morphisms == 2
    assert inverse_map(ho.base) == {0: 0, 1: 1}
    ho = homotopy_category(point_object(3))
    assert ho.base.n_objects == ho.base.n_morphisms == 1


def test_homotopy_category_needs_segal():
    W = classifying_diagram(arrow(), 2)
    empty = GCategory(discrete_category([]), Z1, ((),), ((),))
    faces = tuple(GFunctor(empty, W.levels[1], Functor(empty.base, W.level(1), (), ())) for _ in range(3))
    broken = SegalGObject(Z1, (W.levels[0], W.levels[1], empty), ((), W.faces[1], faces), W.degens)
    with pytest.raises(NotSegal):
        homotopy_category(broken)


def test_homotopy_equivalence_examples():
    heq = homotopy_equivalences(classifying_diagram(arrow(), 2))
    assert sorted(lab[1] for lab in heq.base.objects) == [("id_0",), ("id_1",)]
    for inst in CORPUS[:40]:
        C = inst.category.base
        heq = homotopy_equivalences(classifying_diagram(inst.category, 2))
        isos = {C.morphisms[f] for f in inverse_map(C)}
        assert {lab[1][0] for lab in heq.base.objects} == isos


def test_completeness_examples():
    rep = check_complete(discrete_bz2())
    assert not rep.passed
    entry = rep.entries[0]
    assert entry.subgroup == ['e'] and entry.report.ess_surj_witness is not None
    assert check_segal(discrete_bz2()).passed
    assert check_complete(point_object()).passed


def test_classification_examples():
    for inst in CORPUS[::7]:
        GC = inst.category
        isos = frozenset(inverse_map(GC.base))
        cd = classification_diagram(RelativeGCategory(GC, isos).validate(), 3)
        assert not cd.caveat
        assert cd.diagram.tables() == classifying_diagram(GC, 3).tables()
    E = trivial_action(walking_isomorphism(), Z1)
    cd = classification_diagram(RelativeGCategory(E, frozenset(range(4))).validate(), 3)
    assert not cd.caveat and check_complete(cd.checked()).passed
    A = arrow()
    cd = classification_diagram(RelativeGCategory(A, frozenset(range(3))).validate(), 3)
    assert cd.caveat
    assert cd.diagram.sizes()[0] == (2, 3)
    with pytest.raises(RefusedCheck):
        cd.checked()
    with pytest.raises(RefusedCheck):
        check_segal(cd.diagram)


def test_weq_must_contain_identities():
    from gsegal.errors import ValidationError
    A = arrow()
    with pytest.raises(ValidationError):
        RelativeGCategory(A, frozenset([A.base.mor_index["0<1"]])).validate()


def canonical(W: SegalGObject):
    """Tables of W with indices replaced by labels, so differently ordered builds compare equal."""
    out = []
    for k, L in enumerate(W.levels):
        C = L.base
        out.append((sorted(C.objects),
                    sorted((C.morphisms[f], C.objects[C.src[f]], C.objects[C.tgt[f]]) for f in range(C.n_morphisms))))
        # composition tables grow fast, so they are compared on the low levels only
        if k <= 2:
            out.append(sorted((C.morphisms[f], C.morphisms[g], C.morphisms[h]) for (f, g), h in C.comp.items()))
    for k in range(1, W.N + 1):
        for F in W.faces[k]:
            dom, cod = F.dom.base, F.cod.base
            out.append(sorted((dom.morphisms[f], cod.morphisms[F.functor.mor_map[f]])
                              for f in range(dom.n_morphisms)))
    for k in range(W.N):
        for F in W.degens[k]:
            dom, cod = F.dom.base, F.cod.base
            out.append(sorted((dom.morphisms[f], cod.morphisms[F.functor.mor_map[f]])
                              for f in range(dom.n_morphisms)))
    return out


@pytest.mark.parametrize("inst", CORPUS, ids=lambda i: i.name)
def test_corpus_invariants(inst):
    GC = inst.category
    W = classifying_diagram(GC, N)
    W.validate(deep=False)
    seen = set()
    for H in subgroups(GC.group):
        # subgroups with the same fixed data give the same fixed object
        key = tuple(tuple(map(tuple, L.fixed_indices(H))) for L in W.levels)
        if key in seen:
            continue
        seen.add(key)
        WH = fixed_segal_object(W, H)
        # equivariant nerve identity
        fixed = fixed_category(GC, H)
        direct = classifying_diagram(GCategory(fixed, Z1, (tuple(range(fixed.n_objects)),),
                                               (tuple(range(fixed.n_morphisms)),)), N)
        assert canonical(WH) == canonical(direct)
        # fixed points commute with the iterated pullback
        for n in range(2, N + 1):
            T = segal_target(W, n).category
            TH, _, _ = fixed_part(T, H)
            PH = segal_target(WH, n).category.base
            assert set(TH.objects) == set(PH.objects)
            assert set(TH.morphisms) == set(PH.morphisms)
    rep = check_segal(W)
    assert rep.passed and all(e.strict for e in rep.entries)
    data = homotopy_data(W)
    assert data.ambiguities == [] and data.missing == []
    heq = homotopy_equivalences(W)
    keep = set(heq.base.objects)
    L1 = W.levels[1]
    for g in range(GC.group.order):
        assert {L1.base.objects[L1.obj_act[g][L1.base.obj_index[lab]]] for lab in keep} == keep
    assert check_complete(W).passed
    F = comparison_to_base(W, GC)
    F.validate()


def test_fixed_segal_object_of_trivial_subgroup_is_whole():
    W = classifying_diagram(swap_walking_isomorphism(Z2), 3)
    assert canonical(fixed_segal_object(W, trivial_subgroup(Z2))) == canonical(W)
    assert fixed_segal_object(W, whole_group(Z2)).sizes() == [(0, 0)] * 4


def test_levels_are_groupoids():
    for inst in CORPUS[::9]:
        assert all(isinstance(L.base, Groupoid) for L in classifying_diagram(inst.category, 2).levels)
