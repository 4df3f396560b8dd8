"""Segal objects in G-groupoids and their per-subgroup Segal and completeness checks.

A level of a simplicial G-space is represented by a groupoid whose classifying
space it stands for; a map of levels is a weak equivalence exactly when the
underlying functor is an equivalence of groupoids.  Fixed points are taken
strictly, level by level.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from networkx.utils import UnionFind

from .cat import (DEFAULT_MAX_LEVEL, EquivalenceReport, FinCat, Functor, Groupoid, chain_category,
                  chain_degeneracy, chain_face, check_equivalence, discrete_category, identity_functor,
                  inverse_map, subcategory, validate_category)
from .errors import LevelOutOfRange, TruncationExceeded, ValidationError
from .gcat import GCategory, GFunctor, fixed_part, gpullback, restrict_fixed
from .group import FiniteGroup, Subgroup, cyclic_group, subgroups, trivial_subgroup
from .simplicial import TruncatedSGSet, simplicial_identity_failures


class SegalError(ValueError):
    pass


class NotSegal(SegalError):
    pass


class RefusedCheck(SegalError):
    """Equivalence checks requested on levels that are not groupoids."""


@dataclass(frozen=True)
class SegalGObject:
    """Levels ``W_0..W_N`` as G-groupoids with face and degeneracy G-functors.

    ``faces[k][i]: W_k -> W_{k-1}`` (``faces[0]`` is empty) and
    ``degens[k][i]: W_k -> W_{k+1}`` for ``k < N``.
    """

    group: FiniteGroup = field(repr=False)
    levels: tuple[GCategory, ...] = field(repr=False)
    faces: tuple = field(repr=False)
    degens: tuple = field(repr=False)

    __hash__ = object.__hash__

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def level(self, k: int) -> FinCat:
        return self.levels[k].base

    def sizes(self) -> list[tuple[int, int]]:
        return [(L.base.n_objects, L.base.n_morphisms) for L in self.levels]

    def is_groupoidal(self) -> bool:
        return all(isinstance(L.base, Groupoid) for L in self.levels)

    def tables(self) -> tuple:
        """Every table of the object, for exact comparison."""
        def cat(L: GCategory):
            C = L.base
            return (C.objects, C.morphisms, C.src, C.tgt, C.ids, tuple(sorted(C.comp.items())),
                    getattr(C, "inv", None), L.obj_act, L.mor_act)

        def fun(F: GFunctor):
            return F.functor.obj_map, F.functor.mor_map

        return (tuple(cat(L) for L in self.levels),
                tuple(tuple(fun(F) for F in fs) for fs in self.faces),
                tuple(tuple(fun(F) for F in ss) for ss in self.degens))

    def validate(self, deep: bool = True) -> SegalGObject:
        """Simplicial identities on objects and morphisms, and equivariance.

        ``deep`` additionally checks every level category, action and functor
        axiom exhaustively.
        """
        sizes_o = [L.base.n_objects for L in self.levels]
        sizes_m = [L.base.n_morphisms for L in self.levels]
        fo = [tuple(F.functor.obj_map for F in fs) for fs in self.faces]
        fm = [tuple(F.functor.mor_map for F in fs) for fs in self.faces]
        so = [tuple(F.functor.obj_map for F in ss) for ss in self.degens]
        sm = [tuple(F.functor.mor_map for F in ss) for ss in self.degens]
        for bad in simplicial_identity_failures(fo, so, sizes_o):
            raise ValidationError(f"simplicial identity fails on objects: {bad}", witness=bad)
        for bad in simplicial_identity_failures(fm, sm, sizes_m):
            raise ValidationError(f"simplicial identity fails on morphisms: {bad}", witness=bad)
        for F in [F for fs in self.faces for F in fs] + [F for ss in self.degens for F in ss]:
            if deep:
                F.validate()
            else:
                _check_equivariant(F)
        if deep:
            for L in self.levels:
                L.base.validate()
                L.validate()
        return self


def _check_equivariant(F: GFunctor) -> None:
    om, mm = F.functor.obj_map, F.functor.mor_map
    for g in range(F.dom.group.order):
        od, oc, md, mc = F.dom.obj_act[g], F.cod.obj_act[g], F.dom.mor_act[g], F.cod.mor_act[g]
        if any(om[od[x]] != oc[om[x]] for x in range(len(om))) or \
                any(mm[md[f]] != mc[mm[f]] for f in range(len(mm))):
            raise ValidationError("structure map does not commute with the action", witness=g)


@dataclass(frozen=True)
class RelativeGCategory:
    base: GCategory = field(repr=False)
    weq: frozenset

    def validate(self) -> RelativeGCategory:
        C = self.base.base
        w = self.weq
        if any(not 0 <= f < C.n_morphisms for f in w):
            raise ValidationError("weak equivalence index out of range")
        for x, i in enumerate(C.ids):
            if i not in w:
                raise ValidationError(f"identity of {C.objects[x]!r} is not a weak equivalence", witness=i)
        for f in w:
            for g in C.out_of[C.tgt[f]]:
                if g in w and C.comp[(f, g)] not in w:
                    raise ValidationError("weak equivalences not closed under composition", witness=(f, g))
        for g in range(self.base.group.order):
            for f in w:
                if self.base.mor_act[g][f] not in w:
                    raise ValidationError("weak equivalences not closed under the action", witness=(g, f))
        return self


def _chain_diagram(C: GCategory, N: int, allowed, max_level: int) -> SegalGObject:
    """Levels ``n -> (functors [n] -> C, ladders with components in allowed)``."""
    if N > max_level:
        raise TruncationExceeded(f"level {N} exceeds truncation {max_level}")
    base, G = C.base, C.group
    ccs = [chain_category(base, n, allowed, max_level) for n in range(N + 1)]
    levels = []
    for cc in ccs:
        obj_act, mor_act = [], []
        for g in range(G.order):
            oa, ma = C.obj_act[g], C.mor_act[g]
            omap = tuple(cc.obj_at[(tuple(oa[x] for x in vs), tuple(ma[f] for f in es))] for vs, es in cc.obj_keys)
            obj_act.append(omap)
            mor_act.append(tuple(cc.mor_at[(omap[a], omap[b], tuple(ma[f] for f in lad))] for a, b, lad in cc.mor_keys))
        levels.append(GCategory(cc.category, G, tuple(obj_act), tuple(mor_act)))

    faces = [()]
    for k in range(1, N + 1):
        hi, lo = ccs[k], ccs[k - 1]
        row = []
        for i in range(k + 1):
            omap = tuple(lo.obj_at[chain_face(base, key, i)] for key in hi.obj_keys)
            mmap = tuple(lo.mor_at[(omap[a], omap[b], lad[:i] + lad[i + 1:])] for a, b, lad in hi.mor_keys)
            row.append(GFunctor(levels[k], levels[k - 1], Functor(hi.category, lo.category, omap, mmap)))
        faces.append(tuple(row))
    degens = []
    for k in range(N):
        lo, hi = ccs[k], ccs[k + 1]
        row = []
        for i in range(k + 1):
            omap = tuple(hi.obj_at[chain_degeneracy(base, key, i)] for key in lo.obj_keys)
            mmap = tuple(hi.mor_at[(omap[a], omap[b], lad[:i + 1] + lad[i:])] for a, b, lad in lo.mor_keys)
            row.append(GFunctor(levels[k], levels[k + 1], Functor(lo.category, hi.category, omap, mmap)))
        degens.append(tuple(row))
    return SegalGObject(G, tuple(levels), tuple(faces), tuple(degens))


def classifying_diagram(C: GCategory, N: int = DEFAULT_MAX_LEVEL,
                        max_level: int = DEFAULT_MAX_LEVEL) -> SegalGObject:
    """Level ``n`` is ``iso(C^[n])`` with the induced action."""
    return _chain_diagram(C, N, inverse_map(C.base).keys(), max_level)


@dataclass(frozen=True)
class ClassificationDiagram:
    diagram: SegalGObject = field(repr=False)
    caveat: bool

    def checked(self) -> SegalGObject:
        """The diagram, if it is a genuine Segal object in groupoids."""
        if self.caveat:
            raise RefusedCheck("weak equivalences include non-invertible maps; "
                               "equivalence checks on this diagram are refused")
        return self.diagram


def classification_diagram(M: RelativeGCategory, N: int = DEFAULT_MAX_LEVEL,
                           max_level: int = DEFAULT_MAX_LEVEL) -> ClassificationDiagram:
    """Level ``n`` is ``we(M)^[n]``: all functors ``[n] -> M`` and levelwise-weq ladders."""
    W = _chain_diagram(M.base, N, M.weq, max_level)
    return ClassificationDiagram(W, caveat=not W.is_groupoidal())


def discrete_segal_object(X: TruncatedSGSet) -> SegalGObject:
    """Each level of a simplicial G-set as a discrete groupoid."""
    S = X.sset
    levels = []
    for k, lv in enumerate(S.levels):
        D = discrete_category(lv)
        acts = X.actions[k]
        levels.append(GCategory(D, X.group, tuple(acts), tuple(acts)))

    def fun(dom, cod, table):
        return GFunctor(levels[dom], levels[cod], Functor(levels[dom].base, levels[cod].base, table, table))

    faces = [()] + [tuple(fun(k, k - 1, S.faces[k][i]) for i in range(k + 1)) for k in range(1, S.N + 1)]
    degens = [tuple(fun(k, k + 1, S.degens[k][i]) for i in range(k + 1)) for k in range(S.N)]
    return SegalGObject(X.group, tuple(levels), tuple(faces), tuple(degens))


def constant_segal_object(Z: GCategory, N: int = DEFAULT_MAX_LEVEL) -> SegalGObject:
    """Every level ``Z``, every structure map the identity."""
    ident = GFunctor(Z, Z, identity_functor(Z.base))
    return SegalGObject(Z.group, (Z,) * (N + 1), ((),) + tuple((ident,) * (k + 1) for k in range(1, N + 1)),
                        tuple((ident,) * (k + 1) for k in range(N)))


def edge_functor(W: SegalGObject, n: int, i: int) -> GFunctor:
    """``W(alpha_i): W_n -> W_1`` for the edge ``(i, i+1)``: outer faces only."""
    F = None
    for m in range(n, i + 1, -1):
        F = W.faces[m][m] if F is None else F.then(W.faces[m][m])
    for m in range(i + 1, 1, -1):
        F = W.faces[m][0] if F is None else F.then(W.faces[m][0])
    if F is None:
        L = W.levels[1]
        F = GFunctor(L, L, identity_functor(L.base))
    return F


@dataclass(frozen=True)
class SegalTarget:
    """``W_1 x_{W_0} ... x_{W_0} W_1`` with the lookup tables of each binary step."""

    category: GCategory = field(repr=False)
    obj_steps: tuple = field(repr=False)
    mor_steps: tuple = field(repr=False)


def segal_target(W: SegalGObject, n: int) -> SegalTarget:
    W1 = W.levels[1]
    d0, d1 = W.faces[1][0], W.faces[1][1]
    T = W1
    last = GFunctor(W1, W1, identity_functor(W1.base))
    obj_steps, mor_steps = [], []
    for _ in range(1, n):
        T, pt, pw = gpullback(last.then(d0), d1)
        obj_steps.append({pr: k for k, pr in enumerate(zip(pt.functor.obj_map, pw.functor.obj_map))})
        mor_steps.append({pr: k for k, pr in enumerate(zip(pt.functor.mor_map, pw.functor.mor_map))})
        last = pw
    return SegalTarget(T, tuple(obj_steps), tuple(mor_steps))


def segal_map(W: SegalGObject, n: int) -> GFunctor:
    """``phi_n: W_n -> W_1 x_{W_0} ... x_{W_0} W_1`` with components ``W(alpha_i)``."""
    if not 2 <= n <= W.N:
        raise LevelOutOfRange(f"Segal maps exist for 2 <= n <= {W.N}, got {n}")
    target = segal_target(W, n)
    edges = [edge_functor(W, n, i).functor for i in range(n)]

    def assemble(tables, steps, count):
        out = []
        for x in range(count):
            t = tables[0][x]
            for step, table in zip(steps, tables[1:]):
                t = step[(t, table[x])]
            out.append(t)
        return tuple(out)

    Wn = W.levels[n].base
    omap = assemble([e.obj_map for e in edges], target.obj_steps, Wn.n_objects)
    mmap = assemble([e.mor_map for e in edges], target.mor_steps, Wn.n_morphisms)
    return GFunctor(W.levels[n], target.category, Functor(Wn, target.category.base, omap, mmap))


def fixed_segal_object(W: SegalGObject, H: Subgroup) -> SegalGObject:
    """``W^H`` levelwise, as a Segal object over the trivial group."""
    E = cyclic_group(1)
    levels = []
    for L in W.levels:
        C = fixed_part(L, H)[0]
        levels.append(GCategory(C, E, (tuple(range(C.n_objects)),), (tuple(range(C.n_morphisms)),)))

    def restrict(F: GFunctor, dom, cod):
        return GFunctor(levels[dom], levels[cod], restrict_fixed(F, H))

    faces = [()] + [tuple(restrict(F, k, k - 1) for F in W.faces[k]) for k in range(1, W.N + 1)]
    degens = [tuple(restrict(F, k, k + 1) for F in W.degens[k]) for k in range(len(W.degens))]
    return SegalGObject(E, tuple(levels), tuple(faces), tuple(degens))


@dataclass
class SegalEntry:
    subgroup: list
    n: int
    report: EquivalenceReport
    strict: bool

    def to_dict(self) -> dict:
        return {"subgroup": [str(x) for x in self.subgroup], "n": self.n, "strict_isomorphism": self.strict,
                **self.report.to_dict()}


@dataclass
class SegalReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.report.verdict for e in self.entries)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "entries": [e.to_dict() for e in self.entries]}


@dataclass
class CompletenessEntry:
    subgroup: list
    report: EquivalenceReport

    def to_dict(self) -> dict:
        return {"subgroup": [str(x) for x in self.subgroup], **self.report.to_dict()}


@dataclass
class CompletenessReport:
    entries: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(e.report.verdict for e in self.entries)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "entries": [e.to_dict() for e in self.entries]}


def _require_groupoids(W: SegalGObject) -> None:
    if not W.is_groupoidal():
        raise RefusedCheck("levels are not groupoids; equivalence checks are refused")


def check_segal(W: SegalGObject, subgroup_list=None, levels=None) -> SegalReport:
    """Check ``phi_n^H`` is an equivalence for each subgroup ``H`` and level ``n``.

    The target of ``phi_n^H`` is the iterated pullback of the fixed levels,
    which equals the fixed points of the iterated pullback.
    """
    _require_groupoids(W)
    if subgroup_list is None:
        subgroup_list = subgroups(W.group)
    if levels is None:
        levels = range(2, W.N + 1)
    report = SegalReport()
    for H in subgroup_list:
        WH = W if len(H) == 1 else fixed_segal_object(W, H)
        for n in levels:
            phi = segal_map(WH, n).functor
            report.entries.append(SegalEntry(H.names, n, check_equivalence(phi), phi.is_isomorphism()))
    return report


@dataclass(frozen=True)
class MappingSpace:
    """The fiber of ``(d_1, d_0): W_1 -> W_0 x W_0`` over ``(x, y)``.

    Only the stabilizer of the pair acts; ``obj_act``/``mor_act`` are keyed by
    its elements.  ``objects`` lists the fiber's objects as indices into ``W_1``.
    """

    groupoid: Groupoid = field(repr=False)
    x: int
    y: int
    stabilizer: Subgroup
    objects: tuple[int, ...]
    morphisms: tuple[int, ...] = field(repr=False)
    obj_act: dict = field(repr=False)
    mor_act: dict = field(repr=False)


def mapping_gspace(W: SegalGObject, x: int, y: int) -> MappingSpace:
    W0, W1 = W.levels[0], W.levels[1]
    src, tgt = W.faces[1][1].functor, W.faces[1][0].functor
    ix, iy = W0.base.ids[x], W0.base.ids[y]
    objs = [f for f in range(W1.base.n_objects) if src.obj_map[f] == x and tgt.obj_map[f] == y]
    mors = [m for m in range(W1.base.n_morphisms) if src.mor_map[m] == ix and tgt.mor_map[m] == iy]
    sub, opos, mpos = subcategory(W1.base, objs, mors, groupoid=isinstance(W1.base, Groupoid))
    stab = Subgroup(W.group, tuple(g for g in range(W.group.order)
                                   if W0.obj_act[g][x] == x and W0.obj_act[g][y] == y))
    obj_act = {g: tuple(opos[W1.obj_act[g][f]] for f in objs) for g in stab}
    mor_act = {g: tuple(mpos[W1.mor_act[g][m]] for m in mors) for g in stab}
    return MappingSpace(sub, x, y, stab, tuple(objs), tuple(mors), obj_act, mor_act)


@dataclass
class HomotopyData:
    """Classes of ``W_1`` objects under fiberwise isomorphism and their composition."""

    class_of: dict
    classes: list
    composition: dict
    ambiguities: list
    missing: list


def homotopy_data(W: SegalGObject) -> HomotopyData:
    W0, W1, W2 = W.level(0), W.level(1), W.level(2)
    src, tgt = W.faces[1][1].functor, W.faces[1][0].functor
    uf = UnionFind(range(W1.n_objects))
    for m in range(W1.n_morphisms):
        a = W1.src[m]
        if src.mor_map[m] == W0.ids[src.obj_map[a]] and tgt.mor_map[m] == W0.ids[tgt.obj_map[a]]:
            uf.union(a, W1.tgt[m])
    classes = sorted(tuple(sorted(c)) for c in uf.to_sets())
    class_of = {f: k for k, c in enumerate(classes) for f in c}

    first, second, middle = (W.faces[2][2].functor, W.faces[2][0].functor, W.faces[2][1].functor)
    results = defaultdict(set)
    for s in range(W2.n_objects):
        key = (class_of[first.obj_map[s]], class_of[second.obj_map[s]])
        results[key].add(class_of[middle.obj_map[s]])
    composition = {key: min(v) for key, v in results.items()}
    ambiguities = sorted(key for key, v in results.items() if len(v) > 1)

    by_src = defaultdict(list)
    for k, c in enumerate(classes):
        by_src[src.obj_map[c[0]]].append(k)
    missing = []
    for a, c in enumerate(classes):
        for b in by_src[tgt.obj_map[c[0]]]:
            if (a, b) not in composition:
                missing.append((a, b))
    return HomotopyData(class_of, classes, composition, ambiguities, missing)


def _require_segal(W: SegalGObject, levels) -> None:
    _require_groupoids(W)
    if W.N < 2:
        raise NotSegal("need at least levels 0..2")
    rep = check_segal(W, [trivial_subgroup(W.group)], [n for n in levels if n <= W.N])
    if not rep.passed:
        raise NotSegal("the underlying object fails the Segal condition")


def homotopy_category(W: SegalGObject) -> GCategory:
    """Objects of ``W_0``; morphisms the classes of the mapping spaces.

    Composition takes a strict preimage under ``phi_2`` of representatives and
    its edge ``d_1``; that every preimage gives the same class is checked, and
    the result is validated as a G-category.
    """
    _require_segal(W, (2, 3))
    data = homotopy_data(W)
    if data.ambiguities:
        raise SegalError(f"composition is not well defined on classes {data.ambiguities[0]}")
    if data.missing:
        raise SegalError(f"no strict phi_2 preimage for classes {data.missing[0]}")
    W0, W1 = W.level(0), W.level(1)
    src, tgt = W.faces[1][1].functor, W.faces[1][0].functor
    s0 = W.degens[0][0].functor
    cls = data.classes
    morphisms = tuple((W0.objects[src.obj_map[c[0]]], W0.objects[tgt.obj_map[c[0]]], W1.objects[c[0]])
                      for c in cls)
    C = validate_category(W0.objects, morphisms,
                          [src.obj_map[c[0]] for c in cls], [tgt.obj_map[c[0]] for c in cls],
                          [data.class_of[s0.obj_map[x]] for x in range(W0.n_objects)],
                          data.composition)
    L0, L1 = W.levels[0], W.levels[1]
    # the action on classes is well defined since structure maps are equivariant
    mor_act = tuple(tuple(data.class_of[L1.obj_act[g][c[0]]] for c in cls) for g in range(W.group.order))
    return GCategory(C, W.group, L0.obj_act, mor_act).validate()


def homotopy_equivalences(W: SegalGObject) -> GCategory:
    """Full sub-G-groupoid of ``W_1`` on objects whose class is invertible in ``ho(W)``."""
    ho = homotopy_category(W)
    data = homotopy_data(W)
    inv = inverse_map(ho.base)
    L1 = W.levels[1]
    keep = [f for f in range(L1.base.n_objects) if data.class_of[f] in inv]
    keep_set = set(keep)
    for g in range(W.group.order):
        if any(L1.obj_act[g][f] not in keep_set for f in keep):
            raise SegalError("homotopy equivalences are not closed under the action", witness=g)
    mors = [m for m in range(L1.base.n_morphisms) if L1.base.src[m] in keep_set and L1.base.tgt[m] in keep_set]
    sub, opos, mpos = subcategory(L1.base, keep, mors, groupoid=True)
    obj_act = tuple(tuple(opos[L1.obj_act[g][f]] for f in keep) for g in range(W.group.order))
    mor_act = tuple(tuple(mpos[L1.mor_act[g][m]] for m in mors) for g in range(W.group.order))
    return GCategory(sub, W.group, obj_act, mor_act)


def degeneracy_into_heq(W: SegalGObject, heq: GCategory) -> GFunctor:
    s0 = W.degens[0][0].functor
    W1 = W.level(1)
    H = heq.base
    omap = tuple(H.obj_index[W1.objects[s0.obj_map[x]]] for x in range(W.level(0).n_objects))
    mmap = tuple(H.mor_index[W1.morphisms[s0.mor_map[m]]] for m in range(W.level(0).n_morphisms))
    return GFunctor(W.levels[0], heq, Functor(W.level(0), H, omap, mmap))


def check_complete(W: SegalGObject, subgroup_list=None) -> CompletenessReport:
    """For each ``H``, check ``s_0: W_0^H -> (W_heq)^H`` is an equivalence."""
    _require_segal(W, range(2, W.N + 1))
    if subgroup_list is None:
        subgroup_list = subgroups(W.group)
    heq = homotopy_equivalences(W)
    s0 = degeneracy_into_heq(W, heq)
    report = CompletenessReport()
    for H in subgroup_list:
        report.entries.append(CompletenessEntry(H.names, check_equivalence(restrict_fixed(s0, H))))
    return report


def comparison_to_base(W: SegalGObject, C: GCategory, ho: GCategory | None = None) -> GFunctor:
    """``ho(N^G(C)) -> C``: a vertex goes to its object, an edge class to its arrow."""
    if ho is None:
        ho = homotopy_category(W)
    B = C.base
    omap = tuple(B.obj_index[lab[0][0]] for lab in ho.base.objects)
    mmap = tuple(B.mor_index[lab[2][1][0]] for lab in ho.base.morphisms)
    return GFunctor(ho, C, Functor(ho.base, B, omap, mmap))
