"""Categories with a strict action of a finite group, and their fixed parts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from .cat import (FinCat, Functor, Groupoid, groupoid_pullback, inverse_map, subcategory,
                  validate_category, walking_isomorphism)
from .errors import ValidationError
from .group import FiniteGroup, Subgroup


class ActionError(ValidationError):
    pass


class NotFunctorial(ActionError):
    pass


class NotHomomorphism(ActionError):
    pass


@dataclass(frozen=True)
class GCategory:
    """``obj_act[g][x]`` and ``mor_act[g][f]`` give the action of element ``g``."""

    base: FinCat = field(repr=False)
    group: FiniteGroup = field(repr=False)
    obj_act: tuple[tuple[int, ...], ...] = field(repr=False)
    mor_act: tuple[tuple[int, ...], ...] = field(repr=False)

    __hash__ = object.__hash__

    def act(self, g: int) -> Functor:
        return Functor(self.base, self.base, self.obj_act[g], self.mor_act[g])

    @cached_property
    def is_trivial_action(self) -> bool:
        C = self.base
        return all(row == tuple(range(C.n_objects)) for row in self.obj_act) and \
            all(row == tuple(range(C.n_morphisms)) for row in self.mor_act)

    def fixed_indices(self, H: Subgroup) -> tuple[list[int], list[int]]:
        C = self.base
        objs = [x for x in range(C.n_objects) if all(self.obj_act[h][x] == x for h in H)]
        mors = [f for f in range(C.n_morphisms) if all(self.mor_act[h][f] == f for h in H)]
        return objs, mors

    def validate(self) -> GCategory:
        G, C = self.group, self.base
        ident_o, ident_m = tuple(range(C.n_objects)), tuple(range(C.n_morphisms))
        if len(self.obj_act) != G.order or len(self.mor_act) != G.order:
            raise ActionError("action needs one automorphism per group element")
        for g in range(G.order):
            _check_automorphism(C, self.obj_act[g], self.mor_act[g], g)
        if self.obj_act[G.identity] != ident_o or self.mor_act[G.identity] != ident_m:
            raise NotHomomorphism("identity element does not act as the identity functor",
                                  witness=(G.identity, G.identity))
        for g, h in itertools.product(range(G.order), repeat=2):
            gh = G.mult[g][h]
            og, oh, ogh = self.obj_act[g], self.obj_act[h], self.obj_act[gh]
            mg, mh, mgh = self.mor_act[g], self.mor_act[h], self.mor_act[gh]
            if any(og[oh[x]] != ogh[x] for x in ident_o) or any(mg[mh[f]] != mgh[f] for f in ident_m):
                raise NotHomomorphism(f"action({g}) o action({h}) != action({gh})", witness=(g, h))
        return self


def _check_automorphism(C: FinCat, obj_perm, mor_perm, g) -> None:
    if sorted(obj_perm) != list(range(C.n_objects)) or sorted(mor_perm) != list(range(C.n_morphisms)):
        raise NotFunctorial(f"action of element {g} is not bijective", witness=g)
    try:
        Functor(C, C, tuple(obj_perm), tuple(mor_perm)).validate()
    except ValidationError as exc:
        raise NotFunctorial(f"action of element {g} is not a functor: {exc}", witness=g) from None


def validate_gcategory(C: FinCat, G: FiniteGroup, action: dict) -> GCategory:
    """Validate a strict action given as ``{element: (obj_perm, mor_perm)}``.

    The tables may cover only a generating set; the action is extended along
    products and every element is then checked.  Conflicting extensions mean the
    tables do not define a homomorphism.
    """
    for g, (op, mp) in action.items():
        _check_automorphism(C, op, mp, g)
    tables = {G.identity: (tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))}
    if G.identity in action and tuple(action[G.identity][0]) != tables[G.identity][0]:
        raise NotHomomorphism("identity element does not act as the identity functor",
                              witness=(G.identity, G.identity))
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            oa, ma = tables[a]
            for s, (os_, ms) in action.items():
                b = G.mult[a][s]
                img = (tuple(oa[os_[x]] for x in range(C.n_objects)),
                       tuple(ma[ms[f]] for f in range(C.n_morphisms)))
                if b in tables:
                    if tables[b] != img:
                        raise NotHomomorphism(f"tables disagree on element {b}", witness=(a, s))
                else:
                    tables[b] = img
                    nxt.append(b)
        frontier = nxt
    if len(tables) != G.order:
        raise ActionError("the given elements do not generate the group")
    return GCategory(C, G, tuple(tables[g][0] for g in range(G.order)),
                     tuple(tables[g][1] for g in range(G.order))).validate()


def trivial_action(C: FinCat, G: FiniteGroup) -> GCategory:
    o, m = tuple(range(C.n_objects)), tuple(range(C.n_morphisms))
    return GCategory(C, G, tuple(o for _ in range(G.order)), tuple(m for _ in range(G.order)))


def fixed_part(C: GCategory, H: Subgroup):
    """``(C^H, obj_pos, mor_pos)``: the strictly fixed subcategory with position maps."""
    objs, mors = C.fixed_indices(H)
    return subcategory(C.base, objs, mors, groupoid=isinstance(C.base, Groupoid))


def fixed_category(C: GCategory, H: Subgroup) -> FinCat:
    return fixed_part(C, H)[0]


@dataclass(frozen=True)
class GFunctor:
    dom: GCategory = field(repr=False)
    cod: GCategory = field(repr=False)
    functor: Functor = field(repr=False)

    __hash__ = object.__hash__

    def validate(self) -> GFunctor:
        self.functor.validate()
        F = self.functor
        for g in range(self.dom.group.order):
            od, oc = self.dom.obj_act[g], self.cod.obj_act[g]
            md, mc = self.dom.mor_act[g], self.cod.mor_act[g]
            if any(F.obj_map[od[x]] != oc[F.obj_map[x]] for x in range(F.dom.n_objects)) or \
                    any(F.mor_map[md[f]] != mc[F.mor_map[f]] for f in range(F.dom.n_morphisms)):
                raise ActionError(f"functor does not commute with the action of element {g}", witness=g)
        return self

    def then(self, other: GFunctor) -> GFunctor:
        return GFunctor(self.dom, other.cod, self.functor.then(other.functor))


def restrict_fixed(F: GFunctor, H: Subgroup) -> Functor:
    """``F^H: dom^H -> cod^H`` (equivariance makes fixed data land in fixed data)."""
    D, dop, dmp = fixed_part(F.dom, H)
    E, eop, emp = fixed_part(F.cod, H)
    dobj = sorted(dop, key=dop.get)
    dmor = sorted(dmp, key=dmp.get)
    return Functor(D, E, tuple(eop[F.functor.obj_map[x]] for x in dobj),
                   tuple(emp[F.functor.mor_map[f]] for f in dmor))


def gpullback(p: GFunctor, q: GFunctor):
    """Strict pullback of G-categories with the componentwise action."""
    P, px, py = groupoid_pullback(p.functor, q.functor)
    X, Y = p.dom, q.dom
    obj_at = {pr: i for i, pr in enumerate(zip(px.obj_map, py.obj_map))}
    mor_at = {pr: i for i, pr in enumerate(zip(px.mor_map, py.mor_map))}
    obj_act = tuple(tuple(obj_at[(X.obj_act[g][x], Y.obj_act[g][y])] for x, y in zip(px.obj_map, py.obj_map))
                    for g in range(X.group.order))
    mor_act = tuple(tuple(mor_at[(X.mor_act[g][f], Y.mor_act[g][h])] for f, h in zip(px.mor_map, py.mor_map))
                    for g in range(X.group.order))
    PG = GCategory(P, X.group, obj_act, mor_act)
    return PG, GFunctor(PG, X, px), GFunctor(PG, Y, py)


def _homomorphisms_into_aut(C: FinCat, G: FiniteGroup, c: int, cinv: dict) -> list[tuple[int, ...]]:
    """All ``rho: G -> Aut(c)`` with ``rho(gh) = rho(g) o rho(h)``, lexicographically."""
    aut = [f for f in C.homset(c, c) if f in cinv]
    gens = G.generators()
    found = set()
    for images in itertools.product(aut, repeat=len(gens)):
        rho = {G.identity: C.ids[c]}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for s, m in zip(gens, images):
                    b = G.mult[a][s]
                    val = C.comp[(m, rho[a])]
                    if b in rho:
                        if rho[b] != val:
                            ok = False
                            break
                    else:
                        rho[b] = val
                        nxt.append(b)
                if not ok:
                    break
            frontier = nxt
        if not ok or len(rho) != G.order:
            continue
        if all(rho[G.mult[g][h]] == C.comp[(rho[h], rho[g])] for g in range(G.order) for h in range(G.order)):
            found.add(tuple(rho[g] for g in range(G.order)))
    return sorted(found)


def g_objects_category(C: FinCat, G: FiniteGroup, equivariant_only: bool = True) -> GCategory:
    """The category of G-objects in ``C`` as a G-category.

    Objects are pairs ``(c, rho)`` with ``rho: G -> Aut(c)`` a homomorphism and
    are fixed by the action.  A morphism ``m: (c, rho) -> (c', rho')`` is read as
    the family ``h -> rho'(h) o m o rho(h)^-1``; the element ``g`` translates the
    family to ``h -> (family at hg)``, whose value at the identity is
    ``rho'(g) o m o rho(g)^-1``.  With ``equivariant_only`` the morphisms are
    the equivariant maps (on which the translation is trivial); otherwise all
    maps of underlying objects are kept and the action is conjugation.
    """
    cinv = inverse_map(C)
    objs = [(c, rho) for c in range(C.n_objects) for rho in _homomorphisms_into_aut(C, G, c, cinv)]
    mors = []
    for (c, rho), (d, sig) in itertools.product(objs, repeat=2):
        for m in C.homset(c, d):
            if equivariant_only and any(C.comp[(rho[g], m)] != C.comp[(m, sig[g])] for g in range(G.order)):
                continue
            mors.append((c, rho, d, sig, m))
    obj_at = {o: i for i, o in enumerate(objs)}
    mor_at = {k: i for i, k in enumerate(mors)}
    obj_labels = tuple((C.objects[c], tuple(C.morphisms[r] for r in rho)) for c, rho in objs)
    src = tuple(obj_at[(c, rho)] for c, rho, _, _, _ in mors)
    tgt = tuple(obj_at[(d, sig)] for _, _, d, sig, _ in mors)
    ids = tuple(mor_at[(c, rho, c, rho, C.ids[c])] for c, rho in objs)
    comp = {}
    for i, (c, rho, d, sig, m) in enumerate(mors):
        for j, (d2, sig2, e, tau, n) in enumerate(mors):
            if (d2, sig2) == (d, sig):
                comp[(i, j)] = mor_at[(c, rho, e, tau, C.comp[(m, n)])]
    base = validate_category(obj_labels,
                             tuple((obj_labels[s], obj_labels[t], C.morphisms[k[4]]) for s, t, k in zip(src, tgt, mors)),
                             src, tgt, ids, comp)
    obj_act = tuple(tuple(range(len(objs))) for _ in range(G.order))
    mor_act = []
    for g in range(G.order):
        row = []
        for c, rho, d, sig, m in mors:
            moved = C.comp[(C.comp[(cinv[rho[g]], m)], sig[g])]
            row.append(mor_at[(c, rho, d, sig, moved)])
        mor_act.append(tuple(row))
    return GCategory(base, G, obj_act, tuple(mor_act)).validate()


def swap_walking_isomorphism(G: FiniteGroup) -> GCategory:
    """The walking isomorphism with the order-two group swapping ``x, y`` and ``u, v``."""
    C = walking_isomorphism()
    gen = next(g for g in range(G.order) if g != G.identity)
    obj = (1, 0)
    mor = tuple(C.mor_index[{"id_x": "id_y", "id_y": "id_x", "u": "v", "v": "u"}[lab]] for lab in C.morphisms)
    return validate_gcategory(C, G, {gen: (obj, mor)})

