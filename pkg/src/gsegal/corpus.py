"""Deterministic instance generators: small G-categories and random G-groupoid cospans."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from networkx.utils import UnionFind

from .cat import (FinCat, Functor, Groupoid, category_from_names, discrete_category, disjoint_union,
                  one_object, poset_chain, walking_isomorphism)
from .errors import ValidationError
from .gcat import ActionError, GCategory, GFunctor, g_objects_category, validate_gcategory
from .group import (FiniteGroup, coset_gset, conjugacy_class_representatives, cyclic_group, disjoint_union as
                    gset_union, enumerate_gmaps, small_groups)

MAX_GROUP_ORDER = 6
MAX_OBJECTS = 3
MAX_MORPHISMS = 12


class BoundsTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class CorpusBounds:
    max_group_order: int = MAX_GROUP_ORDER
    max_objects: int = MAX_OBJECTS
    max_morphisms: int = MAX_MORPHISMS

    def check(self) -> CorpusBounds:
        if (self.max_group_order > MAX_GROUP_ORDER or self.max_objects > MAX_OBJECTS
                or self.max_morphisms > MAX_MORPHISMS):
            raise BoundsTooLarge(f"bounds exceed |G| <= {MAX_GROUP_ORDER}, {MAX_OBJECTS} objects, "
                                 f"{MAX_MORPHISMS} morphisms: {self}")
        if min(self.max_group_order, self.max_objects, self.max_morphisms) < 0:
            raise ValueError("bounds must be non-negative")
        return self


@dataclass(frozen=True)
class Instance:
    name: str
    category: GCategory


def category_library() -> list[tuple[str, FinCat]]:
    """Small categories whose classifying diagrams stay cheap up to level 4."""
    point = poset_chain(0)
    return [
        ("point", point),
        ("[1]", poset_chain(1)),
        ("[2]", poset_chain(2)),
        ("E", walking_isomorphism()),
        ("BZ2", one_object(cyclic_group(2))),
        ("BZ3", one_object(cyclic_group(3))),
        ("2pt", discrete_category(["a", "b"])),
        ("span", category_from_names(["c", "a", "b"], [("l", "c", "a"), ("r", "c", "b")], [])),
        ("E+pt", disjoint_union(walking_isomorphism(), point)),
        ("pt+BZ2", disjoint_union(point, one_object(cyclic_group(2)))),
    ]


def category_automorphisms(C: FinCat) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All automorphisms as ``(obj_perm, mor_perm)``, found by permuting hom-sets."""
    n, hom = C.n_objects, C.hom
    out = []
    for sigma in itertools.permutations(range(n)):
        pairs = [(x, y) for x in range(n) for y in range(n)]
        if any(len(hom.get((x, y), ())) != len(hom.get((sigma[x], sigma[y]), ())) for x, y in pairs):
            continue
        choices = []
        for x, y in pairs:
            dom, cod = hom.get((x, y), ()), hom.get((sigma[x], sigma[y]), ())
            options = []
            for img in itertools.permutations(cod):
                assign = dict(zip(dom, img))
                if x == y and assign.get(C.ids[x]) != C.ids[sigma[x]]:
                    continue
                options.append(assign)
            choices.append(options)
        for combo in itertools.product(*choices):
            mp = [0] * C.n_morphisms
            for assign in combo:
                for f, h in assign.items():
                    mp[f] = h
            if all(C.comp[(mp[f], mp[g])] == mp[h] for (f, g), h in C.comp.items()):
                out.append((tuple(sigma), tuple(mp)))
    return sorted(out)


def _compose_auts(a, b):
    """``a`` after ``b``."""
    return tuple(a[0][x] for x in b[0]), tuple(a[1][f] for f in b[1])


def _inverse_aut(a):
    return tuple(sorted(range(len(a[0])), key=a[0].__getitem__)), tuple(sorted(range(len(a[1])), key=a[1].__getitem__))


def actions_up_to_conjugacy(C: FinCat, G: FiniteGroup) -> list[GCategory]:
    """Every strict action of ``G`` on ``C``, one per conjugacy class under ``Aut(C)``."""
    auts = category_automorphisms(C)
    gens = G.generators()
    seen = set()
    out = []
    for images in itertools.product(auts, repeat=len(gens)):
        try:
            GC = validate_gcategory(C, G, dict(zip(gens, images)))
        except (ActionError, ValidationError):
            continue
        table = tuple(zip(GC.obj_act, GC.mor_act))
        if table in seen:
            continue
        orbit = set()
        for a in auts:
            ai = _inverse_aut(a)
            orbit.add(tuple(_compose_auts(_compose_auts(a, t), ai) for t in table))
        seen |= orbit
        out.append(GC)
    return out


def enumerate_corpus(bounds: CorpusBounds | None = None) -> list[Instance]:
    """All (G, C, action) instances within ``bounds`` over the category library.

    Groups come from :func:`small_groups`; actions are taken up to conjugation
    by automorphisms of ``C``.  The order is fixed, so repeated calls agree.
    """
    bounds = (bounds or CorpusBounds()).check()
    out = []
    groups = small_groups(bounds.max_group_order) if bounds.max_group_order >= 1 else []
    for cname, C in category_library():
        if C.n_objects > bounds.max_objects or C.n_morphisms > bounds.max_morphisms:
            continue
        for gname, G in groups:
            for k, GC in enumerate(actions_up_to_conjugacy(C, G)):
                out.append(Instance(f"{cname}/{gname}/{k}", GC))
    return out


def g_objects_instances() -> list[Instance]:
    Z2, Z3 = cyclic_group(2), cyclic_group(3)
    return [
        Instance("Gobj(BZ2)/Z2", g_objects_category(one_object(Z2), Z2)),
        Instance("Gobj(E)/Z2", g_objects_category(walking_isomorphism(), Z2)),
        Instance("Gobj([1])/Z3", g_objects_category(poset_chain(1), Z3)),
        Instance("Gobj(BZ3)/Z2", g_objects_category(one_object(Z3), Z2)),
        Instance("Gobj(BZ2+pt)/Z2", g_objects_category(disjoint_union(one_object(Z2), poset_chain(0)), Z2)),
    ]


def acceptance_corpus() -> list[Instance]:
    return enumerate_corpus() + g_objects_instances()


# Random cospans of G-groupoids.  Each groupoid is codiscrete on the classes of
# a G-invariant partition of a G-set, times a cyclic vertex group Z/m; G moves
# objects and either fixes or negates the Z/m label through a sign character.

@dataclass(frozen=True)
class Cospan:
    seed: int
    group: FiniteGroup
    p: GFunctor
    q: GFunctor


def _random_gset(rng, G, max_points):
    orbits = [coset_gset(G, K) for K in conjugacy_class_representatives(G)]
    orbits = [O for O in orbits if len(O.points) <= max_points]
    parts, size = [], 0
    for _ in range(rng.randint(1, 3)):
        O = rng.choice(orbits)
        if size + len(O.points) <= max_points:
            parts.append(O)
            size += len(O.points)
    return gset_union(*parts)


def _invariant_partition(rng, X, allowed):
    """A random G-invariant partition refining ``allowed`` (a class label per point)."""
    n = len(X.points)
    uf = UnionFind(range(n))
    for _ in range(rng.randint(0, n)):
        a, b = rng.randrange(n), rng.randrange(n)
        if allowed[a] != allowed[b]:
            continue
        for g in range(X.group.order):
            uf.union(X.action[g][a], X.action[g][b])
    classes = sorted(tuple(sorted(c)) for c in uf.to_sets())
    return {x: k for k, c in enumerate(classes) for x in c}


def _sign_character(G: FiniteGroup, rng) -> tuple[int, ...]:
    """A random homomorphism ``G -> {+1, -1}`` as a tuple of signs."""
    options = [tuple(1 for _ in range(G.order))]
    for K in conjugacy_class_representatives(G):
        if 2 * len(K) == G.order:
            options.append(tuple(1 if g in K.member_set else -1 for g in range(G.order)))
    return rng.choice(options)


def _groupoid_on(X, cls, m, sign) -> GCategory:
    n = len(X.points)
    objs = list(range(n))
    mors = [(a, b, k) for a in objs for b in objs if cls[a] == cls[b] for k in range(m)]
    at = {f: i for i, f in enumerate(mors)}
    comp = {(at[(a, b, k)], at[(b2, c, l)]): at[(a, c, (k + l) % m)]
            for a, b, k in mors for b2, c, l in mors if b == b2}
    C = Groupoid(tuple(objs), tuple(mors), tuple(f[0] for f in mors),
                 tuple(f[1] for f in mors), tuple(at[(a, a, 0)] for a in objs), comp,
                 inv=tuple(at[(b, a, (-k) % m)] for a, b, k in mors)).validate()
    obj_act = tuple(tuple(X.action[g][a] for a in objs) for g in range(X.group.order))
    mor_act = tuple(tuple(at[(X.action[g][a], X.action[g][b], (sign[g] * k) % m)] for a, b, k in mors)
                    for g in range(X.group.order))
    return GCategory(C, X.group, obj_act, mor_act).validate()


def _leg(rng, G, Z, Zset, Zcls, mz, sign, max_objects):
    while True:
        X = _random_gset(rng, G, max_objects)
        maps = enumerate_gmaps(X, Zset)
        if maps:
            break
    f = rng.choice(maps)
    cls = _invariant_partition(rng, X, [Zcls[f[x]] for x in range(len(X.points))])
    m = rng.randint(1, 3)
    # homomorphisms Z/m -> Z/mz are k -> t*k with t*m divisible by mz
    t = rng.choice([t for t in range(mz) if (t * m) % mz == 0])
    XC = _groupoid_on(X, cls, m, sign)
    omap = tuple(f)
    mmap = tuple(Z.base.mor_index[(f[a], f[b], (t * k) % mz)] for a, b, k in XC.base.morphisms)
    return GFunctor(XC, Z, Functor(XC.base, Z.base, omap, mmap)).validate()


def random_cospans(count: int = 100, seed: int = 0, max_objects: int = 6) -> list[Cospan]:
    """Deterministic pseudo-random cospans ``X -> Z <- Y`` of G-groupoids."""
    groups = [G for _, G in small_groups(6)]
    out = []
    for k in range(count):
        rng = random.Random(seed * 100003 + k)
        G = rng.choice(groups)
        sign = _sign_character(G, rng)
        Zset = _random_gset(rng, G, max_objects)
        Zcls = _invariant_partition(rng, Zset, [0] * len(Zset.points))
        mz = rng.choice([1, 2, 3, 4, 6])
        Z = _groupoid_on(Zset, Zcls, mz, sign)
        p = _leg(rng, G, Z, Zset, Zcls, mz, sign, max_objects)
        q = _leg(rng, G, Z, Zset, Zcls, mz, sign, max_objects)
        out.append(Cospan(k, G, p, q))
    return out

