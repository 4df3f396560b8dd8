"""Finite categories, groupoids and functors given by explicit tables.

Composition is written in diagrammatic order: ``comp[(f, g)]`` is "f then g" and
is defined exactly when ``tgt[f] == src[g]``.  Derived categories (power
categories, pullbacks, fixed parts) carry a lazily evaluated composition so
that large levels never materialize their full tables unless asked to.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Sequence

from networkx.utils import UnionFind

from .errors import TruncationExceeded, ValidationError

DEFAULT_MAX_LEVEL = 4


class CategoryError(ValidationError):
    pass


class NonAssociative(CategoryError):
    pass


class BadUnit(CategoryError):
    pass


class BadComposite(CategoryError):
    pass


class FunctorError(ValidationError):
    pass


class Composition(Mapping):
    """Composition table computed on demand from ``fn(f, g)``."""

    def __init__(self, src: Sequence[int], tgt: Sequence[int], fn: Callable[[int, int], int]):
        self._src = src
        self._tgt = tgt
        self._fn = fn
        self._out = None

    def _out_of(self):
        if self._out is None:
            out = defaultdict(list)
            for f, s in enumerate(self._src):
                out[s].append(f)
            self._out = out
        return self._out

    def __getitem__(self, key):
        f, g = key
        if not (0 <= f < len(self._tgt) and 0 <= g < len(self._src)) or self._tgt[f] != self._src[g]:
            raise KeyError(key)
        return self._fn(f, g)

    def __iter__(self):
        out = self._out_of()
        for f, t in enumerate(self._tgt):
            for g in out.get(t, ()):
                yield (f, g)

    def __len__(self):
        out = self._out_of()
        return sum(len(out.get(t, ())) for t in self._tgt)


@dataclass(frozen=True)
class FinCat:
    objects: tuple
    morphisms: tuple
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    ids: tuple[int, ...]
    comp: Mapping = field(repr=False)

    __hash__ = object.__hash__

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.morphisms)

    def compose(self, f: int, g: int) -> int:
        return self.comp[(f, g)]

    @cached_property
    def obj_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.objects)}

    @cached_property
    def mor_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.morphisms)}

    @cached_property
    def out_of(self) -> tuple[tuple[int, ...], ...]:
        out = [[] for _ in self.objects]
        for f, s in enumerate(self.src):
            out[s].append(f)
        return tuple(tuple(x) for x in out)

    @cached_property
    def hom(self) -> dict:
        h = defaultdict(list)
        for f in range(len(self.morphisms)):
            h[(self.src[f], self.tgt[f])].append(f)
        return {k: tuple(v) for k, v in h.items()}

    def homset(self, x: int, y: int) -> tuple[int, ...]:
        return self.hom.get((x, y), ())

    def is_groupoid(self) -> bool:
        return isinstance(self, Groupoid)

    def tables(self) -> tuple:
        """Label-free structure, for comparing categories up to renaming."""
        return (len(self.objects), self.src, self.tgt, self.ids, dict(self.comp))

    def validate(self) -> FinCat:
        no, nm = len(self.objects), len(self.morphisms)
        if not (len(self.src) == len(self.tgt) == nm and len(self.ids) == no):
            raise CategoryError("table sizes do not match the object and morphism counts")
        if len(set(self.objects)) != no or len(set(self.morphisms)) != nm:
            raise CategoryError("object and morphism labels must be distinct")
        for f in range(nm):
            if not (0 <= self.src[f] < no and 0 <= self.tgt[f] < no):
                raise CategoryError(f"morphism {self.morphisms[f]!r} has an endpoint out of range", witness=f)
        for x, i in enumerate(self.ids):
            if not 0 <= i < nm or self.src[i] != x or self.tgt[i] != x:
                raise BadUnit(f"identity of {self.objects[x]!r} is not an endomorphism of it", witness=x)
        comp = self.comp
        if isinstance(comp, dict):
            for (f, g) in comp:
                if not (0 <= f < nm and 0 <= g < nm) or self.tgt[f] != self.src[g]:
                    raise BadComposite(f"composite declared for non-composable pair {(f, g)}", witness=(f, g))
        for f in range(nm):
            for g in self.out_of[self.tgt[f]]:
                try:
                    h = comp[(f, g)]
                except KeyError:
                    raise BadComposite(f"missing composite of composable pair {(f, g)}", witness=(f, g)) from None
                if not 0 <= h < nm or self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    raise BadComposite(f"composite of {(f, g)} has wrong source or target", witness=(f, g))
        for f in range(nm):
            if comp[(self.ids[self.src[f]], f)] != f or comp[(f, self.ids[self.tgt[f]])] != f:
                raise BadUnit(f"identities are not units for morphism {self.morphisms[f]!r}", witness=f)
        for f in range(nm):
            for g in self.out_of[self.tgt[f]]:
                fg = comp[(f, g)]
                for h in self.out_of[self.tgt[g]]:
                    if comp[(fg, h)] != comp[(f, comp[(g, h)])]:
                        raise NonAssociative(f"composition not associative on {(f, g, h)}", witness=(f, g, h))
        return self


@dataclass(frozen=True)
class Groupoid(FinCat):
    inv: tuple[int, ...] = field(default=(), repr=False)

    __hash__ = object.__hash__

    def validate(self) -> Groupoid:
        super().validate()
        if len(self.inv) != len(self.morphisms):
            raise CategoryError("inverse table has the wrong size")
        for f, g in enumerate(self.inv):
            if (self.src[g], self.tgt[g]) != (self.tgt[f], self.src[f]) \
                    or self.comp[(f, g)] != self.ids[self.src[f]] \
                    or self.comp[(g, f)] != self.ids[self.tgt[f]]:
                raise CategoryError(f"recorded inverse of {self.morphisms[f]!r} is not an inverse", witness=f)
        return self


def validate_category(objects, morphisms, src, tgt, ids, comp) -> FinCat:
    """Build a category from raw index tables and check every axiom."""
    C = FinCat(tuple(objects), tuple(morphisms), tuple(src), tuple(tgt), tuple(ids),
               {(int(f), int(g)): int(h) for (f, g), h in dict(comp).items()})
    return C.validate()


def category_from_names(objects, arrows, composites, identities=None) -> FinCat:
    """Convenience constructor from names.

    ``arrows`` lists ``(name, src, tgt)`` for non-identity morphisms;
    identities ``id_<obj>`` are added automatically unless ``identities`` maps
    objects to explicit names.  ``composites`` lists ``(f, g, h)`` meaning
    "f then g equals h"; composites with an identity are filled in.
    """
    objects = list(objects)
    identities = dict(identities or {x: f"id_{x}" for x in objects})
    mors = [identities[x] for x in objects] + [a[0] for a in arrows]
    src = [objects.index(x) for x in objects] + [objects.index(a[1]) for a in arrows]
    tgt = [objects.index(x) for x in objects] + [objects.index(a[2]) for a in arrows]
    ids = list(range(len(objects)))
    where = {m: i for i, m in enumerate(mors)}
    comp = {}
    for f in range(len(mors)):
        comp[(ids[src[f]], f)] = f
        comp[(f, ids[tgt[f]])] = f
    for f, g, h in composites:
        comp[(where[f], where[g])] = where[h]
    return validate_category(objects, mors, src, tgt, ids, comp)


def inverse_map(C: FinCat) -> dict[int, int]:
    """Each invertible morphism mapped to its inverse."""
    if isinstance(C, Groupoid):
        return dict(enumerate(C.inv))
    inv = {}
    for f in range(C.n_morphisms):
        x, y = C.src[f], C.tgt[f]
        for g in C.homset(y, x):
            if C.comp[(f, g)] == C.ids[x] and C.comp[(g, f)] == C.ids[y]:
                inv[f] = g
                break
    return inv


def subcategory(C: FinCat, keep_objects: Sequence[int], keep_morphisms: Sequence[int],
                groupoid: bool = False):
    """The subcategory on the given (closed) index sets, order preserved.

    Returns ``(sub, obj_pos, mor_pos)`` where the position maps send parent
    indices to sub indices.
    """
    objs = sorted(keep_objects)
    mors = sorted(keep_morphisms)
    obj_pos = {x: i for i, x in enumerate(objs)}
    mor_pos = {f: i for i, f in enumerate(mors)}
    src = tuple(obj_pos[C.src[f]] for f in mors)
    tgt = tuple(obj_pos[C.tgt[f]] for f in mors)
    ids = tuple(mor_pos[C.ids[x]] for x in objs)
    parent = C.comp

    def fn(f, g):
        return mor_pos[parent[(mors[f], mors[g])]]

    fields = dict(objects=tuple(C.objects[x] for x in objs),
                  morphisms=tuple(C.morphisms[f] for f in mors),
                  src=src, tgt=tgt, ids=ids, comp=Composition(src, tgt, fn))
    if groupoid:
        cinv = inverse_map(C)
        sub = Groupoid(**fields, inv=tuple(mor_pos[cinv[f]] for f in mors))
    else:
        sub = FinCat(**fields)
    return sub, obj_pos, mor_pos


def full_subcategory(C: FinCat, keep_objects: Sequence[int]):
    keep = set(keep_objects)
    mors = [f for f in range(C.n_morphisms) if C.src[f] in keep and C.tgt[f] in keep]
    return subcategory(C, keep, mors, groupoid=isinstance(C, Groupoid))


def maximal_subgroupoid(C: FinCat) -> Groupoid:
    """iso(C): same objects, exactly the invertible morphisms."""
    inv = inverse_map(C)
    sub, _, _ = subcategory(C, range(C.n_objects), sorted(inv), groupoid=True)
    return sub


@dataclass(frozen=True)
class Functor:
    dom: FinCat = field(repr=False)
    cod: FinCat = field(repr=False)
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    __hash__ = object.__hash__

    def validate(self) -> Functor:
        D, E = self.dom, self.cod
        if len(self.obj_map) != D.n_objects or len(self.mor_map) != D.n_morphisms:
            raise FunctorError("functor tables have the wrong size")
        for f in range(D.n_morphisms):
            F = self.mor_map[f]
            if E.src[F] != self.obj_map[D.src[f]] or E.tgt[F] != self.obj_map[D.tgt[f]]:
                raise FunctorError(f"functor does not preserve endpoints of {D.morphisms[f]!r}", witness=f)
        for x in range(D.n_objects):
            if self.mor_map[D.ids[x]] != E.ids[self.obj_map[x]]:
                raise FunctorError(f"functor does not preserve the identity of {D.objects[x]!r}", witness=x)
        for (f, g), h in D.comp.items():
            if E.comp[(self.mor_map[f], self.mor_map[g])] != self.mor_map[h]:
                raise FunctorError(f"functor does not preserve the composite {(f, g)}", witness=(f, g))
        return self

    def then(self, other: Functor) -> Functor:
        return Functor(self.dom, other.cod,
                       tuple(other.obj_map[x] for x in self.obj_map),
                       tuple(other.mor_map[f] for f in self.mor_map))

    def is_isomorphism(self) -> bool:
        return (sorted(self.obj_map) == list(range(self.cod.n_objects))
                and sorted(self.mor_map) == list(range(self.cod.n_morphisms)))


def identity_functor(C: FinCat) -> Functor:
    return Functor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def discrete_category(objects, groupoid: bool = True) -> FinCat:
    objects = tuple(objects)
    n = len(objects)
    idx = tuple(range(n))
    fields = dict(objects=objects, morphisms=tuple(("id", x) for x in objects), src=idx, tgt=idx,
                  ids=idx, comp={(i, i): i for i in idx})
    return Groupoid(**fields, inv=idx) if groupoid else FinCat(**fields)


def iso_classes(X: FinCat) -> list[tuple[int, ...]]:
    """Connected components under invertible morphisms, ordered by least member."""
    uf = UnionFind(range(X.n_objects))
    mors = range(X.n_morphisms) if isinstance(X, Groupoid) else inverse_map(X)
    for f in mors:
        uf.union(X.src[f], X.tgt[f])
    classes = [tuple(sorted(c)) for c in uf.to_sets()]
    return sorted(classes)


def component_index(X: FinCat) -> tuple[list[tuple[int, ...]], dict[int, int]]:
    classes = iso_classes(X)
    return classes, {x: k for k, c in enumerate(classes) for x in c}


@dataclass
class EquivalenceReport:
    verdict: bool
    ess_surj_witness: object = None
    ff_witness: object = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"verdict": self.verdict,
                "ess_surj_witness": None if self.ess_surj_witness is None else repr(self.ess_surj_witness),
                "ff_witness": None if self.ff_witness is None else [repr(x) for x in self.ff_witness],
                "detail": self.detail}


def check_equivalence(F: Functor) -> EquivalenceReport:
    """Decide whether ``F`` is essentially surjective and fully faithful.

    Hom-set bijectivity is decided for every ordered pair of domain objects.
    For groupoids the pairs with an empty domain hom-set are covered at once:
    their images have empty hom-sets iff ``F`` is injective on components.
    """
    D, E = F.dom, F.cod
    ess = None
    ff = None
    detail = []

    _, cod_comp = component_index(E)
    hit = {cod_comp[F.obj_map[x]] for x in range(D.n_objects)}
    for k, c in enumerate(iso_classes(E)):
        if k not in hit:
            ess = E.objects[c[0]]
            detail.append(f"no object maps into the class of {ess!r}")
            break

    if isinstance(D, Groupoid) and isinstance(E, Groupoid):
        seen: dict[tuple[int, int], set] = defaultdict(set)
        for f in range(D.n_morphisms):
            key = (D.src[f], D.tgt[f])
            img = F.mor_map[f]
            if img in seen[key]:
                ff = key
                detail.append("hom-map not injective")
                break
            seen[key].add(img)
        if ff is None:
            for (x, y), imgs in sorted(seen.items()):
                target = len(E.homset(F.obj_map[x], F.obj_map[y]))
                if target != len(imgs):
                    ff = (x, y)
                    detail.append(f"hom-set sizes {len(imgs)} vs {target}")
                    break
        if ff is None:
            dom_classes, _ = component_index(D)
            owner = {}
            for c in dom_classes:
                k = cod_comp[F.obj_map[c[0]]]
                if k in owner:
                    ff = (owner[k], c[0])
                    detail.append("distinct components share an image component")
                    break
                owner[k] = c[0]
    else:
        for x, y in itertools.product(range(D.n_objects), repeat=2):
            dom_hom = D.homset(x, y)
            imgs = {F.mor_map[f] for f in dom_hom}
            target = len(E.homset(F.obj_map[x], F.obj_map[y]))
            if len(imgs) != len(dom_hom) or target != len(dom_hom):
                ff = (x, y)
                detail.append(f"hom-set sizes {len(dom_hom)} vs {target}")
                break
    if ff is not None:
        ff = (D.objects[ff[0]], D.objects[ff[1]])
    return EquivalenceReport(ess is None and ff is None, ess, ff, "; ".join(detail))


def groupoid_pullback(p: Functor, q: Functor):
    """Strict pullback of ``p: X -> Z`` and ``q: Y -> Z``.

    Returns ``(P, proj_x, proj_y)``.  Objects and morphisms are pairs agreeing
    in ``Z``, ordered lexicographically; labels are pairs of labels.
    """
    X, Y = p.dom, q.dom
    if p.cod is not q.cod and p.cod.n_objects != q.cod.n_objects:
        raise FunctorError("pullback legs must share a codomain")
    y_over = defaultdict(list)
    for y in range(Y.n_objects):
        y_over[q.obj_map[y]].append(y)
    g_over = defaultdict(list)
    for g in range(Y.n_morphisms):
        g_over[q.mor_map[g]].append(g)
    obj_pairs = [(x, y) for x in range(X.n_objects) for y in y_over.get(p.obj_map[x], ())]
    mor_pairs = [(f, g) for f in range(X.n_morphisms) for g in g_over.get(p.mor_map[f], ())]
    obj_at = {pr: i for i, pr in enumerate(obj_pairs)}
    mor_at = {pr: i for i, pr in enumerate(mor_pairs)}
    src = tuple(obj_at[(X.src[f], Y.src[g])] for f, g in mor_pairs)
    tgt = tuple(obj_at[(X.tgt[f], Y.tgt[g])] for f, g in mor_pairs)
    ids = tuple(mor_at[(X.ids[x], Y.ids[y])] for x, y in obj_pairs)
    xc, yc = X.comp, Y.comp

    def fn(a, b):
        (f1, g1), (f2, g2) = mor_pairs[a], mor_pairs[b]
        return mor_at[(xc[(f1, f2)], yc[(g1, g2)])]

    fields = dict(objects=tuple((X.objects[x], Y.objects[y]) for x, y in obj_pairs),
                  morphisms=tuple((X.morphisms[f], Y.morphisms[g]) for f, g in mor_pairs),
                  src=src, tgt=tgt, ids=ids, comp=Composition(src, tgt, fn))
    if isinstance(X, Groupoid) and isinstance(Y, Groupoid):
        P = Groupoid(**fields, inv=tuple(mor_at[(X.inv[f], Y.inv[g])] for f, g in mor_pairs))
    else:
        P = FinCat(**fields)
    px = Functor(P, X, tuple(x for x, _ in obj_pairs), tuple(f for f, _ in mor_pairs))
    py = Functor(P, Y, tuple(y for _, y in obj_pairs), tuple(g for _, g in mor_pairs))
    return P, px, py


# Chains and power categories.  A chain key is ``(vertices, edges)`` of indices
# into the base category; level 0 chains are ``((x,), ())``.

def chains(C: FinCat, n: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Composable n-chains in lexicographic order of edges."""
    current = [((x,), ()) for x in range(C.n_objects)]
    for _ in range(n):
        current = [(vs + (C.tgt[f],), es + (f,)) for vs, es in current for f in C.out_of[vs[-1]]]
    return current


def chain_face(C: FinCat, key, i: int):
    vs, es = key
    n = len(es)
    if i == 0:
        return vs[1:], es[1:]
    if i == n:
        return vs[:-1], es[:-1]
    return vs[:i] + vs[i + 1:], es[:i - 1] + (C.comp[(es[i - 1], es[i])],) + es[i + 1:]


def chain_degeneracy(C: FinCat, key, i: int):
    vs, es = key
    return vs[:i + 1] + vs[i:], es[:i] + (C.ids[vs[i]],) + es[i:]


def chain_label(C: FinCat, key):
    vs, es = key
    return tuple(C.objects[x] for x in vs), tuple(C.morphisms[f] for f in es)


@dataclass(frozen=True)
class ChainCategory:
    """A power category together with the index keys of its objects and morphisms.

    Morphism keys are ``(src_object, tgt_object, ladder)`` with the ladder a
    tuple of base-morphism indices, one per vertex.
    """

    base: FinCat = field(repr=False)
    n: int
    category: FinCat = field(repr=False)
    obj_keys: tuple = field(repr=False)
    mor_keys: tuple = field(repr=False)

    @cached_property
    def obj_at(self) -> dict:
        return {k: i for i, k in enumerate(self.obj_keys)}

    @cached_property
    def mor_at(self) -> dict:
        return {k: i for i, k in enumerate(self.mor_keys)}


def chain_category(C: FinCat, n: int, allowed=None, max_level: int = DEFAULT_MAX_LEVEL) -> ChainCategory:
    """Functors ``[n] -> C`` and natural transformations with components in ``allowed``.

    ``allowed`` (a set of morphism indices, default all) must contain the
    identities and be closed under composition.  When every allowed morphism
    is invertible with an allowed inverse the result is a :class:`Groupoid`.
    """
    if n < 0:
        raise ValueError("level must be non-negative")
    if n > max_level:
        raise TruncationExceeded(f"level {n} exceeds truncation {max_level}")
    allowed_set = frozenset(range(C.n_morphisms)) if allowed is None else frozenset(allowed)
    cinv = inverse_map(C)
    is_grpd = all(f in cinv and cinv[f] in allowed_set for f in allowed_set)
    obj_keys = chains(C, n)
    obj_at = {k: i for i, k in enumerate(obj_keys)}
    out_allowed = [tuple(f for f in C.out_of[x] if f in allowed_set) for x in range(C.n_objects)]
    comp = C.comp

    mor_keys = []
    for a, (vs, es) in enumerate(obj_keys):
        # partial ladders: (components, target vertices' edges)
        partial = [((f,), ()) for f in out_allowed[vs[0]]]
        for i in range(1, n + 1):
            nxt = []
            for alphas, fps in partial:
                prev = alphas[-1]
                y_prev = C.tgt[prev]
                for f in out_allowed[vs[i]]:
                    lhs = comp[(es[i - 1], f)]
                    for fp in C.homset(y_prev, C.tgt[f]):
                        if comp[(prev, fp)] == lhs:
                            nxt.append((alphas + (f,), fps + (fp,)))
            partial = nxt
        for alphas, fps in partial:
            b = obj_at[(tuple(C.tgt[f] for f in alphas), fps)]
            mor_keys.append((a, b, alphas))
    mor_at = {k: i for i, k in enumerate(mor_keys)}
    src = tuple(k[0] for k in mor_keys)
    tgt = tuple(k[1] for k in mor_keys)
    ids = tuple(mor_at[(a, a, tuple(C.ids[x] for x in key[0]))] for a, key in enumerate(obj_keys))

    def fn(p, q):
        a, _, lp = mor_keys[p]
        _, c, lq = mor_keys[q]
        return mor_at[(a, c, tuple(comp[(u, v)] for u, v in zip(lp, lq)))]

    obj_labels = tuple(chain_label(C, k) for k in obj_keys)
    mor_labels = tuple((obj_labels[a], obj_labels[b], tuple(C.morphisms[f] for f in lad))
                       for a, b, lad in mor_keys)
    fields = dict(objects=obj_labels, morphisms=mor_labels, src=src, tgt=tgt, ids=ids,
                  comp=Composition(src, tgt, fn))
    if is_grpd:
        inv = tuple(mor_at[(b, a, tuple(cinv[f] for f in lad))] for a, b, lad in mor_keys)
        cat = Groupoid(**fields, inv=inv)
    else:
        cat = FinCat(**fields)
    result = ChainCategory(C, n, cat, tuple(obj_keys), tuple(mor_keys))
    result.__dict__["obj_at"] = obj_at
    result.__dict__["mor_at"] = mor_at
    return result


def power_category(C: FinCat, n: int, max_level: int = DEFAULT_MAX_LEVEL) -> FinCat:
    """``C^[n]``: functors ``[n] -> C`` and all natural transformations."""
    return chain_category(C, n, None, max_level).category


def iso_power_category(C: FinCat, n: int, max_level: int = DEFAULT_MAX_LEVEL) -> Groupoid:
    """``iso(C^[n])``, built directly from ladders of isomorphisms."""
    return chain_category(C, n, inverse_map(C).keys(), max_level).category


# Small named categories.

def poset_chain(k: int) -> FinCat:
    """The ordinal ``[k]`` as a category: objects 0..k, one arrow ``i -> j`` for ``i <= j``."""
    objects = list(range(k + 1))
    pairs = [(i, j) for i in objects for j in objects if i <= j]
    names = [f"id_{i}" if i == j else f"{i}<{j}" for i, j in pairs]
    where = {pr: m for m, pr in enumerate(pairs)}
    src = [i for i, _ in pairs]
    tgt = [j for _, j in pairs]
    ids = [where[(i, i)] for i in objects]
    comp = {(where[(i, j)], where[(j2, l)]): where[(i, l)]
            for i, j in pairs for j2, l in pairs if j == j2}
    return validate_category(objects, names, src, tgt, ids, comp)


def codiscrete_groupoid(objects) -> Groupoid:
    """Exactly one morphism between any ordered pair of objects."""
    objects = tuple(objects)
    n = len(objects)
    pairs = [(i, j) for i in range(n) for j in range(n)]
    where = {pr: m for m, pr in enumerate(pairs)}
    names = tuple(f"id_{objects[i]}" if i == j else f"{objects[i]}>{objects[j]}" for i, j in pairs)
    src = tuple(i for i, _ in pairs)
    tgt = tuple(j for _, j in pairs)
    comp = {(where[(i, j)], where[(j, l)]): where[(i, l)] for i, j in pairs for l in range(n)}
    G = Groupoid(objects, names, src, tgt, tuple(where[(i, i)] for i in range(n)), comp,
                 inv=tuple(where[(j, i)] for i, j in pairs))
    return G.validate()


def walking_isomorphism() -> Groupoid:
    """Objects ``x, y`` with ``u: x -> y`` and ``v: y -> x`` mutually inverse."""
    C = category_from_names(["x", "y"], [("u", "x", "y"), ("v", "y", "x")],
                            [("u", "v", "id_x"), ("v", "u", "id_y")])
    return maximal_subgroupoid(C)


def one_object(group) -> Groupoid:
    """The one-object groupoid of a finite group; composition "f then g" is ``g*f``."""
    n = group.order
    comp = {(f, g): group.mult[g][f] for f in range(n) for g in range(n)}
    C = Groupoid(("*",), tuple(group.names), (0,) * n, (0,) * n, (group.identity,), comp,
                 inv=tuple(group.inv(f) for f in range(n)))
    return C.validate()


def monoid_category(names, table, unit: int) -> FinCat:
    """One-object category of a finite monoid; ``table[a][b]`` is ``a*b`` and "f then g" is ``g*f``."""
    n = len(names)
    comp = {(f, g): table[g][f] for f in range(n) for g in range(n)}
    return validate_category(("*",), names, (0,) * n, (0,) * n, (unit,), comp)


def disjoint_union(*parts: FinCat) -> FinCat:
    objects, morphisms, src, tgt, ids, comp = [], [], [], [], [], {}
    inv = []
    all_grpd = all(isinstance(P, Groupoid) for P in parts)
    for k, P in enumerate(parts):
        oo, mo = len(objects), len(morphisms)
        objects.extend((k, x) for x in P.objects)
        morphisms.extend((k, f) for f in P.morphisms)
        src.extend(oo + s for s in P.src)
        tgt.extend(oo + t for t in P.tgt)
        ids.extend(mo + i for i in P.ids)
        comp.update({(mo + f, mo + g): mo + h for (f, g), h in P.comp.items()})
        if all_grpd:
            inv.extend(mo + i for i in P.inv)
    fields = dict(objects=tuple(objects), morphisms=tuple(morphisms), src=tuple(src),
                  tgt=tuple(tgt), ids=tuple(ids), comp=comp)
    return Groupoid(**fields, inv=tuple(inv)) if all_grpd else FinCat(**fields)
