"""Cellularity conditions for fixed-point functors, checked in finite G-sets.

Colimits of finite G-sets are computed as quotients of disjoint unions; each
check compares "fixed points of the colimit" with "colimit of the fixed points"
through the canonical map and reports whether it is a bijection.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from networkx.utils import UnionFind

from .group import (FiniteGroup, GSet, Subgroup, conjugacy_class_representatives, coset_gset,
                    cyclic_group, disjoint_union, enumerate_gmaps, fixed_points, is_equivariant,
                    product_with_set, small_groups, subgroups, trivial_gset)
from .simplicial import TruncatedSSet


@dataclass
class CellularityReport:
    condition: int
    instance: dict
    verdict: bool
    witness: object = None

    def to_dict(self) -> dict:
        return {"condition": self.condition, "instance": self.instance, "verdict": self.verdict,
                "witness": None if self.witness is None else repr(self.witness)}


def quotient(n: int, pairs) -> tuple[list[tuple[int, ...]], list[int]]:
    """Classes of ``range(n)`` under the equivalence generated by ``pairs``."""
    uf = UnionFind(range(n))
    for a, b in pairs:
        uf.union(a, b)
    classes = sorted(tuple(sorted(c)) for c in uf.to_sets()) if n else []
    class_of = [0] * n
    for k, c in enumerate(classes):
        for x in c:
            class_of[x] = k
    return classes, class_of


@dataclass(frozen=True)
class Colimit:
    """A colimit G-set with the legs from each diagram object."""

    gset: GSet = field(repr=False)
    legs: tuple[tuple[int, ...], ...]


def _glue(G: FiniteGroup | None, objects: Sequence, identifications) -> Colimit:
    """Quotient of the disjoint union of ``objects`` by ``identifications``.

    ``objects`` are G-sets (or plain sizes when ``G`` is None); identifications
    are pairs ``((i, x), (j, y))`` of object/point indices.
    """
    sizes = [len(X.points) if G is not None else X for X in objects]
    offsets = list(itertools.accumulate([0] + sizes[:-1]))
    total = sum(sizes)
    classes, class_of = quotient(total, [(offsets[i] + x, offsets[j] + y) for (i, x), (j, y) in identifications])
    legs = tuple(tuple(class_of[offsets[i] + x] for x in range(sizes[i])) for i in range(len(objects)))
    if G is None:
        return Colimit(trivial_gset(_TRIVIAL, len(classes)), legs)
    action = []
    for g in range(G.order):
        row = []
        for c in classes:
            i = next(k for k in range(len(sizes)) if offsets[k] <= c[0] < offsets[k] + sizes[k])
            row.append(legs[i][objects[i].action[g][c[0] - offsets[i]]])
        action.append(tuple(row))
    pts = tuple(tuple(_locate(offsets, sizes, p) for p in c) for c in classes)
    return Colimit(GSet(G, pts, tuple(action)), legs)


def _locate(offsets, sizes, p):
    for k, (o, s) in enumerate(zip(offsets, sizes)):
        if o <= p < o + s:
            return (k, p - o)
    raise IndexError(p)


_TRIVIAL = cyclic_group(1)


def gset_pushout(X: GSet, S: GSet, T: GSet, a: Sequence[int], b: Sequence[int]) -> Colimit:
    """Pushout of ``X <-a- S -b-> T``; legs are ``(X -> P, T -> P)``."""
    ids = [((0, a[s]), (1, b[s])) for s in range(len(S.points))]
    return _glue(X.group, [X, T], ids)


def set_pushout(nx: int, nt: int, a: Sequence[int], b: Sequence[int]) -> Colimit:
    return _glue(None, [nx, nt], [((0, a[s]), (1, b[s])) for s in range(len(a))])


def gset_chain_colimit(chain: Sequence[GSet], maps: Sequence[Sequence[int]]) -> Colimit:
    ids = [((i, x), (i + 1, f[x])) for i, f in enumerate(maps) for x in range(len(f))]
    return _glue(chain[0].group, list(chain), ids)


def set_chain_colimit(sizes: Sequence[int], maps: Sequence[Sequence[int]]) -> Colimit:
    ids = [((i, x), (i + 1, f[x])) for i, f in enumerate(maps) for x in range(len(f))]
    return _glue(None, list(sizes), ids)


def _bijection_witness(comparison: Sequence[int], target: Sequence[int]):
    if len(set(comparison)) != len(comparison):
        return ("not injective", tuple(comparison))
    if sorted(comparison) != sorted(target):
        return ("not surjective onto fixed points", tuple(comparison), tuple(target))
    return None


def _subgroup_label(H: Subgroup) -> list[str]:
    return [str(x) for x in H.names]


def check_fixed_tensor(G: FiniteGroup, H: Subgroup, K: Subgroup, A) -> CellularityReport:
    """``(G/H)^K x A -> (G/H x A)^K`` is a bijection (``A`` has the trivial action)."""
    na = A if isinstance(A, int) else len(A)
    cosets = coset_gset(G, H)
    prod = product_with_set(cosets, na)
    lhs = [(c, a) for c in fixed_points(cosets, K) for a in range(na)]
    comparison = [c * na + a for c, a in lhs]
    witness = _bijection_witness(comparison, fixed_points(prod, K))
    return CellularityReport(3, {"group_order": G.order, "H": _subgroup_label(H), "K": _subgroup_label(K),
                                 "set_size": na}, witness is None, witness)


def check_pushout(G: FiniteGroup, H: Subgroup, K: Subgroup, f: Sequence[int], nb: int,
                  X: GSet, attach: Sequence[int]) -> CellularityReport:
    """``(-)^H`` preserves the pushout of ``X <- G/K x A -> G/K x B`` along ``G/K x f``.

    ``f`` maps ``A = range(len(f))`` to ``B = range(nb)``; ``attach`` is an
    equivariant map ``G/K x A -> X`` in lexicographic point order.
    """
    na = len(f)
    cosets = coset_gset(G, K)
    S = product_with_set(cosets, na)
    T = product_with_set(cosets, nb)
    instance = {"group_order": G.order, "H": _subgroup_label(H), "K": _subgroup_label(K), "f": list(f),
                "B": nb, "X": len(X.points), "attach": list(attach)}
    if not is_equivariant(S, X, attach):
        return CellularityReport(2, instance, False, ("attaching map is not equivariant", tuple(attach)))
    cell = [c * nb + f[a] for c in range(len(cosets.points)) for a in range(na)]
    P = gset_pushout(X, S, T, attach, cell)

    fx, fs, ft = fixed_points(X, H), fixed_points(S, H), fixed_points(T, H)
    px = {x: i for i, x in enumerate(fx)}
    pt = {t: i for i, t in enumerate(ft)}
    Q = set_pushout(len(fx), len(ft), [px[attach[s]] for s in fs], [pt[cell[s]] for s in fs])
    comparison = [None] * len(Q.gset.points)
    for leg, fixed in ((0, fx), (1, ft)):
        for i, p in enumerate(fixed):
            q = Q.legs[leg][i]
            if comparison[q] is not None and comparison[q] != P.legs[leg][p]:
                return CellularityReport(2, instance, False, ("comparison map not well defined", q))
            comparison[q] = P.legs[leg][p]
    witness = _bijection_witness(comparison, fixed_points(P.gset, H))
    return CellularityReport(2, instance, witness is None, witness)


def check_filtered_colimit(G: FiniteGroup, H: Subgroup, chain: Sequence[GSet],
                           maps: Sequence[Sequence[int]]) -> CellularityReport:
    """``(-)^H`` preserves the colimit of a finite chain ``X_0 -> ... -> X_m``."""
    instance = {"group_order": G.order, "H": _subgroup_label(H), "sizes": [len(X.points) for X in chain],
                "maps": [list(f) for f in maps]}
    for X, Y, f in zip(chain, chain[1:], maps):
        if not is_equivariant(X, Y, f):
            return CellularityReport(1, instance, False, ("chain map is not equivariant", tuple(f)))
    P = gset_chain_colimit(chain, maps)
    fixed = [fixed_points(X, H) for X in chain]
    pos = [{x: i for i, x in enumerate(fx)} for fx in fixed]
    Q = set_chain_colimit([len(fx) for fx in fixed],
                          [[pos[i + 1][f[x]] for x in fixed[i]] for i, f in enumerate(maps)])
    comparison = [None] * len(Q.gset.points)
    for i, fx in enumerate(fixed):
        for j, x in enumerate(fx):
            q = Q.legs[i][j]
            if comparison[q] is not None and comparison[q] != P.legs[i][x]:
                return CellularityReport(1, instance, False, ("comparison map not well defined", q))
            comparison[q] = P.legs[i][x]
    witness = _bijection_witness(comparison, fixed_points(P.gset, H))
    return CellularityReport(1, instance, witness is None, witness)


def check_fixed_tensor_levelwise(G: FiniteGroup, H: Subgroup, K: Subgroup,
                                 A: TruncatedSSet) -> list[CellularityReport]:
    """Condition (3) with a truncated simplicial set in place of ``A``, one report per level."""
    reports = []
    for k, level in enumerate(A.levels):
        rep = check_fixed_tensor(G, H, K, len(level))
        rep.instance["level"] = k
        reports.append(rep)
    return reports


# Universal properties, checked against every cocone into small test G-sets.

def functions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(m), repeat=n)


def pushout_universality_failures(X: GSet, S: GSet, T: GSet, a, b, P: Colimit, tests: Sequence[GSet]):
    """Yield cocones into ``tests`` that do not factor uniquely through ``P``."""
    for Z in tests:
        for u in enumerate_gmaps(X, Z):
            for v in enumerate_gmaps(T, Z):
                if any(u[a[s]] != v[b[s]] for s in range(len(S.points))):
                    continue
                factor = [h for h in enumerate_gmaps(P.gset, Z)
                          if all(h[P.legs[0][x]] == u[x] for x in range(len(X.points)))
                          and all(h[P.legs[1][t]] == v[t] for t in range(len(T.points)))]
                if len(factor) != 1:
                    yield (Z.points, u, v, len(factor))


def chain_universality_failures(chain: Sequence[GSet], maps, P: Colimit, tests: Sequence[GSet]):
    for Z in tests:
        for legs in itertools.product(*[enumerate_gmaps(X, Z) for X in chain]):
            if any(legs[i][x] != legs[i + 1][f[x]] for i, f in enumerate(maps) for x in range(len(f))):
                continue
            factor = [h for h in enumerate_gmaps(P.gset, Z)
                      if all(h[P.legs[i][x]] == legs[i][x] for i in range(len(chain))
                             for x in range(len(chain[i].points)))]
            if len(factor) != 1:
                yield (Z.points, legs, len(factor))


# Enumeration of the instance space.

def gsets_up_to_iso(G: FiniteGroup, max_size: int) -> list[GSet]:
    """Every G-set with at most ``max_size`` points up to isomorphism, as sums of ``G/K``."""
    orbits = [coset_gset(G, K) for K in conjugacy_class_representatives(G)]
    orbits = [O for O in orbits if len(O.points) <= max_size]
    out = [GSet(G, (), tuple(() for _ in range(G.order)))]
    for r in range(1, max_size + 1):
        for combo in itertools.combinations_with_replacement(range(len(orbits)), r):
            if sum(len(orbits[i].points) for i in combo) <= max_size:
                out.append(disjoint_union(*[orbits[i] for i in combo]))
    return out


def canonical_maps(max_a: int, max_b: int, injective: bool = False) -> list[tuple[tuple[int, ...], int]]:
    """Maps ``A -> B`` up to relabelling of ``A`` and ``B``: sorted images with sorted fibre sizes."""
    out = []
    for nb in range(max_b + 1):
        for na in range(max_a + 1):
            seen = set()
            for f in functions(na, nb):
                if injective and len(set(f)) < na:
                    continue
                fibres = tuple(sorted((f.count(b) for b in range(nb)), reverse=True))
                if fibres in seen:
                    continue
                seen.add(fibres)
                out.append((tuple(b for b, k in enumerate(fibres) for _ in range(k)), nb))
    return out


@dataclass
class SuiteSummary:
    condition: int
    instances: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def fixed_tensor_suite(groups, max_a: int = 3) -> SuiteSummary:
    out = SuiteSummary(3)
    for G in groups:
        reps = conjugacy_class_representatives(G)
        for H in reps:
            for K in subgroups(G):
                for na in range(max_a + 1):
                    rep = check_fixed_tensor(G, H, K, na)
                    out.instances += 1
                    if not rep.verdict:
                        out.failures.append(rep)
    return out


def pushout_suite(groups, max_a: int = 3, max_b: int = 3, max_x: int = 4,
                  injective: bool = True) -> SuiteSummary:
    """Condition (2) over cells ``G/K x f``.

    ``f`` ranges over injections by default, the finite analogue of boundary
    inclusions; collapsing maps can glue free points into a fixed one.
    """
    out = SuiteSummary(2)
    maps = canonical_maps(max_a, max_b, injective)
    for G in groups:
        reps = conjugacy_class_representatives(G)
        gsets = gsets_up_to_iso(G, max_x)
        auts = [automorphisms(X) for X in gsets]
        for K in reps:
            cosets = coset_gset(G, K)
            for X, X_auts in zip(gsets, auts):
                for f, nb in maps:
                    S = product_with_set(cosets, len(f))
                    attaches = map_orbit_reps(enumerate_gmaps(S, X), [tuple(range(len(S.points)))], X_auts)
                    for attach, _ in attaches:
                        for H in subgroups(G):
                            rep = check_pushout(G, H, K, f, nb, X, attach)
                            out.instances += 1
                            if not rep.verdict:
                                out.failures.append(rep)
    return out


def automorphisms(X: GSet) -> list[tuple[int, ...]]:
    """Equivariant bijections ``X -> X``."""
    n = len(X.points)
    return [f for f in enumerate_gmaps(X, X) if len(set(f)) == n]


def map_orbit_reps(maps, src_auts, tgt_auts):
    """Representatives of ``maps`` under ``f -> b . f . a^-1``, each with the
    target automorphisms ``b`` that can be paired with some ``a`` to fix it."""
    src_inv = [tuple(sorted(range(len(a)), key=a.__getitem__)) for a in src_auts]
    seen = set()
    out = []
    for f in maps:
        if f in seen:
            continue
        stab = set()
        for a_inv in src_inv:
            for b in tgt_auts:
                g = tuple(b[f[a_inv[x]]] for x in range(len(f)))
                seen.add(g)
                if g == f:
                    stab.add(b)
        out.append((f, sorted(stab)))
    return out


def chains_of_gsets(G: FiniteGroup, max_x: int, max_maps: int):
    """Chains ``X_0 -> ... -> X_m`` with ``m <= max_maps``, one per isomorphism class of diagram.

    Generated depth first, so nothing beyond the current chain is held in memory.
    """
    gsets = gsets_up_to_iso(G, max_x)
    auts = [automorphisms(X) for X in gsets]

    def extend(objs, maps, last, stab):
        yield objs, maps
        if len(maps) == max_maps:
            return
        for j, Y in enumerate(gsets):
            for f, sub in map_orbit_reps(enumerate_gmaps(objs[-1], Y), stab, auts[j]):
                yield from extend(objs + (Y,), maps + (f,), j, sub)

    for i, X in enumerate(gsets):
        yield from extend((X,), (), i, auts[i])


def colimit_suite(groups, max_x: int = 4, max_maps: int = 2) -> SuiteSummary:
    out = SuiteSummary(1)
    for G in groups:
        subs = subgroups(G)
        for objs, maps in chains_of_gsets(G, max_x, max_maps):
            for H in subs:
                rep = check_filtered_colimit(G, H, objs, maps)
                out.instances += 1
                if not rep.verdict:
                    out.failures.append(rep)
    return out


def cellularity_suites(max_order: int = 6, max_a: int = 3, max_b: int = 3, max_x: int = 4,
                       max_maps: int = 2) -> list[SuiteSummary]:
    groups = [G for _, G in small_groups(max_order)]
    return [colimit_suite(groups, max_x, max_maps),
            pushout_suite(groups, max_a, max_b, max_x),
            fixed_tensor_suite(groups, max_a)]
