"""Finite groups as multiplication tables, their subgroups and finite G-sets.

Elements, points and subgroup members are always referred to by index; names
are kept only for display and serialization.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

from .errors import ValidationError

MAX_GROUP_ORDER = 24
EXHAUSTIVE_SUBGROUP_ORDER = 8


class GroupError(ValidationError):
    pass


class NonAssociative(GroupError):
    pass


class NoInverse(GroupError):
    pass


class BadIdentity(GroupError):
    pass


class GSetError(ValidationError):
    pass


@dataclass(frozen=True)
class FiniteGroup:
    names: tuple
    mult: tuple[tuple[int, ...], ...]
    identity: int

    @property
    def order(self) -> int:
        return len(self.names)

    def __len__(self):
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.mult[a][b]

    @cached_property
    def inverses(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(row.index(e) for row in self.mult)

    def inv(self, a: int) -> int:
        return self.inverses[a]

    @cached_property
    def index_of(self) -> dict:
        return {name: i for i, name in enumerate(self.names)}

    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        span = frozenset([self.identity])
        for g in range(self.order):
            if g not in span:
                gens.append(g)
                span = closure(self, span | {g})
        return tuple(gens)

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"


def validate_group(table: Sequence[Sequence[int]], identity: int | None = None,
                   names: Sequence[Hashable] | None = None) -> FiniteGroup:
    """Check the group axioms on a full multiplication table.

    ``table[a][b]`` is the index of ``a*b``.  When ``identity`` is omitted the
    table is searched for a two-sided unit.  Axioms are checked in the order
    closure, identity, inverses, associativity; the first failure is raised.
    """
    n = len(table)
    if n == 0:
        raise GroupError("empty group table")
    if n > MAX_GROUP_ORDER:
        raise GroupError(f"group order {n} exceeds the cap {MAX_GROUP_ORDER}")
    mult = tuple(tuple(int(x) for x in row) for row in table)
    for a, row in enumerate(mult):
        if len(row) != n:
            raise GroupError(f"row {a} has length {len(row)}, expected {n}", witness=a)
        for b, c in enumerate(row):
            if not 0 <= c < n:
                raise GroupError(f"product {a}*{b} = {c} is out of range", witness=(a, b))

    def is_unit(e):
        return all(mult[e][x] == x and mult[x][e] == x for x in range(n))

    if identity is None:
        units = [e for e in range(n) if is_unit(e)]
        if not units:
            raise BadIdentity("no two-sided identity in table")
        identity = units[0]
    elif not 0 <= identity < n or not is_unit(identity):
        raise BadIdentity(f"element {identity} is not a two-sided identity", witness=identity)

    for a in range(n):
        if not any(mult[a][b] == identity and mult[b][a] == identity for b in range(n)):
            raise NoInverse(f"element {a} has no two-sided inverse", witness=a)

    for a, b, c in itertools.product(range(n), repeat=3):
        if mult[mult[a][b]][c] != mult[a][mult[b][c]]:
            raise NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})", witness=(a, b, c))

    if names is None:
        names = tuple(range(n))
    names = tuple(names)
    if len(names) != n or len(set(names)) != n:
        raise GroupError("element names must be distinct and match the table size")
    return FiniteGroup(names=names, mult=mult, identity=identity)


def closure(G: FiniteGroup, generators) -> frozenset:
    """The subgroup generated by ``generators`` (finite, so products suffice)."""
    members = {G.identity, *generators}
    frontier = list(members)
    while frontier:
        new = []
        for a in frontier:
            for b in list(members):
                for c in (G.mult[a][b], G.mult[b][a]):
                    if c not in members:
                        members.add(c)
                        new.append(c)
        frontier = new
    return frozenset(members)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(self.members)))

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.member_set

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def member_set(self) -> frozenset:
        return frozenset(self.members)

    def issubset(self, other: Subgroup) -> bool:
        return self.member_set <= other.member_set

    @property
    def names(self) -> list:
        return [self.parent.names[g] for g in self.members]

    def validate(self) -> Subgroup:
        G = self.parent
        s = self.member_set
        if G.identity not in s:
            raise GroupError("subgroup does not contain the identity", witness=self.members)
        for a in s:
            if G.inv(a) not in s:
                raise GroupError(f"subgroup not closed under inverse at {a}", witness=a)
            for b in s:
                if G.mult[a][b] not in s:
                    raise GroupError(f"subgroup not closed under product {a}*{b}", witness=(a, b))
        return self


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def is_subgroup(G: FiniteGroup, members) -> bool:
    s = frozenset(members)
    if G.identity not in s:
        return False
    return all(G.mult[a][b] in s for a in s for b in s)


def subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup of ``G`` exactly once, sorted by size then members."""
    n = G.order
    if n > MAX_GROUP_ORDER:
        raise GroupError(f"group order {n} exceeds the cap {MAX_GROUP_ORDER}")
    found: set[frozenset] = set()
    if n <= EXHAUSTIVE_SUBGROUP_ORDER:
        others = [g for g in range(n) if g != G.identity]
        for r in range(len(others) + 1):
            for combo in itertools.combinations(others, r):
                s = frozenset((G.identity, *combo))
                if is_subgroup(G, s):
                    found.add(s)
    else:
        # every subgroup is a join of cyclic subgroups
        found = {closure(G, [g]) for g in range(n)}
        frontier = set(found)
        while frontier:
            new = set()
            for a in frontier:
                for b in found:
                    j = closure(G, a | b)
                    if j not in found and j not in new:
                        new.add(j)
            found |= new
            frontier = new
    return [Subgroup(G, tuple(sorted(s))) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def conjugacy_class_representatives(G: FiniteGroup) -> list[Subgroup]:
    """One subgroup per conjugacy class, the first in :func:`subgroups` order."""
    reps = []
    seen: set[frozenset] = set()
    for H in subgroups(G):
        if H.member_set in seen:
            continue
        reps.append(H)
        for g in range(G.order):
            gi = G.inv(g)
            seen.add(frozenset(G.mult[G.mult[g][h]][gi] for h in H))
    return reps


@dataclass(frozen=True)
class GSet:
    """A finite set with a left action; ``action[g][x]`` is the index of ``g.x``."""

    group: FiniteGroup = field(repr=False)
    points: tuple
    action: tuple[tuple[int, ...], ...] = field(repr=False)

    def __len__(self):
        return len(self.points)

    def act(self, g: int, x: int) -> int:
        return self.action[g][x]

    def validate(self) -> GSet:
        G = self.group
        n = len(self.points)
        if len(self.action) != G.order:
            raise GSetError("action table needs one row per group element")
        for g, row in enumerate(self.action):
            if len(row) != n or any(not 0 <= y < n for y in row):
                raise GSetError(f"action row for element {g} is not a map of points", witness=g)
        if any(self.action[G.identity][x] != x for x in range(n)):
            raise GSetError("identity does not act trivially", witness=G.identity)
        for g, h in itertools.product(range(G.order), repeat=2):
            gh = G.mult[g][h]
            for x in range(n):
                if self.action[g][self.action[h][x]] != self.action[gh][x]:
                    raise GSetError(f"g.(h.x) != (gh).x for g={g}, h={h}, x={x}", witness=(g, h, x))
        return self

    def orbits(self) -> list[tuple[int, ...]]:
        seen = set()
        out = []
        for x in range(len(self.points)):
            if x in seen:
                continue
            orb = tuple(sorted({row[x] for row in self.action}))
            seen.update(orb)
            out.append(orb)
        return out

    def stabilizer(self, x: int) -> Subgroup:
        return Subgroup(self.group, tuple(g for g, row in enumerate(self.action) if row[x] == x))


def gset_from_generators(G: FiniteGroup, points: Sequence, generator_action: dict[int, Sequence[int]]) -> GSet:
    """Extend an action given on generators to all of ``G`` and validate it."""
    n = len(points)
    tables: dict[int, tuple[int, ...]] = {G.identity: tuple(range(n))}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for s, perm in generator_action.items():
                b = G.mult[a][s]
                img = tuple(tables[a][perm[x]] for x in range(n))
                if b in tables:
                    if tables[b] != img:
                        raise GSetError(f"generator tables are not a group action (element {b})", witness=b)
                else:
                    tables[b] = img
                    nxt.append(b)
        frontier = nxt
    if len(tables) != G.order:
        raise GSetError("the given generators do not generate the group")
    return GSet(G, tuple(points), tuple(tables[g] for g in range(G.order))).validate()


def trivial_gset(G: FiniteGroup, points) -> GSet:
    if isinstance(points, int):
        points = tuple(range(points))
    pts = tuple(points)
    row = tuple(range(len(pts)))
    return GSet(G, pts, tuple(row for _ in range(G.order)))


def regular_gset(G: FiniteGroup) -> GSet:
    return GSet(G, tuple(G.names), G.mult)


def left_cosets(G: FiniteGroup, H: Subgroup) -> list[tuple[int, ...]]:
    """Left cosets ``gH`` ordered by their least element."""
    cosets = {}
    for g in range(G.order):
        c = tuple(sorted(G.mult[g][h] for h in H))
        cosets.setdefault(c, None)
    return sorted(cosets, key=lambda c: c[0])


def coset_gset(G: FiniteGroup, H: Subgroup) -> GSet:
    """``G/H`` with left translation; points are the cosets as sorted member tuples."""
    cosets = left_cosets(G, H)
    where = {g: i for i, c in enumerate(cosets) for g in c}
    action = tuple(tuple(where[G.mult[g][c[0]]] for c in cosets) for g in range(G.order))
    return GSet(G, tuple(cosets), action)


def product_gset(X: GSet, Y: GSet) -> GSet:
    """Diagonal action on ``X x Y``; points ordered lexicographically."""
    if X.group is not Y.group and X.group != Y.group:
        raise GSetError("product of G-sets over different groups")
    ny = len(Y.points)
    pts = tuple((x, y) for x in X.points for y in Y.points)
    action = tuple(
        tuple(X.action[g][i] * ny + Y.action[g][j] for i in range(len(X.points)) for j in range(ny))
        for g in range(X.group.order)
    )
    return GSet(X.group, pts, action)


def product_with_set(X: GSet, A) -> GSet:
    """``X x A`` where the plain set ``A`` (a size or a sequence) carries the trivial action."""
    return product_gset(X, trivial_gset(X.group, A))


def disjoint_union(*parts: GSet) -> GSet:
    G = parts[0].group
    pts = []
    offsets = []
    for k, X in enumerate(parts):
        offsets.append(len(pts))
        pts.extend((k, p) for p in X.points)
    action = tuple(
        tuple(off + y for off, X in zip(offsets, parts) for y in X.action[g])
        for g in range(G.order)
    )
    return GSet(G, tuple(pts), action)


def fixed_points(X: GSet, H: Subgroup) -> tuple[int, ...]:
    return tuple(x for x in range(len(X.points)) if all(X.action[h][x] == x for h in H))


def is_equivariant(X: GSet, Y: GSet, f: Sequence[int]) -> bool:
    return all(
        f[X.action[g][x]] == Y.action[g][f[x]]
        for g in range(X.group.order)
        for x in range(len(X.points))
    )


def enumerate_gmaps(X: GSet, Y: GSet) -> list[tuple[int, ...]]:
    """All equivariant maps ``X -> Y`` as image tuples, in lexicographic order.

    An equivariant map is fixed by the images of orbit representatives, and the
    image of a representative ``x`` may be any point of ``Y`` fixed by the
    stabilizer of ``x``.
    """
    if X.group != Y.group:
        raise GSetError("G-maps between G-sets over different groups")
    reps = [orb[0] for orb in X.orbits()]
    choices = [fixed_points(Y, X.stabilizer(x)) for x in reps]
    maps = []
    for images in itertools.product(*choices):
        f = [None] * len(X.points)
        for x, y in zip(reps, images):
            for g in range(X.group.order):
                f[X.action[g][x]] = Y.action[g][y]
        maps.append(tuple(f))
    return sorted(maps)


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "details": self.details,
                "witness": None if self.witness is None else repr(self.witness)}


def adjunction_check(G: FiniteGroup, H: Subgroup, A, X: GSet) -> CheckReport:
    """Verify ``Map_G(G/H x A, X) ~ Map(A, X^H)`` by explicit transposition.

    ``f_sharp(a) = f(H, a)`` and ``f^sharp(gH, a) = g.f(a)``.  Both composites
    are checked to be identities on the full enumerated hom-sets.
    """
    if isinstance(A, int):
        A = tuple(range(A))
    A = tuple(A)
    na = len(A)
    cosets = coset_gset(G, H)
    source = product_with_set(cosets, A)
    base_coset = next(i for i, c in enumerate(cosets.points) if G.identity in c)
    reps = [c[0] for c in cosets.points]
    fixed = fixed_points(X, H)
    fixed_set = set(fixed)

    left = enumerate_gmaps(source, X)
    right = list(itertools.product(fixed, repeat=na))

    def flat(ci, a):
        return ci * na + a

    def down(f):
        return tuple(f[flat(base_coset, a)] for a in range(na))

    def up(phi):
        return tuple(X.action[reps[ci]][phi[a]] for ci in range(len(reps)) for a in range(na))

    details = {"group_order": G.order, "subgroup": list(H.names), "set_size": na,
               "gset_size": len(X.points), "left_count": len(left), "right_count": len(right)}
    name = "adjunction"
    if len(left) != len(right):
        return CheckReport(name, False, details, witness=("cardinality", len(left), len(right)))
    for f in left:
        phi = down(f)
        if not set(phi) <= fixed_set:
            return CheckReport(name, False, details, witness=("f_sharp leaves fixed points", f))
        if up(phi) != f:
            return CheckReport(name, False, details, witness=("up(down(f)) != f", f))
    for phi in right:
        f = up(phi)
        if not is_equivariant(source, X, f):
            return CheckReport(name, False, details, witness=("f^sharp not equivariant", phi))
        if down(f) != phi:
            return CheckReport(name, False, details, witness=("down(up(phi)) != phi", phi))
    return CheckReport(name, True, details)


# Small named groups used throughout the corpus and tests.

def cyclic_group(n: int) -> FiniteGroup:
    return validate_group([[(a + b) % n for b in range(n)] for a in range(n)], 0,
                          names=[f"r{k}" if k else "e" for k in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """``S_n`` on permutations in lexicographic order; product is ``(pq)(i) = p(q(i))``."""
    perms = list(itertools.permutations(range(n)))
    where = {p: i for i, p in enumerate(perms)}
    table = [[where[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms]
    names = ["".join(str(i) for i in p) for p in perms]
    return validate_group(table, where[tuple(range(n))], names=names)


def klein_four() -> FiniteGroup:
    elems = [(0, 0), (1, 0), (0, 1), (1, 1)]
    where = {e: i for i, e in enumerate(elems)}
    table = [[where[((a[0] + b[0]) % 2, (a[1] + b[1]) % 2)] for b in elems] for a in elems]
    return validate_group(table, 0, names=["e", "a", "b", "ab"])


def small_groups(max_order: int) -> list[tuple[str, FiniteGroup]]:
    """All groups of order at most ``min(max_order, 6)`` up to isomorphism."""
    catalogue = [
        ("Z1", lambda: cyclic_group(1)),
        ("Z2", lambda: cyclic_group(2)),
        ("Z3", lambda: cyclic_group(3)),
        ("Z4", lambda: cyclic_group(4)),
        ("V4", klein_four),
        ("Z5", lambda: cyclic_group(5)),
        ("Z6", lambda: cyclic_group(6)),
        ("S3", lambda: symmetric_group(3)),
    ]
    out = []
    for name, make in catalogue:
        G = make()
        if G.order <= max_order:
            out.append((name, G))
    return out
