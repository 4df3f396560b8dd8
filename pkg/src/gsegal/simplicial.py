"""Truncated simplicial sets and simplicial G-sets with explicit degeneracies."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable

from .cat import DEFAULT_MAX_LEVEL, chain_degeneracy, chain_face, chain_label, chains
from .errors import TruncationExceeded, ValidationError
from .gcat import GCategory
from .group import FiniteGroup, GSet, Subgroup


class SimplicialError(ValidationError):
    pass


@dataclass(frozen=True)
class TruncatedSSet:
    """Levels ``0..N`` of simplices.

    ``faces[k][i]`` maps level ``k`` to ``k-1`` (``faces[0]`` is empty) and
    ``degens[k][i]`` maps level ``k`` to ``k+1`` for ``k < N``.
    """

    levels: tuple[tuple, ...]
    faces: tuple = field(repr=False)
    degens: tuple = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.levels) - 1

    def sizes(self) -> list[int]:
        return [len(lv) for lv in self.levels]

    def d(self, k: int, i: int, x: int) -> int:
        return self.faces[k][i][x]

    def s(self, k: int, i: int, x: int) -> int:
        return self.degens[k][i][x]

    def nondegenerate(self, k: int) -> list[int]:
        if k == 0:
            return list(range(len(self.levels[0])))
        images = {y for i in range(k) for y in self.degens[k - 1][i]}
        return [x for x in range(len(self.levels[k])) if x not in images]

    def validate(self) -> TruncatedSSet:
        for witness in simplicial_identity_failures(self.faces, self.degens, [len(lv) for lv in self.levels]):
            raise SimplicialError(f"simplicial identity fails: {witness}", witness=witness)
        return self


def simplicial_identity_failures(faces, degens, sizes):
    """Yield every violated simplicial identity, exhaustively on all simplices.

    ``faces``/``degens`` are indexed as in :class:`TruncatedSSet` and each map
    is any sequence supporting ``map[x]``.
    """
    N = len(sizes) - 1
    for k in range(2, N + 1):
        for i, j in itertools.combinations(range(k + 1), 2):
            for x in range(sizes[k]):
                if faces[k - 1][i][faces[k][j][x]] != faces[k - 1][j - 1][faces[k][i][x]]:
                    yield ("d_i d_j = d_{j-1} d_i", k, i, j, x)
    for k in range(N):
        for j in range(k + 1):
            s = degens[k][j]
            for i in range(k + 2):
                for x in range(sizes[k]):
                    lhs = faces[k + 1][i][s[x]]
                    if i < j:
                        rhs = degens[k - 1][j - 1][faces[k][i][x]]
                    elif i in (j, j + 1):
                        rhs = x
                    else:
                        rhs = degens[k - 1][j][faces[k][i - 1][x]]
                    if lhs != rhs:
                        yield ("d_i s_j", k, i, j, x)
    for k in range(N - 1):
        for i in range(k + 1):
            for j in range(i, k + 1):
                for x in range(sizes[k]):
                    if degens[k + 1][i][degens[k][j][x]] != degens[k + 1][j + 1][degens[k][i][x]]:
                        yield ("s_i s_j = s_{j+1} s_i", k, i, j, x)


def build_sset(levels: list[list], face: Callable, degen: Callable) -> TruncatedSSet:
    """Tabulate faces and degeneracies given as functions on simplex labels."""
    at = [{lab: i for i, lab in enumerate(lv)} for lv in levels]
    N = len(levels) - 1
    faces = [()]
    for k in range(1, N + 1):
        faces.append(tuple(tuple(at[k - 1][face(lab, i)] for lab in levels[k]) for i in range(k + 1)))
    degens = []
    for k in range(N):
        degens.append(tuple(tuple(at[k + 1][degen(lab, i)] for lab in levels[k]) for i in range(k + 1)))
    return TruncatedSSet(tuple(tuple(lv) for lv in levels), tuple(faces), tuple(degens))


def _delete(t, i):
    return t[:i] + t[i + 1:]


def _repeat(t, i):
    return t[:i + 1] + t[i:]


def standard_simplex(n: int, N: int = DEFAULT_MAX_LEVEL) -> TruncatedSSet:
    """``Delta[n]``: level ``k`` holds the monotone maps ``[k] -> [n]`` as tuples."""
    if n < 0:
        raise ValueError("n must be non-negative")
    levels = [list(itertools.combinations_with_replacement(range(n + 1), k + 1)) for k in range(N + 1)]
    return build_sset(levels, _delete, _repeat)


@dataclass(frozen=True)
class SimplicialMap:
    dom: TruncatedSSet = field(repr=False)
    cod: TruncatedSSet = field(repr=False)
    maps: tuple[tuple[int, ...], ...]

    def validate(self) -> SimplicialMap:
        D, E = self.dom, self.cod
        for k in range(1, D.N + 1):
            for i in range(k + 1):
                for x in range(len(D.levels[k])):
                    if self.maps[k - 1][D.faces[k][i][x]] != E.faces[k][i][self.maps[k][x]]:
                        raise SimplicialError("map does not commute with faces", witness=(k, i, x))
        for k in range(D.N):
            for i in range(k + 1):
                for x in range(len(D.levels[k])):
                    if self.maps[k + 1][D.degens[k][i][x]] != E.degens[k][i][self.maps[k][x]]:
                        raise SimplicialError("map does not commute with degeneracies", witness=(k, i, x))
        return self

    def is_levelwise_injective(self) -> bool:
        return all(len(set(m)) == len(m) for m in self.maps)


def sub_sset(X: TruncatedSSet, keep: list[list[int]]) -> tuple[TruncatedSSet, SimplicialMap]:
    """Restrict ``X`` to the given simplices, which must be closed under faces and degeneracies."""
    keep = [sorted(k) for k in keep]
    pos = [{x: i for i, x in enumerate(k)} for k in keep]
    try:
        faces = [()] + [tuple(tuple(pos[k - 1][X.faces[k][i][x]] for x in keep[k]) for i in range(k + 1))
                        for k in range(1, X.N + 1)]
        degens = [tuple(tuple(pos[k + 1][X.degens[k][i][x]] for x in keep[k]) for i in range(k + 1))
                  for k in range(X.N)]
    except KeyError as exc:
        raise SimplicialError(f"simplex set not closed under the simplicial operators: {exc}") from None
    sub = TruncatedSSet(tuple(tuple(X.levels[k][x] for x in keep[k]) for k in range(X.N + 1)),
                        tuple(faces), tuple(degens))
    return sub, SimplicialMap(sub, X, tuple(tuple(k) for k in keep))


def spine(n: int, N: int = DEFAULT_MAX_LEVEL) -> tuple[TruncatedSSet, SimplicialMap]:
    """The union of the edges ``alpha^i = (i, i+1)`` inside ``Delta[n]``, with its inclusion."""
    if n < 1:
        raise ValueError("the spine needs n >= 1")
    simplex = standard_simplex(n, N)
    keep = [[x for x, lab in enumerate(lv) if any(set(lab) <= {i, i + 1} for i in range(n))]
            for lv in simplex.levels]
    return sub_sset(simplex, keep)


def walking_iso_nerve(N: int = DEFAULT_MAX_LEVEL) -> TruncatedSSet:
    """Nerve of the contractible groupoid on ``x, y``: level ``k`` is all of ``{x, y}^(k+1)``."""
    levels = [list(itertools.product("xy", repeat=k + 1)) for k in range(N + 1)]
    return build_sset(levels, _delete, _repeat)


@dataclass(frozen=True)
class TruncatedSGSet:
    """A truncated simplicial set with ``actions[k][g][x]`` acting on level ``k``."""

    sset: TruncatedSSet
    group: FiniteGroup = field(repr=False)
    actions: tuple = field(repr=False)

    def level_gset(self, k: int) -> GSet:
        return GSet(self.group, self.sset.levels[k], self.actions[k])

    def validate(self) -> TruncatedSGSet:
        X = self.sset
        X.validate()
        for k in range(X.N + 1):
            self.level_gset(k).validate()
        for g in range(self.group.order):
            for k in range(1, X.N + 1):
                for i in range(k + 1):
                    d = X.faces[k][i]
                    if any(d[self.actions[k][g][x]] != self.actions[k - 1][g][d[x]] for x in range(len(d))):
                        raise SimplicialError("face map is not equivariant", witness=(k, i, g))
            for k in range(X.N):
                for i in range(k + 1):
                    s = X.degens[k][i]
                    if any(s[self.actions[k][g][x]] != self.actions[k + 1][g][s[x]] for x in range(len(s))):
                        raise SimplicialError("degeneracy is not equivariant", witness=(k, i, g))
        return self


def nerve(C: GCategory, N: int = DEFAULT_MAX_LEVEL, max_level: int = DEFAULT_MAX_LEVEL) -> TruncatedSGSet:
    """Composable chains of ``C`` with ``G`` acting componentwise."""
    if N > max_level:
        raise TruncationExceeded(f"level {N} exceeds truncation {max_level}")
    base = C.base
    keys = [chains(base, k) for k in range(N + 1)]
    at = [{key: i for i, key in enumerate(lv)} for lv in keys]
    faces = [()] + [tuple(tuple(at[k - 1][chain_face(base, key, i)] for key in keys[k]) for i in range(k + 1))
                    for k in range(1, N + 1)]
    degens = [tuple(tuple(at[k + 1][chain_degeneracy(base, key, i)] for key in keys[k]) for i in range(k + 1))
              for k in range(N)]
    sset = TruncatedSSet(tuple(tuple(chain_label(base, key) for key in lv) for lv in keys),
                         tuple(faces), tuple(degens))
    actions = tuple(
        tuple(tuple(at[k][(tuple(C.obj_act[g][x] for x in vs), tuple(C.mor_act[g][f] for f in es))]
                    for vs, es in keys[k])
              for g in range(C.group.order))
        for k in range(N + 1))
    return TruncatedSGSet(sset, C.group, actions)


def fixed_ssets(X: TruncatedSGSet, H: Subgroup) -> TruncatedSSet:
    """Levelwise ``H``-fixed simplices; equivariance makes them a sub-simplicial set."""
    keep = [[x for x in range(len(X.sset.levels[k])) if all(X.actions[k][h][x] == x for h in H)]
            for k in range(X.sset.N + 1)]
    return sub_sset(X.sset, keep)[0]
