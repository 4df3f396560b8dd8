"""Brute-force reference computations, written independently of the library code paths.

They only read the raw tables of the library's data types and recompute each
quantity from definitions, trading speed for obviousness.
"""

import itertools


def subgroups_by_subsets(mult, identity):
    """Every subset containing the identity and closed under products."""
    n = len(mult)
    out = []
    for mask in range(1 << n):
        s = {g for g in range(n) if mask >> g & 1}
        if identity in s and all(mult[a][b] in s for a in s for b in s):
            out.append(frozenset(s))
    return out


def equivariant_functions(X, Y):
    """All functions X -> Y commuting with the action, by filtering every function."""
    nx, ny = len(X.points), len(Y.points)
    out = []
    for f in itertools.product(range(ny), repeat=nx):
        if all(f[X.action[g][x]] == Y.action[g][f[x]] for g in range(X.group.order) for x in range(nx)):
            out.append(f)
    return out


def labelled_actions(G, n):
    """Every action of G on range(n), as full tables, via all maps G -> S_n."""
    perms = list(itertools.permutations(range(n)))
    out = []
    for table in _by_generators(G, perms, n):
        if all(table[G.mult[g][h]] == tuple(table[g][table[h][x]] for x in range(n))
               for g in range(G.order) for h in range(G.order)):
            out.append(table)
    return out


def _by_generators(G, perms, n):
    gens = G.generators()
    for images in itertools.product(perms, repeat=len(gens)):
        table = {G.identity: tuple(range(n))}
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            nxt = []
            for a in frontier:
                for s, p in zip(gens, images):
                    b = G.mult[s][a]
                    img = tuple(p[table[a][x]] for x in range(n))
                    if b in table:
                        ok = ok and table[b] == img
                    else:
                        table[b] = img
                        nxt.append(b)
            frontier = nxt
        if ok and len(table) == G.order:
            yield tuple(table[g] for g in range(G.order))


def composable_chains(C, n):
    """All n-tuples of morphisms with matching endpoints, by filtering the product."""
    if n == 0:
        return [((x,), ()) for x in range(len(C.objects))]
    out = []
    for es in itertools.product(range(len(C.morphisms)), repeat=n):
        if all(C.tgt[es[i]] == C.src[es[i + 1]] for i in range(n - 1)):
            out.append(((C.src[es[0]],) + tuple(C.tgt[f] for f in es), es))
    return out


def invertible(C):
    out = {}
    for f in range(len(C.morphisms)):
        for g in range(len(C.morphisms)):
            if C.src[g] == C.tgt[f] and C.tgt[g] == C.src[f] and \
                    C.comp[(f, g)] == C.ids[C.src[f]] and C.comp[(g, f)] == C.ids[C.tgt[f]]:
                out[f] = g
    return out


def natural_isos(C, n):
    """(#objects, #morphisms) of iso(C^[n]) by checking every ladder between every pair."""
    objs = composable_chains(C, n)
    inv = invertible(C)
    count = 0
    for (vs, es), (ws, fs) in itertools.product(objs, repeat=2):
        choices = [[f for f in inv if C.src[f] == v and C.tgt[f] == w] for v, w in zip(vs, ws)]
        for lad in itertools.product(*choices):
            if all(C.comp[(es[i], lad[i + 1])] == C.comp[(lad[i], fs[i])] for i in range(n)):
                count += 1
    return len(objs), count


def components(C):
    """Connected components of a groupoid by depth-first search."""
    adj = {x: set() for x in range(len(C.objects))}
    for f in range(len(C.morphisms)):
        adj[C.src[f]].add(C.tgt[f])
        adj[C.tgt[f]].add(C.src[f])
    seen, comps = set(), []
    for x in adj:
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            y = stack.pop()
            if y in comp:
                continue
            comp.add(y)
            stack.extend(adj[y] - comp)
        seen |= comp
        comps.append(comp)
    return comps


def is_equivalence(F):
    """Essential surjectivity and bijectivity on every hom-set, for groupoid functors."""
    D, E = F.dom, F.cod
    comp_of = {}
    for k, c in enumerate(components(E)):
        for x in c:
            comp_of[x] = k
    if {comp_of[F.obj_map[x]] for x in range(len(D.objects))} != set(range(len(components(E)))):
        return False
    for x, y in itertools.product(range(len(D.objects)), repeat=2):
        dom = [f for f in range(len(D.morphisms)) if D.src[f] == x and D.tgt[f] == y]
        cod = [g for g in range(len(E.morphisms)) if E.src[g] == F.obj_map[x] and E.tgt[g] == F.obj_map[y]]
        if sorted(F.mor_map[f] for f in dom) != sorted(cod):
            return False
    return True


def functors(D, E):
    """Every functor D -> E, by checking all assignments of morphisms."""
    out = []
    for mm in itertools.product(range(len(E.morphisms)), repeat=len(D.morphisms)):
        om = [None] * len(D.objects)
        ok = True
        for f in range(len(D.morphisms)):
            for x, ex in ((D.src[f], E.src[mm[f]]), (D.tgt[f], E.tgt[mm[f]])):
                if om[x] is None:
                    om[x] = ex
                ok = ok and om[x] == ex
        if not ok:
            continue
        if any(mm[D.ids[x]] != E.ids[om[x]] for x in range(len(D.objects))):
            continue
        if all(E.comp[(mm[f], mm[g])] == mm[h] for (f, g), h in D.comp.items()):
            out.append((tuple(om), mm))
    return out


def merge_classes(n, pairs):
    """Equivalence classes generated by ``pairs`` by repeated merging of sets."""
    classes = [{x} for x in range(n)]
    changed = True
    while changed:
        changed = False
        for a, b in pairs:
            ca = next(c for c in classes if a in c)
            cb = next(c for c in classes if b in c)
            if ca is not cb:
                ca |= cb
                classes.remove(cb)
                changed = True
    return sorted(tuple(sorted(c)) for c in classes)
