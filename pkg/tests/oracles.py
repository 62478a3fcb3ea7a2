"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: plain dict/set breadth-first search
over image tuples, brute-force maximisation over itertools enumerations, and
direct reachability computations, with no code shared with the library
internals beyond the Digraph container's fields.
"""

from itertools import combinations, permutations

from arcwords import Digraph


def naive_lengths(d: Digraph) -> dict[tuple[int, ...], int]:
    """Word length of every member, keyed by image tuple, by dict BFS."""
    n = d.n
    arcs = list(d.sorted_edges)

    def times_arc(images: tuple[int, ...], u: int, v: int) -> tuple[int, ...]:
        return tuple(v if x == u else x for x in images)

    identity = tuple(range(1, n + 1))
    dist: dict[tuple[int, ...], int] = {}
    frontier: list[tuple[int, ...]] = []
    for u, v in arcs:
        g = times_arc(identity, u, v)
        if g not in dist:
            dist[g] = 1
            frontier.append(g)
    while frontier:
        nxt = []
        for t in frontier:
            for u, v in arcs:
                s = times_arc(t, u, v)
                if s not in dist:
                    dist[s] = dist[t] + 1
                    nxt.append(s)
        frontier = nxt
    return dist


def naive_orbit_counts(images: tuple[int, ...]) -> tuple[int, int]:
    """(fix, cycl) of a transformation given as an image tuple."""
    n = len(images)
    fix = sum(1 for v in range(1, n + 1) if images[v - 1] == v)
    comp_of = {v: {v} for v in range(1, n + 1)}
    for v in range(1, n + 1):
        w = images[v - 1]
        if comp_of[v] is not comp_of[w]:
            merged = comp_of[v] | comp_of[w]
            for x in merged:
                comp_of[x] = merged
    seen: set[int] = set()
    cycl = 0
    for v in range(1, n + 1):
        comp = comp_of[v]
        if v in seen:
            continue
        seen |= comp
        if len(comp) >= 2 and {images[x - 1] for x in comp} == comp:
            cycl += 1
    return fix, cycl


def _reach(edges: set[tuple[int, int]], n: int, start: int) -> set[int]:
    seen = {start}
    todo = [start]
    while todo:
        x = todo.pop()
        for u, v in edges:
            if u == x and v not in seen:
                seen.add(v)
                todo.append(v)
    return seen


def naive_strong_components(d: Digraph) -> list[frozenset[int]]:
    edges = set(d.edges)
    reach = {v: _reach(edges, d.n, v) for v in range(1, d.n + 1)}
    comps = []
    assigned: set[int] = set()
    for v in range(1, d.n + 1):
        if v in assigned:
            continue
        comp = frozenset(w for w in reach[v] if v in reach[w])
        comps.append(comp)
        assigned |= comp
    return comps


def naive_component_gravity(d: Digraph, images: tuple[int, ...]) -> int:
    """n - fix plus cycles counted on per-component stay restrictions."""
    n = d.n
    fix, _ = naive_orbit_counts(images)
    total = n - fix
    for comp in naive_strong_components(d):
        beta = list(range(1, n + 1))
        for v in comp:
            if images[v - 1] in comp:
                beta[v - 1] = images[v - 1]
        _, cycl = naive_orbit_counts(tuple(beta))
        total += cycl
    return total


def naive_distance_matrix(d: Digraph) -> dict[tuple[int, int], int | None]:
    out: dict[tuple[int, int], int | None] = {}
    for s in range(1, d.n + 1):
        layer = {s: 0}
        frontier = [s]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for x in frontier:
                for u, v in d.edges:
                    if u == x and v not in layer:
                        layer[v] = depth
                        nxt.append(v)
            frontier = nxt
        for t in range(1, d.n + 1):
            out[s, t] = layer.get(t)
    return out


def brute_delta(t: Digraph, r: int) -> int:
    """Max total distance of an injective partial map of size r, by enumeration."""
    dist = naive_distance_matrix(t)
    best = 0
    verts = range(1, t.n + 1)
    for dom in combinations(verts, r):
        for img in permutations(verts, r):
            total = 0
            for u, v in zip(dom, img):
                step = dist[u, v] if u != v else 0
                if step is None:
                    break
                total += step
            else:
                best = max(best, total)
    return best


def iso_orbit(d: Digraph) -> set[frozenset[tuple[int, int]]]:
    """Edge sets of every relabelling of d."""
    out = set()
    for perm in permutations(range(1, d.n + 1)):
        out.add(frozenset((perm[u - 1], perm[v - 1]) for u, v in d.edges))
    return out


def contains_spanning_strong_tournament(d: Digraph) -> bool:
    """Whether some orientation choice inside d is a strong tournament on [n]."""
    n = d.n
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        edges = set()
        ok = True
        for k, (i, j) in enumerate(pairs):
            e = (i, j) if mask >> k & 1 else (j, i)
            if e not in d.edges:
                ok = False
                break
            edges.add(e)
        if not ok:
            continue
        if all(len(_reach(edges, n, v)) == n for v in range(1, n + 1)):
            return True
    return False
