"""Digraphs on vertex set [n]: parsing, structure, predicates, and families.

All digraphs are loop-free with at most one edge per ordered pair.  Vertices
are numbered 1..n everywhere.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import cached_property
from itertools import permutations
from typing import Iterable, Iterator, Optional

from .transform import Arc

__all__ = [
    "Digraph",
    "DigraphParseError",
    "StrongDecomposition",
    "Metrics",
    "ForbiddenPattern",
    "parse_digraph",
    "digraph_to_text",
    "closure",
    "is_closed",
    "strong_components",
    "is_acyclic",
    "is_connected",
    "is_tournament",
    "is_semicomplete",
    "metrics",
    "longest_paths",
    "satisfies_star",
    "star_violation",
    "satisfies_star_star",
    "star_star_violation",
    "band_bipartition",
    "is_band_digraph",
    "find_forbidden",
    "family",
    "FAMILY_NAMES",
    "canonical_form",
    "relabel",
]


class Digraph:
    """An immutable digraph on [n]."""

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 1:
            raise ValueError(f"need at least one vertex, got n={n}")
        es = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop edge ({u},{v})")
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"edge ({u},{v}) out of range 1..{n}")
            es.add((u, v))
        self.n = n
        self.edges = frozenset(es)

    @cached_property
    def sorted_edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def succ_sets(self) -> tuple[frozenset[int], ...]:
        out: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            out[u].add(v)
        return tuple(frozenset(s) for s in out)

    @cached_property
    def pred_sets(self) -> tuple[frozenset[int], ...]:
        inc: list[set[int]] = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            inc[v].add(u)
        return tuple(frozenset(s) for s in inc)

    def successors(self, v: int) -> frozenset[int]:
        return self.succ_sets[v]

    def predecessors(self, v: int) -> frozenset[int]:
        return self.pred_sets[v]

    def out_degree(self, v: int) -> int:
        return len(self.succ_sets[v])

    def in_degree(self, v: int) -> int:
        return len(self.pred_sets[v])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def arcs(self) -> tuple[Arc, ...]:
        """The generating arcs, one per edge, in sorted order."""
        return tuple(Arc(u, v) for u, v in self.sorted_edges)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Digraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, edges={sorted(self.edges)})"


class DigraphParseError(ValueError):
    """Parse failure; kind is one of header, malformed, loop, range, duplicate."""

    def __init__(self, kind: str, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.kind = kind
        self.line_no = line_no


def parse_digraph(text: str) -> Digraph:
    """Parse the text format: a "digraph <n>" header, then one "u v" per line.

    Lines starting with # are comments; blank lines are ignored.
    """
    n: Optional[int] = None
    edges: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "digraph" or not parts[1].isdigit() or int(parts[1]) < 1:
                raise DigraphParseError("header", line_no, f"expected 'digraph <n>', got {line!r}")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise DigraphParseError("malformed", line_no, f"expected 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise DigraphParseError("malformed", line_no, f"expected 'u v', got {line!r}") from None
        if u == v:
            raise DigraphParseError("loop", line_no, f"loop edge ({u},{v})")
        if not (1 <= u <= n and 1 <= v <= n):
            raise DigraphParseError("range", line_no, f"edge ({u},{v}) out of range 1..{n}")
        if (u, v) in edges:
            raise DigraphParseError("duplicate", line_no, f"duplicate edge ({u},{v})")
        edges.add((u, v))
    if n is None:
        raise DigraphParseError("header", 1, "missing 'digraph <n>' header")
    return Digraph(n, edges)


def digraph_to_text(d: Digraph) -> str:
    lines = [f"digraph {d.n}"]
    lines.extend(f"{u} {v}" for u, v in d.sorted_edges)
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class StrongDecomposition:
    """Strong components with a topological order of the condensation.

    components[i] are vertex sets; condensation_order lists component indices
    so that every edge between components goes from earlier to later;
    terminal[i] is True when component i has no outgoing edges.
    """

    components: tuple[frozenset[int], ...]
    condensation_order: tuple[int, ...]
    terminal: tuple[bool, ...]

    def component_of(self, v: int) -> int:
        for i, comp in enumerate(self.components):
            if v in comp:
                return i
        raise ValueError(f"vertex {v} not found")


def strong_components(d: Digraph) -> StrongDecomposition:
    """Tarjan decomposition; deterministic for a given digraph."""
    n = d.n
    index = [0] * (n + 1)
    low = [0] * (n + 1)
    on_stack = [False] * (n + 1)
    stack: list[int] = []
    comps: list[frozenset[int]] = []
    counter = 1
    # iterative Tarjan to avoid recursion limits
    for root in range(1, n + 1):
        if index[root]:
            continue
        work = [(root, iter(sorted(d.successors(root))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if not index[w]:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(sorted(d.successors(w)))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.add(w)
                    if w == v:
                        break
                comps.append(frozenset(comp))

    comp_of = {}
    for i, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = i
    k = len(comps)
    succ: list[set[int]] = [set() for _ in range(k)]
    indeg = [0] * k
    for u, v in d.edges:
        cu, cv = comp_of[u], comp_of[v]
        if cu != cv and cv not in succ[cu]:
            succ[cu].add(cv)
            indeg[cv] += 1
    # Kahn's algorithm, breaking ties by smallest member vertex
    heap = [(min(comps[i]), i) for i in range(k) if indeg[i] == 0]
    heapq.heapify(heap)
    order: list[int] = []
    while heap:
        _, i = heapq.heappop(heap)
        order.append(i)
        for j in succ[i]:
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(heap, (min(comps[j]), j))
    terminal = tuple(not succ[i] for i in range(k))
    return StrongDecomposition(tuple(comps), tuple(order), terminal)


def closure(d: Digraph) -> Digraph:
    """Add the reverse of every edge that lies on a directed cycle."""
    dec = strong_components(d)
    comp_of = {}
    for i, comp in enumerate(dec.components):
        for v in comp:
            comp_of[v] = i
    extra = {(v, u) for u, v in d.edges if comp_of[u] == comp_of[v]}
    return Digraph(d.n, d.edges | extra)


def is_closed(d: Digraph) -> bool:
    return closure(d).edges == d.edges


def is_acyclic(d: Digraph) -> bool:
    return all(len(c) == 1 for c in strong_components(d).components)


def is_strong(d: Digraph) -> bool:
    return len(strong_components(d).components) == 1


def _reach_sets(d: Digraph) -> list[set[int]]:
    reach: list[set[int]] = [set() for _ in range(d.n + 1)]
    for s in range(1, d.n + 1):
        seen = {s}
        todo = [s]
        while todo:
            v = todo.pop()
            for w in d.successors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        reach[s] = seen
    return reach


def is_connected(d: Digraph, mode: str = "unilateral") -> bool:
    """Connectivity: unilateral (default) requires a path u->v or v->u for all pairs;
    weak requires the underlying undirected graph to be connected."""
    if mode == "unilateral":
        reach = _reach_sets(d)
        return all(
            v in reach[u] or u in reach[v]
            for u in range(1, d.n + 1)
            for v in range(u + 1, d.n + 1)
        )
    if mode == "weak":
        seen = {1}
        todo = [1]
        while todo:
            v = todo.pop()
            for w in d.successors(v) | d.predecessors(v):
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == d.n
    raise ValueError(f"unknown connectivity mode {mode!r}")


def is_semicomplete(d: Digraph) -> bool:
    return all(
        d.has_edge(u, v) or d.has_edge(v, u)
        for u in range(1, d.n + 1)
        for v in range(u + 1, d.n + 1)
    )


def is_tournament(d: Digraph) -> bool:
    return all(
        d.has_edge(u, v) != d.has_edge(v, u)
        for u in range(1, d.n + 1)
        for v in range(u + 1, d.n + 1)
    )


@dataclass(frozen=True)
class Metrics:
    """All-pairs shortest distances; dist[u-1][v-1] is None when v is unreachable."""

    dist: tuple[tuple[Optional[int], ...], ...]
    diameter: int

    def distance(self, u: int, v: int) -> Optional[int]:
        return self.dist[u - 1][v - 1]


def metrics(d: Digraph) -> Metrics:
    n = d.n
    rows: list[tuple[Optional[int], ...]] = []
    diameter = 0
    for s in range(1, n + 1):
        dist: list[Optional[int]] = [None] * (n + 1)
        dist[s] = 0
        frontier = [s]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for v in frontier:
                for w in d.successors(v):
                    if dist[w] is None:
                        dist[w] = depth
                        nxt.append(w)
            frontier = nxt
        rows.append(tuple(dist[1:]))
        diameter = max(diameter, max((x for x in dist[1:] if x is not None), default=0))
    return Metrics(tuple(rows), diameter)


def longest_paths(d: Digraph) -> tuple[tuple[Optional[int], ...], ...]:
    """Longest path lengths for an acyclic digraph; None when unreachable, 0 on the diagonal."""
    if not is_acyclic(d):
        raise ValueError("longest paths are defined for acyclic digraphs only")
    dec = strong_components(d)
    topo = [min(dec.components[i]) for i in dec.condensation_order]
    n = d.n
    lp: list[list[Optional[int]]] = [[None] * (n + 1) for _ in range(n + 1)]
    for u in reversed(topo):
        lp[u][u] = 0
        for w in d.successors(u):
            for v in range(1, n + 1):
                if lp[w][v] is not None:
                    cand = 1 + lp[w][v]
                    if lp[u][v] is None or cand > lp[u][v]:
                        lp[u][v] = cand
    return tuple(tuple(row[1:]) for row in lp[1:])


def star_violation(d: Digraph) -> Optional[tuple[int, int, int, int]]:
    """A witness (v0, v1, v2, w) against the distance-2 neighbourhood property, if any.

    The property requires, for every directed path v0, v1, v2 with d(v0, v2) = 2,
    that every successor of v1 or v2 lies in {v0, v1, v2}.
    """
    for v1 in range(1, d.n + 1):
        for v0 in sorted(d.predecessors(v1)):
            for v2 in sorted(d.successors(v1)):
                if v2 == v0 or d.has_edge(v0, v2):
                    continue
                allowed = {v0, v1, v2}
                for w in sorted((d.successors(v1) | d.successors(v2)) - allowed):
                    return (v0, v1, v2, w)
    return None


def satisfies_star(d: Digraph) -> bool:
    return star_violation(d) is None


def star_star_violation(d: Digraph) -> Optional[frozenset[int]]:
    """A strong component violating the size limits (2 if nonterminal, 3 if terminal)."""
    dec = strong_components(d)
    for i in dec.condensation_order:
        limit = 3 if dec.terminal[i] else 2
        if len(dec.components[i]) > limit:
            return dec.components[i]
    return None


def satisfies_star_star(d: Digraph) -> bool:
    return star_star_violation(d) is None


def band_bipartition(d: Digraph) -> Optional[tuple[frozenset[int], frozenset[int]]]:
    """A split (V1, V2) with every edge from V1 to V2, if one exists.

    The complete digraph on two vertices has no such split but still generates
    a band; it is reported as ({1}, {2}) to mark it band-valid.
    """
    if d.n == 2 and len(d.edges) == 2:
        return (frozenset({1}), frozenset({2}))
    v1 = set()
    for v in range(1, d.n + 1):
        if d.out_degree(v) > 0:
            if d.in_degree(v) > 0:
                return None
            v1.add(v)
    v2 = frozenset(range(1, d.n + 1)) - v1
    return (frozenset(v1), v2)


def is_band_digraph(d: Digraph) -> bool:
    return band_bipartition(d) is not None


@dataclass(frozen=True)
class ForbiddenPattern:
    """A forbidden subdigraph found in a host digraph.

    kind is gamma1..gamma4 or theta; k is the number of pattern vertices
    (the cycle length for theta); embedding[i-1] is the host vertex carrying
    pattern vertex i.
    """

    kind: str
    k: int
    embedding: tuple[int, ...]


_GAMMA_PATTERNS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    # an undirected edge contributes both orientations
    "gamma1": (5, ((1, 4), (4, 1), (2, 4), (4, 2), (3, 4), (4, 3), (4, 5))),
    "gamma2": (5, ((1, 3), (3, 1), (2, 3), (3, 2), (3, 4), (4, 3), (4, 5))),
    "gamma3": (4, ((1, 2), (2, 3), (3, 1), (3, 4))),
    "gamma4": (5, ((1, 2), (2, 3), (3, 4), (4, 1), (4, 5))),
}


def _find_embedding(d: Digraph, pn: int, pedges: tuple[tuple[int, int], ...]) -> Optional[tuple[int, ...]]:
    if d.n < pn:
        return None
    pout: list[list[int]] = [[] for _ in range(pn + 1)]
    pin: list[list[int]] = [[] for _ in range(pn + 1)]
    for a, b in pedges:
        pout[a].append(b)
        pin[b].append(a)
    order = sorted(range(1, pn + 1), key=lambda v: -(len(pout[v]) + len(pin[v])))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def backtrack(k: int) -> bool:
        if k == pn:
            return True
        pv = order[k]
        for hv in range(1, d.n + 1):
            if hv in used:
                continue
            if d.out_degree(hv) < len(pout[pv]) or d.in_degree(hv) < len(pin[pv]):
                continue
            ok = all(d.has_edge(hv, assign[q]) for q in pout[pv] if q in assign) and all(
                d.has_edge(assign[q], hv) for q in pin[pv] if q in assign
            )
            if not ok:
                continue
            assign[pv] = hv
            used.add(hv)
            if backtrack(k + 1):
                return True
            del assign[pv]
            used.remove(hv)
        return False

    if backtrack(0):
        return tuple(assign[i] for i in range(1, pn + 1))
    return None


def _find_long_cycle(d: Digraph, min_len: int = 5) -> Optional[list[int]]:
    """First simple directed cycle of length >= min_len, anchored at its least vertex."""
    for s in range(1, d.n + 1):
        path = [s]
        on_path = {s}

        def dfs(v: int) -> Optional[list[int]]:
            for w in sorted(d.successors(v)):
                if w == s and len(path) >= min_len:
                    return list(path)
                if w > s and w not in on_path:
                    path.append(w)
                    on_path.add(w)
                    found = dfs(w)
                    if found is not None:
                        return found
                    path.pop()
                    on_path.remove(w)
            return None

        found = dfs(s)
        if found is not None:
            return found
    return None


def find_forbidden(d: Digraph) -> Optional[ForbiddenPattern]:
    """A subdigraph witnessing that some generated transformation has a cyclic orbit.

    Searches for gamma1..gamma4 and for a directed cycle of length >= 5 (theta).
    Embeddings are subdigraph embeddings: injective on vertices, every pattern
    edge mapped to an edge, extra host edges allowed.
    """
    if d.n > 12:
        raise ValueError(f"forbidden-pattern search supports n <= 12, got n={d.n}")
    for kind, (pn, pedges) in _GAMMA_PATTERNS.items():
        emb = _find_embedding(d, pn, pedges)
        if emb is not None:
            return ForbiddenPattern(kind=kind, k=pn, embedding=emb)
    cyc = _find_long_cycle(d)
    if cyc is not None:
        return ForbiddenPattern(kind="theta", k=len(cyc), embedding=tuple(cyc))
    return None


def _family_kappa(n: int) -> Digraph:
    if n < 3 or n % 2 == 0:
        raise ValueError(f"kappa requires odd n >= 3, got n={n}")
    m = (n - 1) // 2
    edges = {(i, (i + j - 1) % n + 1) for i in range(1, n + 1) for j in range(1, m + 1)}
    return Digraph(n, edges)


def _family_pi(n: int) -> Digraph:
    if n < 3:
        raise ValueError(f"pi requires n >= 3, got n={n}")
    edges = {(i, i % n + 1) for i in range(1, n + 1)}
    edges |= {(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if j + 1 < i}
    return Digraph(n, edges)


def _family_q(n: int) -> Digraph:
    if n < 3:
        raise ValueError(f"Q requires n >= 3, got n={n}")
    edges = {(u, u + 1) for u in range(1, n)} | {(n - 2, n)}
    return Digraph(n, edges)


def _family_theta(n: int) -> Digraph:
    if n < 3:
        raise ValueError(f"theta requires n >= 3, got n={n}")
    return Digraph(n, {(i, i % n + 1) for i in range(1, n + 1)})


FAMILY_NAMES = (
    "K",        # complete: both orientations of every pair
    "P",        # undirected path 1-2-...-n
    "Pvec",     # directed path 1->2->...->n
    "Tvec",     # transitive tournament, i->j for i<j
    "kappa",    # circulant tournament, odd n
    "pi",       # Hamiltonian cycle plus all backward jumps
    "Q",        # directed path with the extra edge (n-2, n)
    "theta",    # directed cycle
    "gamma1",
    "gamma2",
    "gamma3",
    "gamma4",
)


def family(name: str, n: Optional[int] = None) -> Digraph:
    """Build a named digraph family member; gamma sizes are fixed."""
    key = name.lower()
    if key.startswith("gamma"):
        if key not in _GAMMA_PATTERNS:
            raise ValueError(f"unknown family {name!r}")
        pn, pedges = _GAMMA_PATTERNS[key]
        if n is not None and n != pn:
            raise ValueError(f"{key} has exactly {pn} vertices")
        return Digraph(pn, pedges)
    if n is None:
        raise ValueError(f"family {name!r} needs a vertex count")
    if key == "k":
        return Digraph(n, {(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v})
    if key == "p":
        return Digraph(n, {(i, i + 1) for i in range(1, n)} | {(i + 1, i) for i in range(1, n)})
    if key == "pvec":
        return Digraph(n, {(i, i + 1) for i in range(1, n)})
    if key == "tvec":
        return Digraph(n, {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)})
    if key == "kappa":
        return _family_kappa(n)
    if key == "pi":
        return _family_pi(n)
    if key == "q":
        return _family_q(n)
    if key == "theta":
        return _family_theta(n)
    raise ValueError(f"unknown family {name!r}")


def relabel(d: Digraph, perm: dict[int, int]) -> Digraph:
    """Apply a vertex relabelling given as a bijection on [n]."""
    if sorted(perm) != list(range(1, d.n + 1)) or sorted(perm.values()) != list(range(1, d.n + 1)):
        raise ValueError("relabelling must be a bijection on [n]")
    return Digraph(d.n, {(perm[u], perm[v]) for u, v in d.edges})


def _pair_index(i: int, j: int, n: int) -> int:
    # ordered pairs (i, j), i != j, 0-based, row-major with the diagonal removed
    return i * (n - 1) + (j - 1 if j > i else j)


def encode_edges(d: Digraph) -> int:
    """Bit encoding of the edge set over ordered pairs, used by canonical_form."""
    code = 0
    for u, v in d.edges:
        code |= 1 << _pair_index(u - 1, v - 1, d.n)
    return code


def decode_edges(n: int, code: int) -> Digraph:
    edges = []
    k = 0
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            if code >> k & 1:
                edges.append((i + 1, j + 1))
            k += 1
    return Digraph(n, edges)


def canonical_form(d: Digraph) -> bytes:
    """Isomorphism-invariant byte string: the least edge encoding over all relabellings.

    Brute force over all n! permutations; requires n <= 8.
    """
    n = d.n
    if n > 8:
        raise ValueError(f"canonical_form supports n <= 8, got n={n}")
    edges0 = [(u - 1, v - 1) for u, v in d.edges]
    best: Optional[int] = None
    for perm in permutations(range(n)):
        val = 0
        for u, v in edges0:
            i, j = perm[u], perm[v]
            val |= 1 << (i * (n - 1) + (j - 1 if j > i else j))
        if best is None or val < best:
            best = val
    assert best is not None
    width = (n * (n - 1) + 7) // 8
    return bytes([n]) + best.to_bytes(width, "big")
