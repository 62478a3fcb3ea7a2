"""Explicit word constructions with certified lengths.

Every constructor re-evaluates its word and checks edge membership before
returning, so a returned ConstructedWord is always a genuine witness; failure
to route a target transformation raises NotAMember.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .digraph import (
    Digraph,
    band_bipartition,
    family,
    is_closed,
    is_connected,
    is_strong,
    is_tournament,
    metrics,
    satisfies_star,
    strong_components,
)
from .semigroup import NotAMember, component_hi_bound
from .transform import (
    Arc,
    Transformation,
    constant,
    evaluate,
    hi_bound,
    kernel_partition,
    orbit_stats,
    word_to_text,
)

__all__ = [
    "ConstructedWord",
    "ConstructionError",
    "PreconditionError",
    "WitnessPair",
    "check_word",
    "express_constant",
    "express_band",
    "express_star_optimal",
    "express_complete_optimal",
    "tournament_arc_word",
    "idempotent_with_kernel",
    "idempotent_with_image",
    "tournament_express",
    "acyclic_witness",
    "cycle_witness",
]


class ConstructionError(RuntimeError):
    """Internal inconsistency: a construction produced a wrong-length word."""


class PreconditionError(ValueError):
    """A structural precondition failed; predicate names the failing check."""

    def __init__(self, predicate: str, message: str):
        super().__init__(f"{predicate}: {message}")
        self.predicate = predicate


@dataclass(frozen=True)
class ConstructedWord:
    digraph: Digraph
    target: Transformation
    word: tuple[Arc, ...]
    claimed_length: int
    optimal_claim: bool
    verified: bool

    def as_dict(self) -> dict:
        from .digraph import digraph_to_text

        return {
            "digraph": digraph_to_text(self.digraph),
            "target": str(self.target),
            "word": word_to_text(self.word),
            "claimed_length": self.claimed_length,
            "optimal_claim": self.optimal_claim,
            "verified": self.verified,
        }


@dataclass(frozen=True)
class WitnessPair:
    """A digraph/transformation pair with a claimed minimal word length."""

    digraph: Digraph
    target: Transformation
    claimed_length: int


def check_word(d: Digraph, word: Sequence[Arc], target: Transformation) -> bool:
    """True when every letter is an edge of d and the word evaluates to target."""
    return all(d.has_edge(arc.a, arc.b) for arc in word) and evaluate(word, d.n) == target


def _sealed(d: Digraph, target: Transformation, word: Sequence[Arc], claimed: int,
            optimal: bool) -> ConstructedWord:
    word = tuple(word)
    if not all(d.has_edge(arc.a, arc.b) for arc in word):
        raise ConstructionError("word uses a non-edge")
    if evaluate(word, d.n) != target:
        raise NotAMember(f"constructed word does not evaluate to {target}")
    if len(word) != claimed:
        raise ConstructionError(f"word has length {len(word)}, claimed {claimed}")
    return ConstructedWord(d, target, word, claimed, optimal, True)


# ---------------------------------------------------------------------------
# constants and bands


def express_constant(d: Digraph, v0: int) -> ConstructedWord:
    """An (n-1)-arc word for the constant map onto v0; optimal since rank is 1."""
    n = d.n
    if not 1 <= v0 <= n:
        raise ValueError(f"vertex {v0} out of range 1..{n}")
    if n == 1:
        raise NotAMember("the constant map on one vertex is the identity")
    layer = {v0: 0}
    frontier = [v0]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for v in frontier:
            for w in d.predecessors(v):
                if w not in layer:
                    layer[w] = depth
                    nxt.append(w)
        frontier = nxt
    if len(layer) != n:
        missing = min(set(range(1, n + 1)) - set(layer))
        raise PreconditionError("reaches_v0", f"vertex {missing} has no path to {v0}")
    word = []
    for dd in range(max(layer.values()), 0, -1):
        for v in sorted(x for x in layer if layer[x] == dd):
            nearer = min(w for w in d.successors(v) if layer[w] == dd - 1)
            word.append(Arc(v, nearer))
    return _sealed(d, constant(n, v0), word, n - 1, optimal=True)


def express_band(d: Digraph, target: Transformation) -> ConstructedWord:
    """A word of length n - rank(target) over a band digraph (one arc per moved point)."""
    if target.n != d.n:
        raise ValueError(f"degree mismatch: {target.n} != {d.n}")
    if band_bipartition(d) is None:
        raise PreconditionError("band_bipartition", "digraph does not generate a band")
    moved = [v for v in range(1, d.n + 1) if target(v) != v]
    if not moved:
        raise NotAMember("the identity is not generated")
    for v in moved:
        if not d.has_edge(v, target(v)):
            raise NotAMember(f"{target} moves {v} to {target(v)} along a non-edge")
    word = [Arc(v, target(v)) for v in moved]
    return _sealed(d, target, word, d.n - target.rank(), optimal=True)


# ---------------------------------------------------------------------------
# the optimal construction over one complete vertex set


def _rotation(cycle: list[int], buffer_v: int, anchor_image: int) -> list[Arc]:
    """Rotate a cycle through an evacuated buffer; anchor_image is the cycle
    vertex that receives the buffer's final push."""
    k = len(cycle)
    j = cycle.index(anchor_image)
    ordered = [cycle[(j - 1 + i) % k] for i in range(k)]  # starts at the predecessor
    arcs = [Arc(ordered[0], buffer_v)]
    for i in range(k - 1, 0, -1):
        arcs.append(Arc(ordered[i], ordered[(i + 1) % k]))
    arcs.append(Arc(buffer_v, ordered[1]))
    return arcs


def _complete_domain_word(mapping: dict[int, int]) -> list[Arc]:
    """Shortest arc word for a singular self-map of a vertex set, all arcs allowed.

    Tree points cost one arc each, emitted parents first; a cycle living with
    tree points borrows its nearest tree point as rotation buffer; cycles that
    form whole orbits rotate last through a point outside the image, giving
    |moved| + (number of cyclic orbits) arcs in total.
    """
    dom = sorted(mapping)
    img = dict(mapping)
    moved = [v for v in dom if img[v] != v]
    if not moved:
        return []
    image_set = set(img.values())
    if len(image_set) == len(dom):
        raise ValueError("mapping is a permutation; no arc word exists")

    indeg = {v: 0 for v in dom}
    for v in dom:
        indeg[img[v]] += 1
    peel = deque(v for v in dom if indeg[v] == 0)
    tree: set[int] = set()
    while peel:
        v = peel.popleft()
        tree.add(v)
        w = img[v]
        indeg[w] -= 1
        if indeg[w] == 0:
            peel.append(w)

    cycle_of: dict[int, int] = {}
    cycles: dict[int, list[int]] = {}
    for v in dom:
        if v in tree or v in cycle_of:
            continue
        cyc = [v]
        w = img[v]
        while w != v:
            cyc.append(w)
            w = img[w]
        root = min(cyc)
        cycles[root] = cyc
        for x in cyc:
            cycle_of[x] = root

    depth: dict[int, int] = {}
    root_of: dict[int, int] = {}
    for v in sorted(tree):
        chain = []
        w = v
        while w in tree and w not in depth:
            chain.append(w)
            w = img[w]
        base_depth = depth.get(w, 0)
        base_root = root_of.get(w, cycle_of.get(w, w))
        for i, x in enumerate(reversed(chain), start=1):
            depth[x] = base_depth + i
            root_of[x] = base_root

    orbit_trees: dict[int, list[int]] = {}
    for v in tree:
        orbit_trees.setdefault(root_of[v], []).append(v)

    arcs: list[Arc] = []
    pure: list[list[int]] = []
    roots = sorted(set(cycles) | set(orbit_trees))
    for root in roots:
        cyc = cycles.get(root)
        trees_here = sorted(orbit_trees.get(root, ()), key=lambda v: (depth[v], v))
        if cyc is None or len(cyc) == 1:
            arcs.extend(Arc(v, img[v]) for v in trees_here)
        elif trees_here:
            b = min(v for v in trees_here if depth[v] == 1)
            arcs.extend(_rotation(cyc, b, img[b]))
            arcs.extend(Arc(v, img[v]) for v in trees_here if v != b)
        else:
            pure.append(cyc)
    if pure:
        h = min(set(dom) - image_set)
        for cyc in sorted(pure, key=min):
            anchor = img[min(cyc)]
            arcs.extend(_rotation(cyc, h, anchor))

    assert len(arcs) == len(moved) + len(pure)
    return arcs


def express_complete_optimal(target: Transformation) -> ConstructedWord:
    """A word over the complete digraph of length n + cycl - fix (the exact minimum)."""
    if target.is_permutation():
        raise NotAMember("permutations are not generated by arcs")
    n = target.n
    mapping = {v: target(v) for v in range(1, n + 1)}
    word = _complete_domain_word(mapping)
    return _sealed(family("k", n), target, word, hi_bound(target), optimal=True)


# ---------------------------------------------------------------------------
# closed digraphs with the distance-2 neighbourhood property


def _small_component_word(d: Digraph, comp: list[int], beta: dict[int, int]) -> list[Arc]:
    """Shortest word for a self-map of a small non-complete strong component."""
    arcs_in = [Arc(u, v) for (u, v) in d.sorted_edges if u in beta and v in beta]
    start = tuple(comp)
    goal = tuple(beta[v] for v in comp)
    if start == goal:
        return []
    seen = {start: ()}
    queue = deque([start])
    while queue:
        state = queue.popleft()
        for arc in arcs_in:
            new = tuple(arc.b if x == arc.a else x for x in state)
            if new not in seen:
                seen[new] = seen[state] + (arc,)
                if new == goal:
                    return list(seen[new])
                queue.append(new)
    raise NotAMember(f"component map {beta} is not generated inside {comp}")


def express_star_optimal(d: Digraph, target: Transformation) -> ConstructedWord:
    """A word of the exact minimal length over a closed connected digraph with
    the distance-2 neighbourhood property.

    The length is component_hi_bound(d, target): n - fix plus one arc for
    every cycle of the target that is pure within its strong component.  On a
    strongly connected digraph that equals hi_bound(target); a cycle fed by a
    tail from an earlier component costs one more arc than the global
    n + cycl - fix count, because the in-component word must first realize the
    cycle before the outside vertex is moved onto it.
    """
    n = d.n
    if target.n != n:
        raise ValueError(f"degree mismatch: {target.n} != {n}")
    if not is_connected(d, "weak"):
        raise PreconditionError("is_connected", "digraph is not connected")
    if not is_closed(d):
        raise PreconditionError("is_closed", "digraph is not closed")
    if not satisfies_star(d):
        raise PreconditionError("satisfies_star", "distance-2 neighbourhood property fails")
    if target.is_permutation():
        raise NotAMember("permutations are not generated by arcs")

    met = metrics(d)
    relay: dict[int, int] = {}
    for u in range(1, n + 1):
        du = met.distance(u, target(u))
        if du is None or du > 2:
            raise NotAMember(f"no short route from {u} to its image {target(u)}")
        if du == 2:
            v = target(u)
            options = [
                w
                for w in sorted(d.successors(u))
                if d.has_edge(w, v) and target(w) == v
            ]
            if not options:
                raise NotAMember(f"no relay for {u} -> {v}")
            relay[u] = options[0]
    relays = set(relay.values())

    # Each prefix group pays one arc per distance-2 vertex plus one flush arc
    # for the shared relay; the relay's own move rides on the flush.
    groups: dict[int, list[int]] = {}
    for u in sorted(relay):
        groups.setdefault(relay[u], []).append(u)
    word: list[Arc] = []
    for w in sorted(groups):
        word.extend(Arc(u, w) for u in groups[w])
        word.append(Arc(w, target(w)))

    dec = strong_components(d)
    skip = set(relay) | relays
    for ci in reversed(dec.condensation_order):
        comp = sorted(dec.components[ci])
        comp_set = dec.components[ci]
        stay = [v for v in comp if v not in skip and target(v) in comp_set]
        beta = {v: (target(v) if v in stay else v) for v in comp}
        if any(beta[v] != v for v in comp):
            complete = all(
                d.has_edge(u, v) for u in comp for v in comp if u != v
            )
            if complete:
                bhat = dict(beta)
                if len(set(beta.values())) == len(comp):
                    image_of_comp = {target(v) for v in comp}
                    spare = [v for v in comp if v not in image_of_comp]
                    if not spare:
                        raise NotAMember(f"component {comp} is permuted by the target")
                    movers = [v for v in stay if beta[v] != v]
                    bhat[min(spare)] = min(movers)
                word.extend(_complete_domain_word(bhat))
            elif len(comp) <= 4:
                word.extend(_small_component_word(d, comp, beta))
            else:
                raise PreconditionError(
                    "component_shape", f"unexpected non-complete component {comp}"
                )
        for a in range(1, n + 1):
            if a in skip or a in comp_set or target(a) not in comp_set:
                continue
            if not d.has_edge(a, target(a)):
                raise NotAMember(f"{a} has image {target(a)} along a non-edge")
            word.append(Arc(a, target(a)))

    return _sealed(d, target, word, component_hi_bound(d, target), optimal=True)


# ---------------------------------------------------------------------------
# strong tournaments


def _distances_to(d: Digraph, v: int) -> dict[int, int]:
    dist = {v: 0}
    frontier = [v]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for x in frontier:
            for w in d.predecessors(x):
                if w not in dist:
                    dist[w] = depth
                    nxt.append(w)
        frontier = nxt
    return dist


def _lex_shortest_path(d: Digraph, u: int, v: int) -> list[int]:
    dist = _distances_to(d, v)
    if u not in dist:
        raise NotAMember(f"no path from {u} to {v}")
    path = [u]
    cur = u
    while cur != v:
        cur = min(w for w in d.successors(cur) if dist.get(w, -1) == dist[cur] - 1)
        path.append(cur)
    return path


def tournament_arc_word(t: Digraph, u: int, v: int) -> ConstructedWord:
    """A word of length 4 d(u,v) - 2 for the arc (u -> v) missing from a strong
    tournament; this length is the exact minimum."""
    if not is_tournament(t):
        raise PreconditionError("is_tournament", "digraph is not a tournament")
    if not is_strong(t):
        raise PreconditionError("is_strong", "tournament is not strongly connected")
    if u == v or not (1 <= u <= t.n and 1 <= v <= t.n):
        raise ValueError(f"bad vertex pair ({u},{v})")
    if t.has_edge(u, v):
        raise PreconditionError("non_edge", f"({u},{v}) is an edge; the arc is its own word")
    path = _lex_shortest_path(t, u, v)
    dlen = len(path) - 1
    word = [Arc(path[dlen], path[0])]
    word.extend(Arc(path[i - 1], path[i]) for i in range(dlen, 0, -1))
    for i in range(2, dlen + 1):
        word.append(Arc(path[i], path[i - 2]))
        word.append(Arc(path[i - 1], path[i]))
    word.extend(Arc(path[i - 1], path[i]) for i in range(dlen - 1, 0, -1))
    target = Arc(u, v).as_transformation(t.n)
    return _sealed(t, target, word, 4 * dlen - 2, optimal=True)


def _block_sink(t: Digraph, block: frozenset[int]) -> int:
    reach = {}
    for s in block:
        seen = {s}
        todo = [s]
        while todo:
            x = todo.pop()
            for w in t.successors(x):
                if w in block and w not in seen:
                    seen.add(w)
                    todo.append(w)
        reach[s] = seen
    candidates = [v for v in block if all(v in reach[u] for u in block)]
    return min(candidates)


def idempotent_with_kernel(t: Digraph, partition: Iterable[Iterable[int]]) -> ConstructedWord:
    """An idempotent with the given kernel classes, written with n - r arcs of a
    tournament (r = number of classes); optimal since rank is r."""
    if not is_tournament(t):
        raise PreconditionError("is_tournament", "digraph is not a tournament")
    blocks = [frozenset(b) for b in partition]
    flat = sorted(v for b in blocks for v in b)
    if flat != list(range(1, t.n + 1)) or any(not b for b in blocks):
        raise ValueError("not a partition of [n]")
    if all(len(b) == 1 for b in blocks):
        raise NotAMember("singleton-only kernel describes the identity")
    blocks.sort(key=min)
    word: list[Arc] = []
    images = list(range(1, t.n + 1))
    for block in blocks:
        sink = _block_sink(t, block)
        for v in block:
            images[v - 1] = sink
        layer = {sink: 0}
        frontier = [sink]
        depth = 0
        while frontier:
            depth += 1
            nxt = []
            for x in frontier:
                for w in t.predecessors(x):
                    if w in block and w not in layer:
                        layer[w] = depth
                        nxt.append(w)
            frontier = nxt
        for dd in range(max(layer.values()), 0, -1):
            for v in sorted(x for x in layer if layer[x] == dd):
                nearer = min(w for w in t.successors(v) if layer.get(w, -1) == dd - 1)
                word.append(Arc(v, nearer))
    target = Transformation(tuple(images))
    return _sealed(t, target, word, t.n - len(blocks), optimal=True)


def idempotent_with_image(t: Digraph, image: Iterable[int]) -> ConstructedWord:
    """An idempotent with the given image, written with n - |S| arcs of a strong
    tournament; optimal since rank is |S|."""
    if not is_tournament(t):
        raise PreconditionError("is_tournament", "digraph is not a tournament")
    if not is_strong(t):
        raise PreconditionError("is_strong", "tournament is not strongly connected")
    s_set = sorted(set(image))
    if not s_set or len(s_set) == t.n or any(not 1 <= v <= t.n for v in s_set):
        raise ValueError("image must be a nonempty proper subset of [n]")
    dist_to = {s: _distances_to(t, s) for s in s_set}
    nearest: dict[int, int] = {}
    for v in range(1, t.n + 1):
        best = min(dist_to[s][v] for s in s_set)
        nearest[v] = min(s for s in s_set if dist_to[s][v] == best)
    steps: dict[int, int] = {}
    for v in range(1, t.n + 1):
        if v in nearest and nearest[v] != v:
            s = nearest[v]
            steps[v] = min(
                w for w in t.successors(v) if dist_to[s].get(w, -1) == dist_to[s][v] - 1
            )
    order = sorted(steps, key=lambda v: (-dist_to[nearest[v]][v], v))
    word = [Arc(v, steps[v]) for v in order]
    target = Transformation(tuple(nearest[v] for v in range(1, t.n + 1)))
    return _sealed(t, target, word, t.n - len(s_set), optimal=True)


def tournament_express(t: Digraph, target: Transformation) -> ConstructedWord:
    """A word for an arbitrary singular target over a strong tournament.

    Kernel idempotent first (n - r arcs), then a rank-restricted rearrangement
    expanded arc by arc: an arc that is an edge costs 1, any other costs
    4 d(a,b) - 2.  The total never exceeds n + 6 r diam - 4 r.
    """
    if not is_tournament(t):
        raise PreconditionError("is_tournament", "digraph is not a tournament")
    if not is_strong(t):
        raise PreconditionError("is_strong", "tournament is not strongly connected")
    if target.n != t.n:
        raise ValueError(f"degree mismatch: {target.n} != {t.n}")
    if target.is_permutation():
        raise NotAMember("permutations are not generated by arcs")
    blocks = kernel_partition(target)
    base = idempotent_with_kernel(t, blocks)
    sinks = [base.target(min(b)) for b in blocks]
    values = [target(min(b)) for b in blocks]
    gamma = {v: v for v in range(1, t.n + 1)}
    for u, v in zip(sinks, values):
        gamma[u] = v
    if all(gamma[v] == v for v in gamma):
        word = list(base.word)
    else:
        if len(set(gamma.values())) == t.n:
            spare = min(set(range(1, t.n + 1)) - set(sinks))
            gamma[spare] = values[0]
        word = list(base.word)
        for arc in _complete_domain_word(gamma):
            if t.has_edge(arc.a, arc.b):
                word.append(arc)
            else:
                word.extend(tournament_arc_word(t, arc.a, arc.b).word)
    return _sealed(t, target, word, len(word), optimal=False)


# ---------------------------------------------------------------------------
# witnesses


def acyclic_witness(n: int, r: int) -> WitnessPair:
    """The extremal acyclic pair: the chorded path on [n] and a rank-r target
    whose minimal word length is (n-r)(n+r-3)/2 + 1."""
    if not 2 <= r <= n - 1:
        raise ValueError(f"need 2 <= r <= n-1, got r={r}, n={n}")
    images = []
    for v in range(1, n):
        if v <= r - 2:
            images.append(n - r + v)
        elif (n - v) % 2 == 0:
            images.append(n - 1)
        else:
            images.append(n)
    images.append(n)
    target = Transformation(tuple(images))
    claimed = (n - r) * (n + r - 3) // 2 + 1
    return WitnessPair(family("q", n), target, claimed)


_GAMMA_WORDS = {
    "gamma1": "(3->4)(4->5)(1->4)(4->3)(2->4)(4->1)(3->4)(4->2)",
    "gamma2": "(3->4)(4->5)(1->3)(3->4)(2->3)(3->1)(4->3)(3->2)",
    "gamma3": "(3->4)(2->3)(1->2)(3->1)",
    "gamma4": "(3->4)(4->5)(2->3)(3->4)(1->2)(4->1)",
}


def _cycle_segment(k: int, u: int, v: int) -> list[Arc]:
    arcs = []
    while u != v:
        nxt = u % k + 1
        arcs.append(Arc(u, nxt))
        u = nxt
    return arcs


def cycle_witness(kind: str, k: Optional[int] = None) -> ConstructedWord:
    """A word over a forbidden pattern whose evaluation has a cyclic orbit."""
    from .transform import parse_word

    key = kind.lower()
    if key in _GAMMA_WORDS:
        d = family(key)
        word = parse_word(_GAMMA_WORDS[key])
    elif key == "theta":
        if k is None or k < 5:
            raise ValueError("theta witness needs a cycle length k >= 5")
        d = family("theta", k)
        if k == 5:
            # Degenerate size: the six-segment recipe collides with its own
            # parking slot, and no word with fewer than ten segments reaches a
            # cyclic-orbit member.  Two full laps of single arcs produce the
            # same 2k-arc length and the same target 4 4 5 1 3.
            lap = [Arc(1, 2), Arc(5, 1), Arc(4, 5), Arc(3, 4), Arc(2, 3)]
            word = tuple(lap + lap)
        else:
            word = tuple(
                _cycle_segment(k, 1, k - 3)
                + _cycle_segment(k, k, k - 4)
                + _cycle_segment(k, k - 1, 1)
                + _cycle_segment(k, k - 2, k)
                + _cycle_segment(k, k - 3, k - 1)
                + _cycle_segment(k, k - 4, k - 2)
            )
    else:
        raise ValueError(f"unknown pattern kind {kind!r}")
    target = evaluate(word, d.n)
    built = _sealed(d, target, word, len(word), optimal=False)
    if orbit_stats(target).cycl < 1:
        raise ConstructionError(f"{kind} witness lost its cyclic orbit")
    return built
