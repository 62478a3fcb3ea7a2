"""Breadth-first word-length tables over the arc-generated semigroup of a digraph.

A transformation of [n] is encoded as a mixed-radix integer in [0, n^n): the
digit at weight n^(v-1) is (v)a - 1.  The exploration walks the right Cayley
graph of the semigroup generated by the digraph's arcs, multiplying by one
generator at a time, and stores the distance of every member in a dense
uint16 table (0xFFFF marks non-members).
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from .digraph import Digraph, strong_components
from .transform import Arc, Transformation

__all__ = [
    "NON_MEMBER",
    "NotAMember",
    "SemigroupIndex",
    "RankRow",
    "RankProfile",
    "explore",
    "encode_transformation",
    "decode_transformation",
    "rank_table",
    "fix_table",
    "cycl_table",
    "hi_table",
    "component_hi_bound",
    "save_index",
    "load_index",
]

NON_MEMBER = 0xFFFF
MAX_DEGREE = 8
_CHUNK = 1 << 18
_MAGIC = b"AWIDX001"


class NotAMember(ValueError):
    """Raised when a transformation is not generated by the digraph's arcs."""


def encode_transformation(t: Transformation) -> int:
    code = 0
    for v in range(t.n - 1, -1, -1):
        code = code * t.n + (t.images[v] - 1)
    return code


def decode_transformation(n: int, code: int) -> Transformation:
    images = []
    for _ in range(n):
        images.append(code % n + 1)
        code //= n
    return Transformation(tuple(images))


@lru_cache(maxsize=None)
def _powers(n: int) -> np.ndarray:
    return n ** np.arange(n, dtype=np.int64)


def _digit_columns(n: int, codes: np.ndarray) -> list[np.ndarray]:
    pw = _powers(n)
    return [(codes // pw[v]) % n for v in range(n)]


@lru_cache(maxsize=None)
def rank_table(n: int) -> np.ndarray:
    """rank of every encoded transformation of [n], as uint8."""
    if n > MAX_DEGREE:
        raise ValueError(f"supported for n <= {MAX_DEGREE}")
    total = n ** n
    popcount = np.array([bin(m).count("1") for m in range(1 << n)], dtype=np.uint8)
    out = np.empty(total, dtype=np.uint8)
    for start in range(0, total, 1 << 20):
        codes = np.arange(start, min(start + (1 << 20), total), dtype=np.int64)
        mask = np.zeros(codes.shape, dtype=np.int32)
        for col in _digit_columns(n, codes):
            mask |= np.left_shift(1, col.astype(np.int32))
        out[start : start + codes.size] = popcount[mask]
    return out


@lru_cache(maxsize=None)
def fix_table(n: int) -> np.ndarray:
    """number of fixed points of every encoded transformation of [n], as uint8."""
    if n > MAX_DEGREE:
        raise ValueError(f"supported for n <= {MAX_DEGREE}")
    total = n ** n
    out = np.zeros(total, dtype=np.uint8)
    codes = np.arange(total, dtype=np.int64)
    for v, col in enumerate(_digit_columns(n, codes)):
        out += (col == v).astype(np.uint8)
    return out


@lru_cache(maxsize=None)
def cycl_table(n: int) -> np.ndarray:
    """number of cyclic orbits of every encoded transformation of [n], as uint8.

    Filled by a direct scan; meant for small n (the verification sweeps use
    n <= 5).
    """
    if n > 7:
        raise ValueError("cycl_table supports n <= 7")
    total = n ** n
    out = np.zeros(total, dtype=np.uint8)
    rng = range(n)
    for code in range(total):
        c = code
        img = [0] * n
        for v in rng:
            img[v] = c % n
            c //= n
        # union-find over v -> img[v]
        parent = list(rng)
        for v in rng:
            a, b = v, img[v]
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            while parent[b] != b:
                parent[b] = parent[parent[b]]
                b = parent[b]
            if a != b:
                parent[a] = b
        roots = [0] * n
        for v in rng:
            a = v
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            roots[v] = a
        in_image = set(img)
        size: dict[int, int] = {}
        pure: dict[int, bool] = {}
        for v in rng:
            r = roots[v]
            size[r] = size.get(r, 0) + 1
            pure[r] = pure.get(r, True) and (v in in_image)
        out[code] = sum(1 for r in size if size[r] >= 2 and pure[r])
    return out


def hi_table(n: int) -> np.ndarray:
    """n + cycl - fix for every code, as int16 (meaningful on singular codes)."""
    return (n + cycl_table(n).astype(np.int16)) - fix_table(n).astype(np.int16)


def component_hi_bound(d: Digraph, t: Transformation) -> int:
    """n - fix(t) plus the number of cycles of t that are pure within their
    strong component of d.

    A cycle counts when it sits inside a single strong component and no other
    vertex of that component maps onto it; a tail hanging off the cycle from a
    different component does not disqualify it, unlike in hi_bound where any
    tail does.  Members of the arc semigroup of d can only have cycles inside
    a single strong component (consecutive cycle vertices are mutually
    reachable), so on members component_hi_bound >= hi_bound, with equality
    whenever d is strongly connected.  For members of a closed digraph
    satisfying the distance-2 neighbourhood property (satisfies_star) this is
    the exact minimal word length; see constructions.express_star_optimal.
    """
    if t.n != d.n:
        raise ValueError(f"transformation of [{t.n}] vs digraph on [{d.n}]")
    if t.is_permutation():
        raise ValueError("defined for singular transformations only")
    comp_of: dict[int, int] = {}
    for i, comp in enumerate(strong_components(d).components):
        for v in comp:
            comp_of[v] = i
    n = d.n
    img = t.images
    # every point lands on a cycle after n steps, so the n-th iterate's image
    # is exactly the set of cycle vertices
    on_cycle: set[int] = set()
    for v in range(1, n + 1):
        x = v
        for _ in range(n):
            x = img[x - 1]
        on_cycle.add(x)
    counted = 0
    seen: set[int] = set()
    for v in sorted(on_cycle):
        if v in seen:
            continue
        cycle = [v]
        x = img[v - 1]
        while x != v:
            cycle.append(x)
            x = img[x - 1]
        seen.update(cycle)
        if len(cycle) < 2:
            continue
        comps = {comp_of[z] for z in cycle}
        if len(comps) > 1:
            continue
        c = comps.pop()
        zset = set(cycle)
        if all(w in zset or comp_of[w] != c or img[w - 1] not in zset for w in range(1, n + 1)):
            counted += 1
    return n - t.fix_count() + counted


@dataclass(frozen=True)
class RankRow:
    rank: int
    count: int
    max_length: int
    witness: Transformation


@dataclass(frozen=True)
class RankProfile:
    n: int
    size: int
    rows: tuple[RankRow, ...]

    @property
    def max_length(self) -> int:
        return max((row.max_length for row in self.rows), default=0)

    def row_for(self, r: int) -> Optional[RankRow]:
        for row in self.rows:
            if row.rank == r:
                return row
        return None


class SemigroupIndex:
    """Distance table of <D> in the right Cayley graph over the arcs of D."""

    def __init__(self, digraph: Digraph, dist: np.ndarray):
        self.digraph = digraph
        self.n = digraph.n
        self.dist = dist
        self.arcs = digraph.arcs()

    @property
    def size(self) -> int:
        return int((self.dist != NON_MEMBER).sum())

    def length_of(self, t: Transformation) -> Optional[int]:
        """Minimal word length spelling t, or None when t is not a member."""
        if t.n != self.n:
            raise ValueError(f"degree mismatch: {t.n} != {self.n}")
        val = int(self.dist[encode_transformation(t)])
        return None if val == NON_MEMBER else val

    def members(self) -> Iterator[Transformation]:
        for code in np.flatnonzero(self.dist != NON_MEMBER):
            yield decode_transformation(self.n, int(code))

    def member_codes(self) -> np.ndarray:
        return np.flatnonzero(self.dist != NON_MEMBER)

    def shortest_word(self, t: Transformation) -> tuple[Arc, ...]:
        """A geodesic word for t; parents are recomputed by scanning generators."""
        length = self.length_of(t)
        if length is None:
            raise NotAMember(f"{t} is not generated by the arcs of this digraph")
        n = self.n
        pw = [n ** v for v in range(n)]
        gen_code = {encode_transformation(a.as_transformation(n)): a for a in self.arcs}
        digits = [t.images[v] - 1 for v in range(n)]
        code = encode_transformation(t)
        tail: list[Arc] = []
        level = length
        while level > 1:
            step = self._parent_step(code, digits, level, pw, n)
            arc, code, digits = step
            tail.append(arc)
            level -= 1
        tail.append(gen_code[code])
        word = tuple(reversed(tail))
        return word

    def _parent_step(self, code: int, digits: list[int], level: int, pw: list[int], n: int):
        dist = self.dist
        for arc in self.arcs:
            a1, b1 = arc.a - 1, arc.b - 1
            if a1 in digits:
                continue
            spots = [v for v in range(n) if digits[v] == b1]
            if not spots:
                continue
            delta = a1 - b1
            for submask in range(1, 1 << len(spots)):
                cand = code
                for i, v in enumerate(spots):
                    if submask >> i & 1:
                        cand += delta * pw[v]
                if dist[cand] == level - 1:
                    new_digits = list(digits)
                    for i, v in enumerate(spots):
                        if submask >> i & 1:
                            new_digits[v] = a1
                    return arc, cand, new_digits
        raise AssertionError("BFS table is inconsistent: no parent found")

    def rank_profile(self) -> RankProfile:
        ranks = rank_table(self.n)
        member = self.dist != NON_MEMBER
        rows = []
        for r in range(1, self.n):
            sel = member & (ranks == r)
            count = int(sel.sum())
            if count == 0:
                continue
            vals = np.where(sel, self.dist, 0)
            best = int(vals.max())
            witness_code = int(np.flatnonzero(sel & (self.dist == best))[0])
            rows.append(RankRow(r, count, best, decode_transformation(self.n, witness_code)))
        return RankProfile(self.n, int(member.sum()), tuple(rows))


def explore(d: Digraph) -> SemigroupIndex:
    """BFS over the right Cayley graph of <D>; supports n <= 8."""
    n = d.n
    if n > MAX_DEGREE:
        raise ValueError(f"explore supports n <= {MAX_DEGREE}, got n={n}")
    total = n ** n
    dist = np.full(total, NON_MEMBER, dtype=np.uint16)
    arcs = d.arcs()
    if not arcs:
        return SemigroupIndex(d, dist)
    pw = _powers(n)
    id_code = int((np.arange(n, dtype=np.int64) * pw).sum())
    gen_codes = np.unique(
        np.array([id_code + (a.b - a.a) * int(pw[a.a - 1]) for a in arcs], dtype=np.int64)
    )
    dist[gen_codes] = 1
    sources = sorted({a.a - 1 for a in arcs})
    frontier = gen_codes
    level = 1
    while frontier.size:
        parts: list[np.ndarray] = []
        for start in range(0, frontier.size, _CHUNK):
            chunk = frontier[start : start + _CHUNK]
            cols = _digit_columns(n, chunk)
            masses = {}
            for a1 in sources:
                m = np.zeros(chunk.shape, dtype=np.int64)
                for v in range(n):
                    m += np.where(cols[v] == a1, int(pw[v]), 0)
                masses[a1] = m
            for arc in arcs:
                a1, b1 = arc.a - 1, arc.b - 1
                cand = chunk + (b1 - a1) * masses[a1]
                fresh = cand[dist[cand] == NON_MEMBER]
                if fresh.size:
                    dist[fresh] = level + 1
                    parts.append(fresh)
        level += 1
        frontier = np.unique(np.concatenate(parts)) if parts else np.empty(0, dtype=np.int64)
    return SemigroupIndex(d, dist)


def save_index(idx: SemigroupIndex, path: str | Path) -> None:
    """Binary dump: magic, n, edge list, then the dist table as little-endian u16."""
    edges = idx.digraph.sorted_edges
    with open(path, "wb") as fh:
        fh.write(_MAGIC)
        fh.write(struct.pack("<BH", idx.n, len(edges)))
        for u, v in edges:
            fh.write(struct.pack("<BB", u, v))
        fh.write(idx.dist.astype("<u2").tobytes())


def load_index(path: str | Path) -> SemigroupIndex:
    with open(path, "rb") as fh:
        magic = fh.read(8)
        if magic != _MAGIC:
            raise ValueError(f"bad index file: magic {magic!r}")
        n, edge_count = struct.unpack("<BH", fh.read(3))
        edges = [struct.unpack("<BB", fh.read(2)) for _ in range(edge_count)]
        body = fh.read()
    expected = 2 * n ** n
    if len(body) != expected:
        raise ValueError(f"bad index file: body has {len(body)} bytes, expected {expected}")
    dist = np.frombuffer(body, dtype="<u2").astype(np.uint16)
    return SemigroupIndex(Digraph(n, edges), dist)
