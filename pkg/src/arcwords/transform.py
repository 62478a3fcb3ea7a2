"""Transformations of [n] = {1, ..., n}, arcs, and words of arcs.

Composition is left to right throughout: x(ab) = (xa)b, i.e. a word acts on a
point by applying its letters in reading order.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "Transformation",
    "Arc",
    "OrbitStats",
    "identity",
    "constant",
    "compose",
    "evaluate",
    "orbit_stats",
    "kernel_partition",
    "hi_bound",
    "parse_transformation",
    "parse_word",
    "word_to_text",
]


@dataclass(frozen=True)
class Transformation:
    """A full transformation of [n] in one-line notation: images[v-1] = (v)a."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if n == 0:
            raise ValueError("empty transformation")
        for x in self.images:
            if not (isinstance(x, int) and 1 <= x <= n):
                raise ValueError(f"image {x!r} out of range 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, v: int) -> int:
        if not 1 <= v <= self.n:
            raise ValueError(f"point {v} out of range 1..{self.n}")
        return self.images[v - 1]

    def __mul__(self, other: "Transformation") -> "Transformation":
        return compose(self, other)

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def rank(self) -> int:
        return len(set(self.images))

    def fix_count(self) -> int:
        return sum(1 for v, x in enumerate(self.images, start=1) if x == v)

    def is_permutation(self) -> bool:
        return self.rank() == self.n

    def is_singular(self) -> bool:
        return self.rank() < self.n

    def is_idempotent(self) -> bool:
        return all(self.images[x - 1] == x for x in set(self.images))

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.images)


def identity(n: int) -> Transformation:
    return Transformation(tuple(range(1, n + 1)))


def constant(n: int, v0: int) -> Transformation:
    """The constant transformation sending every point to v0."""
    if not 1 <= v0 <= n:
        raise ValueError(f"constant target {v0} out of range 1..{n}")
    return Transformation((v0,) * n)


def compose(a: Transformation, b: Transformation) -> Transformation:
    """Left-to-right product ab: x(ab) = (xa)b."""
    if a.n != b.n:
        raise ValueError(f"degree mismatch: {a.n} != {b.n}")
    return Transformation(tuple(b.images[x - 1] for x in a.images))


@dataclass(frozen=True, order=True)
class Arc:
    """The idempotent (a -> b) fixing everything except a, which maps to b."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a == self.b:
            raise ValueError(f"arc ({self.a}->{self.b}) is a loop")
        if self.a < 1 or self.b < 1:
            raise ValueError(f"arc ({self.a}->{self.b}) has non-positive endpoint")

    def as_transformation(self, n: int) -> Transformation:
        if self.a > n or self.b > n:
            raise ValueError(f"arc ({self.a}->{self.b}) does not fit degree {n}")
        return Transformation(tuple(self.b if v == self.a else v for v in range(1, n + 1)))

    def __str__(self) -> str:
        return f"({self.a}->{self.b})"


Word = tuple  # a word is any sequence of Arc; kept as plain tuples


def evaluate(word: Sequence[Arc], n: int) -> Transformation:
    """Evaluate a word of arcs to the transformation of [n] it spells."""
    images = list(range(1, n + 1))
    for arc in word:
        if arc.a > n or arc.b > n:
            raise ValueError(f"arc {arc} does not fit degree {n}")
        for i, x in enumerate(images):
            if x == arc.a:
                images[i] = arc.b
    return Transformation(tuple(images))


@dataclass(frozen=True)
class OrbitStats:
    """Orbit data of the functional digraph {(x, xa) : x in [n]} of a.

    orbits are the weakly connected components; an orbit is counted by cycl
    when it is a directed cycle on at least two vertices and nothing else.
    """

    orbits: tuple[frozenset[int], ...]
    fix: int
    cycl: int
    rank: int


def orbit_stats(a: Transformation) -> OrbitStats:
    n = a.n
    parent = list(range(n + 1))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(1, n + 1):
        rv, rw = find(v), find(a(v))
        if rv != rw:
            parent[rv] = rw

    groups: dict[int, set[int]] = {}
    for v in range(1, n + 1):
        groups.setdefault(find(v), set()).add(v)
    orbits = tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    img = a.image()
    fix = a.fix_count()
    # A component is a pure cycle iff every vertex in it has a preimage,
    # i.e. the component is contained in the image of a.
    cycl = sum(1 for orb in orbits if len(orb) >= 2 and orb <= img)
    return OrbitStats(orbits=orbits, fix=fix, cycl=cycl, rank=a.rank())


def kernel_partition(a: Transformation) -> tuple[frozenset[int], ...]:
    """Partition of [n] into preimage classes of a, sorted by least element."""
    blocks: dict[int, set[int]] = {}
    for v in range(1, a.n + 1):
        blocks.setdefault(a(v), set()).add(v)
    return tuple(sorted((frozenset(b) for b in blocks.values()), key=min))


def hi_bound(a: Transformation) -> int:
    """n + cycl(a) - fix(a), the exact arc-word length of a over the complete digraph."""
    if a.is_permutation():
        raise ValueError("defined for singular transformations only")
    st = orbit_stats(a)
    return a.n + st.cycl - st.fix


def parse_transformation(text: str, n: int | None = None) -> Transformation:
    """Parse one-line notation like "2 1 4 4".

    When n is given, trailing fixed points may be omitted and are filled in.
    """
    parts = text.split()
    if not parts:
        raise ValueError("empty transformation text")
    try:
        values = [int(p) for p in parts]
    except ValueError as exc:
        raise ValueError(f"bad transformation text {text!r}") from exc
    degree = n if n is not None else len(values)
    if len(values) > degree:
        raise ValueError(f"{len(values)} images but degree is {degree}")
    values.extend(range(len(values) + 1, degree + 1))
    for x in values:
        if not 1 <= x <= degree:
            raise ValueError(f"image {x} out of range 1..{degree}")
    return Transformation(tuple(values))


_WORD_TOKEN = re.compile(r"\(\s*(\d+)\s*->\s*(\d+)\s*\)")


def parse_word(text: str) -> tuple[Arc, ...]:
    """Parse a word like "(3->4)(2->3)(1->2)(3->1)"."""
    arcs: list[Arc] = []
    pos = 0
    stripped = text.strip()
    while pos < len(stripped):
        m = _WORD_TOKEN.match(stripped, pos)
        if m is None:
            raise ValueError(f"bad word text at offset {pos}: {stripped[pos:pos + 12]!r}")
        arcs.append(Arc(int(m.group(1)), int(m.group(2))))
        pos = m.end()
    return tuple(arcs)


def word_to_text(word: Iterable[Arc]) -> str:
    return "".join(str(arc) for arc in word)
