"""Cayley-graph index: BFS distances, code tables, and serialization."""

import math

import numpy as np
import pytest

from arcwords import (
    Digraph,
    NotAMember,
    Transformation,
    component_hi_bound,
    evaluate,
    explore,
    family,
    hi_bound,
    is_strong,
    load_index,
    save_index,
)
from arcwords.experiments import ClassSpec, enumerate_class
from arcwords.semigroup import (
    NON_MEMBER,
    cycl_table,
    decode_transformation,
    encode_transformation,
    fix_table,
    hi_table,
    rank_table,
)
from oracles import naive_component_gravity, naive_lengths, naive_orbit_counts


def all_connected(n):
    return enumerate_class(ClassSpec("connected_digraphs", n, connectivity="weak"))


def test_encode_decode_roundtrip():
    for n in (1, 2, 3):
        for code in range(n ** n):
            t = decode_transformation(n, code)
            assert encode_transformation(t) == code
    assert encode_transformation(Transformation((1, 1, 1))) == 0
    assert encode_transformation(Transformation((2, 1, 3))) == 1 + 0 * 3 + 2 * 9


@pytest.mark.parametrize("n", [2, 3, 4])
def test_explore_matches_naive_bfs(n):
    for d in all_connected(n):
        idx = explore(d)
        expect = naive_lengths(d)
        got = {
            tuple(decode_transformation(n, int(c)).images): int(idx.dist[c])
            for c in np.flatnonzero(idx.dist != NON_MEMBER)
        }
        assert got == expect


@pytest.mark.parametrize("name", ["theta", "pi", "kappa", "K", "Q"])
def test_explore_matches_naive_bfs_n5(name):
    d = family(name, 5)
    idx = explore(d)
    expect = naive_lengths(d)
    assert idx.size == len(expect)
    for images, length in expect.items():
        assert idx.length_of(Transformation(images)) == length


def test_member_counts_named_semigroups():
    # complete digraph: all singular transformations
    for n in (2, 3, 4, 5):
        assert explore(family("K", n)).size == n ** n - math.factorial(n)
    # undirected path: order-preserving singular, C(2n-1, n-1) - 1 of them
    for n in (3, 4, 5):
        assert explore(family("P", n)).size == math.comb(2 * n - 1, n - 1) - 1
    # directed path: order-preserving maps with v <= v*a, Catalan(n) - 1
    for n in (3, 4, 5):
        catalan = math.comb(2 * n, n) // (n + 1)
        assert explore(family("Pvec", n)).size == catalan - 1
    # transitive tournament: all maps with v <= v*a except the identity
    for n in (3, 4, 5):
        assert explore(family("Tvec", n)).size == math.factorial(n) - 1


def test_length_of_and_shortest_word():
    d = family("theta", 4)
    idx = explore(d)
    for t in idx.members():
        length = idx.length_of(t)
        word = idx.shortest_word(t)
        assert len(word) == length
        assert evaluate(word, d.n) == t
        assert all(d.has_edge(a.a, a.b) for a in word)


def test_shortest_word_spot_checks_n5():
    for name in ("pi", "K"):
        d = family(name, 5)
        idx = explore(d)
        codes = idx.member_codes()
        for c in codes[:: max(1, len(codes) // 40)]:
            t = decode_transformation(5, int(c))
            word = idx.shortest_word(t)
            assert len(word) == idx.length_of(t)
            assert evaluate(word, 5) == t


def test_non_members_and_errors():
    # arcs of the directed path only move points forward, so the constant
    # map onto 1 is not a member
    idx = explore(family("Pvec", 3))
    assert idx.length_of(Transformation((1, 1, 1))) is None
    assert idx.length_of(Transformation((3, 3, 3))) == 2
    with pytest.raises(NotAMember):
        idx.shortest_word(Transformation((1, 1, 1)))
    with pytest.raises(ValueError):
        idx.length_of(Transformation((1, 1, 2, 3)))
    perm = Transformation((2, 3, 1))
    assert idx.length_of(perm) is None
    with pytest.raises(NotAMember):
        idx.shortest_word(perm)
    with pytest.raises(ValueError):
        explore(family("K", 9))


def test_rank_profile_against_distance_table():
    d = family("K", 4)
    idx = explore(d)
    prof = idx.rank_profile()
    assert prof.n == 4
    assert prof.size == idx.size == 4 ** 4 - 24
    ranks = rank_table(4)
    member = idx.dist != NON_MEMBER
    for row in prof.rows:
        sel = member & (ranks == row.rank)
        assert row.count == int(sel.sum())
        assert row.max_length == int(idx.dist[sel].max())
        assert idx.length_of(row.witness) == row.max_length
        assert row.witness.rank() == row.rank
    assert [r.rank for r in prof.rows] == [1, 2, 3]
    assert prof.max_length == int(idx.dist[member].max())
    assert prof.row_for(2).count == 84  # C(4,2) * S(4,2) * 2!
    assert prof.row_for(4) is None


def test_save_load_roundtrip(tmp_path):
    d = family("Q", 5)
    idx = explore(d)
    path = tmp_path / "q5.idx"
    save_index(idx, path)
    back = load_index(path)
    assert back.digraph == d
    assert np.array_equal(back.dist, idx.dist)
    assert back.length_of(Transformation((1, 1, 2, 3, 4))) == idx.length_of(
        Transformation((1, 1, 2, 3, 4))
    )


def test_load_rejects_foreign_files(tmp_path):
    path = tmp_path / "bogus.idx"
    path.write_bytes(b"not an index file at all")
    with pytest.raises(ValueError):
        load_index(path)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_code_tables_match_oracle(n):
    ranks = rank_table(n)
    fixes = fix_table(n)
    cycls = cycl_table(n)
    his = hi_table(n)
    for code in range(n ** n):
        t = decode_transformation(n, code)
        fix, cycl = naive_orbit_counts(t.images)
        assert ranks[code] == t.rank()
        assert fixes[code] == fix
        assert cycls[code] == cycl
        assert his[code] == n + cycl - fix
        if not t.is_permutation():
            assert his[code] == hi_bound(t)


@pytest.mark.parametrize("n", [3, 4])
def test_component_hi_bound_matches_oracle(n):
    for d in all_connected(n):
        strong = is_strong(d)
        members = set(explore(d).member_codes().tolist())
        for code in range(n ** n):
            t = decode_transformation(n, code)
            if t.is_permutation():
                continue
            got = component_hi_bound(d, t)
            assert got == naive_component_gravity(d, t.images)
            if strong:
                assert got == hi_bound(t)
            elif code in members:
                # members can only carry cycles inside one strong component
                assert got >= hi_bound(t)


def test_component_hi_bound_details():
    # a 2-cycle whose tail enters from another strong component keeps its arc
    d = Digraph(3, {(1, 2), (2, 1), (3, 1)})
    t = Transformation((2, 1, 1))
    assert hi_bound(t) == 3
    assert component_hi_bound(d, t) == 4
    # same map on a strong triangle: the tail lives inside the component
    assert component_hi_bound(family("theta", 3), t) == 3
    with pytest.raises(ValueError):
        component_hi_bound(d, Transformation((2, 1)))
    with pytest.raises(ValueError):
        component_hi_bound(d, Transformation((2, 3, 1)))
