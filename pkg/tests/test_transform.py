import pytest

from arcwords import (
    Arc,
    Transformation,
    compose,
    constant,
    evaluate,
    hi_bound,
    identity,
    kernel_partition,
    orbit_stats,
    parse_transformation,
    parse_word,
    word_to_text,
)
from oracles import naive_orbit_counts


def test_transformation_basics():
    t = Transformation((2, 1, 4, 4))
    assert t.n == 4
    assert t(1) == 2 and t(3) == 4
    assert t.rank() == 3
    assert t.fix_count() == 1
    assert t.image() == frozenset({1, 2, 4})
    assert not t.is_permutation()
    assert t.is_singular()
    assert str(t) == "2 1 4 4"


def test_transformation_validation():
    with pytest.raises(ValueError):
        Transformation(())
    with pytest.raises(ValueError):
        Transformation((1, 5, 2))
    with pytest.raises(ValueError):
        Transformation((0, 1))
    with pytest.raises(ValueError):
        Transformation((2, 1))(3)


def test_compose_left_to_right():
    # x(ab) = (xa)b: apply a first, then b
    a = Transformation((2, 2, 3))
    b = Transformation((3, 1, 1))
    assert (a * b).images == (1, 1, 1)
    assert compose(b, a).images == (3, 2, 2)
    e = identity(3)
    assert (e * a).images == a.images
    assert (a * e).images == a.images


def test_idempotents():
    assert Transformation((1, 1, 3)).is_idempotent()
    assert not Transformation((2, 3, 1)).is_idempotent()
    assert not Transformation((2, 3, 3)).is_idempotent()
    assert identity(4).is_idempotent()
    assert constant(5, 2).images == (2, 2, 2, 2, 2)


def test_arc_semantics():
    arc = Arc(2, 5)
    assert arc.as_transformation(5).images == (1, 5, 3, 4, 5)
    assert str(arc) == "(2->5)"
    with pytest.raises(ValueError):
        Arc(3, 3)
    with pytest.raises(ValueError):
        Arc(0, 1)
    with pytest.raises(ValueError):
        Arc(2, 5).as_transformation(4)


def test_evaluate_word_order():
    # (1->2) then (2->3) sends 1 all the way to 3
    word = (Arc(1, 2), Arc(2, 3))
    assert evaluate(word, 3).images == (3, 3, 3)
    assert evaluate((), 4).images == identity(4).images
    # an arc is its own one-letter word
    assert evaluate((Arc(4, 1),), 4).images == (1, 2, 3, 1)


def test_word_text_roundtrip():
    word = (Arc(1, 2), Arc(12, 3), Arc(2, 1))
    text = word_to_text(word)
    assert text == "(1->2)(12->3)(2->1)"
    assert parse_word(text) == word
    assert parse_word(" (1 -> 2)( 2->1 ) ") == (Arc(1, 2), Arc(2, 1))
    with pytest.raises(ValueError):
        parse_word("(1->2) junk")
    with pytest.raises(ValueError):
        parse_word("(1->1)")


def test_parse_transformation():
    assert parse_transformation("2 1 4 4").images == (2, 1, 4, 4)
    assert parse_transformation("2 1", n=4).images == (2, 1, 3, 4)
    with pytest.raises(ValueError):
        parse_transformation("")
    with pytest.raises(ValueError):
        parse_transformation("1 2 x")
    with pytest.raises(ValueError):
        parse_transformation("1 2 3", n=2)
    with pytest.raises(ValueError):
        parse_transformation("7", n=3)


def test_kernel_partition():
    t = Transformation((2, 1, 4, 4, 4))
    blocks = kernel_partition(t)
    assert set(blocks) == {frozenset({1}), frozenset({2}), frozenset({3, 4, 5})}
    assert kernel_partition(identity(3)) == (
        frozenset({1}),
        frozenset({2}),
        frozenset({3}),
    )


@pytest.mark.parametrize(
    "images,fix,cycl",
    [
        ((1, 2, 3), 3, 0),        # identity: orbits are fixed points only
        ((2, 1, 3), 1, 1),        # one 2-cycle
        ((2, 3, 1), 0, 1),        # one 3-cycle
        ((2, 1, 1), 0, 0),        # 2-cycle spoiled by a tail
        ((1, 1, 2), 1, 0),        # chain into a fixed point
        ((4, 3, 2, 1, 5), 1, 2),  # two disjoint 2-cycles
    ],
)
def test_orbit_stats_examples(images, fix, cycl):
    st = orbit_stats(Transformation(images))
    assert (st.fix, st.cycl) == (fix, cycl)


def test_orbit_stats_exhaustive_against_oracle():
    from itertools import product

    for n in (1, 2, 3, 4):
        for images in product(range(1, n + 1), repeat=n):
            st = orbit_stats(Transformation(images))
            assert (st.fix, st.cycl) == naive_orbit_counts(images)
            assert sum(len(o) for o in st.orbits) == n


def test_hi_bound_values():
    assert hi_bound(Transformation((1, 1))) == 1
    assert hi_bound(Transformation((2, 1, 1))) == 3   # the tail makes the cycle impure
    assert hi_bound(Transformation((2, 1, 3, 3))) == 4  # pure 2-cycle costs one extra arc
    assert hi_bound(Transformation((1, 1, 3))) == 1
    assert hi_bound(constant(5, 1)) == 4
    with pytest.raises(ValueError):
        hi_bound(identity(3))
    with pytest.raises(ValueError):
        hi_bound(Transformation((2, 3, 1)))
